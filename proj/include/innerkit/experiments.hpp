#pragma once

// Experiment configs, dispatch, JSON reports, CSV circle profiles, and the
// bundled presets behind the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "innerkit/constructors.hpp"
#include "innerkit/serialize.hpp"

namespace innerkit {

enum class Task {
  construct,
  verify,
  zeros,
  subspace,
  extremal,
  oracle,
  reproducible,  // R(p) across several spaces
  compare,       // construction vs a closed form
  scan,          // extraneous-zero scan over two-point multisets
  preset,
  batch,
};

const char* to_string(Task t);
Task task_from_string(const std::string& s);

struct ExperimentConfig {
  json raw;  // the document as given, with the seed override applied
  std::string name;
  Task task = Task::construct;
  std::uint64_t seed = 1;
  std::string base_dir = ".";  // for relative paths inside batch configs
};

// Validates the task name and the fields it requires. When `task` is given
// (from the subcommand) it must agree with any "task" field in the document.
ExperimentConfig parse_config(const json& doc, std::optional<Task> task = std::nullopt,
                              std::optional<std::uint64_t> seed = std::nullopt,
                              const std::string& base_dir = ".");

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct RunOutcome {
  json report;
  // true when every verdict in the report holds; tasks without a verdict
  // count as passing.
  bool ok = true;
  std::vector<std::string> files;  // written paths
};

// Runs the experiment and writes <out_dir>/<name>.json (plus CSV files for
// circle profiles). Library errors propagate, except inside batches where
// each failing experiment is recorded and counted as not ok.
RunOutcome run(const ExperimentConfig& config, const RunOptions& options);

std::vector<std::string> preset_names();
json preset_config(const std::string& name);

struct CircleProfile {
  std::vector<double> theta;
  std::vector<double> modulus;

  double max_deviation_from_one() const;
};

// Samples |B(e^{i theta})| at theta = 2 pi k / samples. The Taylor form
// requires a finite tail bound.
CircleProfile circle_profile(const RationalRep& r, std::size_t samples);
CircleProfile circle_profile(const TaylorSeries& t, std::size_t samples);

// Header "theta,modulus"; 17 significant digits; '\n' line ends.
std::string profile_csv(const CircleProfile& p);
void emit_circle_profile(const RationalRep& r, std::size_t samples, const std::string& path);
void emit_circle_profile(const TaylorSeries& t, std::size_t samples, const std::string& path);

// 17 significant digits, as %.17g.
std::string format_double(double x);

// Writes to path + ".tmp" and renames over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace innerkit
