// innerkit: run experiment configs and bundled presets.
//
//   innerkit construct --config exp.json --out results
//   innerkit preset paper-Rf-example --out results
//   innerkit batch --config batch.json --seed 7
//
// Exit status: 0 when every verdict holds, 1 when some verdict fails,
// 2 on configuration or numerical errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "innerkit/error.hpp"
#include "innerkit/experiments.hpp"

namespace {

struct Shared {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void add_shared(CLI::App* sub, Shared& s, bool config_required) {
  auto* c = sub->add_option("--config", s.config, "Experiment config (JSON)");
  if (config_required) c->required()->check(CLI::ExistingFile);
  sub->add_option("--out", s.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", s.seed, "Override the config seed");
  sub->add_flag("--quiet", s.quiet, "Print nothing on success");
}

int execute(const Shared& s, std::optional<innerkit::Task> task, const std::string& preset) {
  using namespace innerkit;
  json doc;
  std::string base = ".";
  if (!s.config.empty()) {
    doc = read_json_file(s.config);
    base = std::filesystem::path(s.config).parent_path().string();
    if (base.empty()) base = ".";
  } else {
    doc = json::object();
  }
  if (!preset.empty()) {
    if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    doc["preset"] = preset;
  }
  const ExperimentConfig cfg = parse_config(doc, task, s.seed, base);
  RunOptions opts;
  opts.out_dir = s.out;
  opts.seed = s.seed;
  opts.quiet = s.quiet;
  const RunOutcome out = run(cfg, opts);
  if (!s.quiet || !out.ok) {
    const json& v = out.report["verdict"];
    std::cout << cfg.name << ": verdict " << (v.is_null() ? "n/a" : v.get<bool>() ? "pass" : "FAIL") << "\n";
    for (const auto& f : out.files) std::cout << "  wrote " << f << "\n";
  }
  return out.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shapiro-Shields inner functions in weighted Hardy spaces"};
  app.require_subcommand(1);

  Shared shared;
  std::optional<innerkit::Task> task;
  std::string preset_name;
  bool list_presets = false;

  const std::pair<const char*, const char*> simple[] = {
      {"construct", "Build S_Z and write its kernel combination and Taylor data"},
      {"verify", "Innerness report <z^k B, B> for k = 1..K"},
      {"zeros", "Prescribed and extraneous zeros of S_Z"},
      {"subspace", "Decide [p] == [q]"},
      {"extremal", "Random sampling against the extremal value"},
      {"oracle", "Finite-dimensional projection of k_0^(d) onto [p]"},
      {"reproducible", "Reproducible multiset R(p) in several spaces"},
      {"compare", "Construction against a closed form"},
      {"scan", "Search two-point multisets for extraneous zeros"},
      {"batch", "Run a list of experiments"},
  };
  for (const auto& [name, help] : simple) {
    auto* sub = app.add_subcommand(name, help);
    add_shared(sub, shared, true);
    const innerkit::Task t = innerkit::task_from_string(name);
    sub->callback([&task, t] { task = t; });
  }
  auto* preset = app.add_subcommand("preset", "Run a bundled example");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list_presets, "List preset names");
  add_shared(preset, shared, false);
  preset->callback([&task] { task = innerkit::Task::preset; });

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto& n : innerkit::preset_names()) std::cout << n << "\n";
    return 0;
  }
  try {
    if (task == innerkit::Task::preset && preset_name.empty() && shared.config.empty()) {
      std::cerr << "preset: give a preset name or --config\n";
      return 2;
    }
    return execute(shared, task, preset_name);
  } catch (const innerkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
