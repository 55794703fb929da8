#include "innerkit/experiments.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "innerkit/error.hpp"
#include "innerkit/poly.hpp"
#include "innerkit/verification.hpp"

namespace innerkit {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDefaultReportCoeffs = 64;

struct TaskName {
  Task task;
  const char* name;
};

constexpr TaskName kTaskNames[] = {
    {Task::construct, "construct"}, {Task::verify, "verify"},     {Task::zeros, "zeros"},
    {Task::subspace, "subspace"},   {Task::extremal, "extremal"}, {Task::oracle, "oracle"},
    {Task::reproducible, "reproducible"}, {Task::compare, "compare"}, {Task::scan, "scan"},
    {Task::preset, "preset"},       {Task::batch, "batch"},
};

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                      c == '_' || c == '.';
    out.push_back(keep ? c : '_');
  }
  return out.empty() ? "experiment" : out;
}

void require(const ConfigNode& root, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (!root.has(k)) root.fail(std::string("task '") + root.value().value("task", "?") + "' needs field '" + k + "'");
  }
}

void require_one_of(const ConfigNode& root, const char* a, const char* b) {
  if (!root.has(a) && !root.has(b)) root.fail(std::string("needs field '") + a + "' or '" + b + "'");
}

// Context shared by the task runners.
struct Job {
  const ExperimentConfig& config;
  const RunOptions& options;
  ConfigNode root;
  std::vector<std::string> files;

  std::size_t report_coeffs() const { return root.count_or("report_coeffs", kDefaultReportCoeffs); }
  SpaceSpec space() const { return space_from_json(root.at("space")); }
  TruncationPolicy policy() const { return root.has("policy") ? policy_from_json(root.at("policy")) : TruncationPolicy{}; }

  ReproducibleMultiset multiset(const SpaceSpec& s) const {
    if (root.has("multiset")) return multiset_from_json(root.at("multiset"));
    return reproducible_multiset(s, poly_from_json(root.at("polynomial")));
  }

  std::string out_path(const std::string& file) const { return (fs::path(options.out_dir) / file).string(); }
};

ConstructionResult construct_for(const Job& job, const SpaceSpec& space, const ReproducibleMultiset& Z) {
  const Route route = route_from_string(job.root.string_or("route", "auto"));
  if (route == Route::oracle) {
    const FactoredPoly p = job.root.has("polynomial") ? poly_from_json(job.root.at("polynomial")) : Z.polynomial();
    const std::size_t M = job.root.count_or("M", 400);
    ConstructionResult r{std::nullopt, project_kernel_fd(space, p, Z.origin_multiplicity(), M), 1.0, Route::oracle,
                         0.0, 1.0};
    return r;
  }
  if (route == Route::closed_form || route == Route::residue) {
    job.root.at("route").fail("closed forms are built by the 'construct' and 'compare' tasks");
  }
  return shapiro_shields(space, Z, route, job.policy(), job.root.count_or("taylor_degree", kAutoDegree));
}

std::vector<Root> with_origin(const ReproducibleMultiset& Z) {
  std::vector<Root> roots;
  if (Z.origin_multiplicity() > 0) roots.push_back({0.0, Z.origin_multiplicity()});
  for (const Root& r : Z.entries()) roots.push_back(r);
  return roots;
}

RationalResult closed_form(const Job& job, const ReproducibleMultiset& Z, const std::string& kind,
                           std::size_t N) {
  if (kind == "classical") return classical_blaschke(with_origin(Z), N);
  if (kind == "residue") {
    std::vector<cplx> pts;
    if (Z.origin_multiplicity() > 0) job.root.fail("the residue construction needs points away from the origin");
    for (const Root& r : Z.entries()) {
      if (r.mult != 1) job.root.fail("the residue construction needs simple points");
      pts.push_back(r.point);
    }
    return bergman_rational(pts, N);
  }
  job.root.fail("unknown closed form '" + kind + "' (expected classical or residue)");
}

// Optional {"samples": n, "file": "x.csv", "max_deviation": t}; returns the
// verdict contribution (true when no bound was requested).
bool maybe_profile(Job& job, json& result, const RationalRep* rational, const TaylorSeries& taylor) {
  if (!job.root.has("profile")) return true;
  const ConfigNode pn = job.root.at("profile");
  const std::size_t samples = pn.count_or("samples", 512);
  if (samples == 0) pn.at("samples").fail("expected a positive sample count");
  const CircleProfile prof = rational ? circle_profile(*rational, samples) : circle_profile(taylor, samples);
  const std::string file = pn.string_or("file", sanitize(job.config.name) + "_profile.csv");
  const std::string path = job.out_path(file);
  write_file_atomic(path, profile_csv(prof));
  job.files.push_back(path);
  const double dev = prof.max_deviation_from_one();
  json pj{{"file", file}, {"samples", samples}, {"source", rational ? "rational" : "taylor"},
          {"max_deviation_from_one", dev}};
  bool ok = true;
  if (pn.has("max_deviation")) {
    ok = dev <= pn.at("max_deviation").positive();
    pj["within_bound"] = ok;
  }
  result["profile"] = pj;
  return ok;
}

using Verdict = std::optional<bool>;

Verdict run_construct(Job& job, json& result) {
  const SpaceSpec space = job.space();
  const ReproducibleMultiset Z = job.multiset(space);
  result["multiset"] = json_of(Z);
  const std::string route = job.root.string_or("route", "auto");
  if (route == "closed_form" || route == "residue") {
    const RationalResult r =
        closed_form(job, Z, route == "closed_form" ? "classical" : "residue", job.root.count_or("taylor_degree", 400));
    result["rational"] = json_of(r.rational);
    result["normalization"] = json_of(r.normalization);
    result["taylor"] = json_of(r.taylor, job.report_coeffs());
    if (!maybe_profile(job, result, &r.rational, r.taylor)) return false;
    return std::nullopt;
  }
  const ConstructionResult c = construct_for(job, space, Z);
  result["construction"] = json_of(c, job.report_coeffs());
  if (!maybe_profile(job, result, nullptr, c.taylor)) return false;
  return std::nullopt;
}

Verdict run_verify(Job& job, json& result) {
  const SpaceSpec space = job.space();
  TaylorSeries B;
  if (job.root.has("taylor")) {
    B = taylor_from_json(job.root.at("taylor"));
  } else {
    const ReproducibleMultiset Z = job.multiset(space);
    result["multiset"] = json_of(Z);
    const ConstructionResult c = construct_for(job, space, Z);
    result["construction"] = json_of(c, job.report_coeffs());
    B = c.taylor;
  }
  const InnerReport r = inner_report(space, B, job.root.count_or("K", 20), job.root.positive_or("tol", 1e-8));
  result["inner"] = json_of(r);
  return r.verdict;
}

Verdict run_zeros(Job& job, json& result) {
  const SpaceSpec space = job.space();
  const ReproducibleMultiset Z = job.multiset(space);
  result["multiset"] = json_of(Z);
  const ConstructionResult c = construct_for(job, space, Z);
  result["construction"] = json_of(c, job.report_coeffs());
  const ZeroReport r =
      zero_report(space, c, Z, job.root.number_or("radius", 0.99), job.root.positive_or("tol", 1e-8));
  result["zeros"] = json_of(r);
  return r.verdict;
}

Verdict run_subspace(Job& job, json& result) {
  const SubspaceResult r = subspace_equal(job.space(), poly_from_json(job.root.at("p")),
                                          poly_from_json(job.root.at("q")), job.root.count_or("M", 400));
  result["subspace"] = json_of(r);
  if (!job.root.has("expect")) return std::nullopt;
  const bool expect = job.root.at("expect").boolean();
  result["expect"] = expect;
  return r.equal == expect;
}

Verdict run_extremal(Job& job, json& result) {
  const SpaceSpec space = job.space();
  const FactoredPoly p = poly_from_json(job.root.at("polynomial"));
  const ReproducibleMultiset Z = reproducible_multiset(space, p);
  result["multiset"] = json_of(Z);
  const ConstructionResult c = construct_for(job, space, Z);
  const ExtremalReport r = extremal_check(space, p, c, job.root.count_or("samples", 10000), job.config.seed,
                                          job.root.count_or("M", 64));
  result["extremal"] = json_of(r);
  return r.verdict;
}

Verdict run_oracle(Job& job, json& result) {
  const SpaceSpec space = job.space();
  const FactoredPoly p = poly_from_json(job.root.at("polynomial"));
  const ReproducibleMultiset Z = reproducible_multiset(space, p);
  const int d = job.root.has("d") ? static_cast<int>(job.root.at("d").count()) : Z.origin_multiplicity();
  const std::size_t M = job.root.count_or("M", 400);
  const TaylorSeries t = project_kernel_fd(space, p, d, M);
  result["multiset"] = json_of(Z);
  result["d"] = d;
  result["M"] = M;
  result["projection"] = json_of(t, job.report_coeffs());
  if (!space.is_diagonal() || d != Z.origin_multiplicity()) return std::nullopt;
  const ConstructionResult c = shapiro_shields(space, Z, Route::automatic, job.policy());
  const std::size_t degree = job.root.count_or("compare_degree", 40);
  double scale = 0.0, diff = 0.0;
  for (std::size_t k = 0; k <= degree; ++k) {
    scale = std::max(scale, std::abs(c.taylor.coefficient(k)));
    diff = std::max(diff, std::abs(c.taylor.coefficient(k) - t.coefficient(k)));
  }
  const double tol = job.root.positive_or("tol", 1e-8);
  result["agreement"] = {{"compare_degree", degree}, {"relative_deviation", json_of_real(diff / scale)}, {"tol", tol}};
  return diff <= tol * scale;
}

Verdict run_reproducible(Job& job, json& result) {
  const FactoredPoly f = poly_from_json(job.root.at("polynomial"));
  const ConfigNode spaces = job.root.at("spaces");
  std::optional<ReproducibleMultiset> expected;
  if (job.root.has("expected")) expected = multiset_from_json(job.root.at("expected"));
  json rows = json::array();
  bool all = true;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const SpaceSpec s = space_from_json(spaces.at(i));
    const ReproducibleMultiset R = reproducible_multiset(s, f);
    json orders = json::array();
    for (const Root& r : f.roots()) {
      orders.push_back({{"point", json_of(r.point)}, {"mult", r.mult}, {"order", json_of(reproducible_order(s, r.point))}});
    }
    json flat = json::array();
    for (const cplx& z : R.flatten()) flat.push_back(json_of(z));
    json row{{"space", json_of(s)}, {"R", json_of(R)}, {"R_flat", flat}, {"orders", orders}};
    if (expected) {
      const bool match = R.equals(*expected);
      row["matches_expected"] = match;
      all = all && match;
    }
    rows.push_back(row);
  }
  result["rows"] = rows;
  if (expected) result["expected"] = json_of(*expected);
  if (!expected) return std::nullopt;
  return all;
}

Verdict run_compare(Job& job, json& result) {
  const SpaceSpec space = job.space();
  const ReproducibleMultiset Z = job.multiset(space);
  const std::string kind = job.root.string_or("reference", "classical");
  const double tol = job.root.positive_or("tol", 1e-8);
  const ConstructionResult c = construct_for(job, space, Z);
  const RationalResult ref = closed_form(job, Z, kind, std::max<std::size_t>(c.taylor.N(), 64));
  const ComparisonReport cmp = scalar_multiple_check(c.taylor, ref.taylor, tol);
  result["multiset"] = json_of(Z);
  result["construction"] = json_of(c, job.report_coeffs());
  result["reference"] = {{"kind", kind},
                         {"rational", json_of(ref.rational)},
                         {"normalization", json_of(ref.normalization)},
                         {"taylor", json_of(ref.taylor, job.report_coeffs())}};
  result["comparison"] = json_of(cmp);
  bool ok = cmp.is_scalar_multiple;
  if (kind == "residue") {
    const double rtol = job.root.positive_or("residue_tol", 1e-10);
    json res = json::array();
    double worst = 0.0;
    for (const Root& pole : ref.rational.denominator.roots()) {
      const cplx v = residue_at(ref.rational, pole.point);
      worst = std::max(worst, std::abs(v));
      res.push_back({{"pole", json_of(pole.point)}, {"residue", json_of(v)}});
    }
    result["residues"] = {{"values", res}, {"max_modulus", worst}, {"tol", rtol}};
    ok = ok && worst <= rtol;
  }
  ok = maybe_profile(job, result, &ref.rational, ref.taylor) && ok;
  return ok;
}

Verdict run_scan(Job& job, json& result) {
  std::vector<double> moduli;
  const ConfigNode m = job.root.at("moduli");
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double r = m.at(i).positive();
    if (!(r < 1.0)) m.at(i).fail("moduli must lie in (0, 1)");
    moduli.push_back(r);
  }
  const ScanReport r = extraneous_scan(job.space(), moduli, job.root.count_or("angles", 8),
                                       job.root.number_or("radius", 0.99), job.root.positive_or("tol", 1e-8),
                                       job.root.positive_or("comparison_tol", 1e-7));
  result["scan"] = json_of(r);
  return r.verdict;
}

json load_entry(const ConfigNode& n, const std::string& base_dir, std::string& entry_base) {
  entry_base = base_dir;
  if (!n.value().is_string()) return n.value();
  const fs::path p = fs::path(base_dir) / n.string();
  if (!fs::exists(p)) n.fail("referenced config '" + p.string() + "' does not exist");
  entry_base = p.parent_path().string();
  return read_json_file(p.string());
}

RunOutcome run_impl(const ExperimentConfig& config, const RunOptions& options, bool write_report);

json error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return {{"kind", err ? to_string(err->kind()) : "Internal"}, {"message", e.what()}};
}

// Runs nested experiments; presets collect them into one report, batches
// write each one and a summary.
Verdict run_group(Job& job, json& result, const json& group_doc, bool write_each) {
  const ConfigNode group(group_doc, job.root.path());
  const ConfigNode list = group.at("experiments");
  json entries = json::array();
  bool all = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string base;
    json doc;
    json entry;
    try {
      doc = load_entry(list.at(i), job.config.base_dir, base);
      if (job.options.seed && doc.is_object() && !doc.contains("seed")) doc["seed"] = *job.options.seed;
      const ExperimentConfig sub = parse_config(doc, std::nullopt, std::nullopt, base);
      RunOutcome o = run_impl(sub, job.options, write_each);
      job.files.insert(job.files.end(), o.files.begin(), o.files.end());
      all = all && o.ok;
      if (write_each) {
        entry = {{"name", sub.name}, {"ok", o.ok}, {"file", sanitize(sub.name) + ".json"}};
      } else {
        entry = o.report;
      }
    } catch (const std::exception& e) {
      all = false;
      entry = {{"index", i}, {"ok", false}, {"error", error_json(e)}};
    }
    entries.push_back(entry);
  }
  result[write_each ? "experiments" : "blocks"] = entries;
  return all;
}

RunOutcome run_impl(const ExperimentConfig& config, const RunOptions& options, bool write_report) {
  Job job{config, options, ConfigNode(config.raw, ""), {}};
  json result = json::object();
  Verdict verdict;
  switch (config.task) {
    case Task::construct: verdict = run_construct(job, result); break;
    case Task::verify: verdict = run_verify(job, result); break;
    case Task::zeros: verdict = run_zeros(job, result); break;
    case Task::subspace: verdict = run_subspace(job, result); break;
    case Task::extremal: verdict = run_extremal(job, result); break;
    case Task::oracle: verdict = run_oracle(job, result); break;
    case Task::reproducible: verdict = run_reproducible(job, result); break;
    case Task::compare: verdict = run_compare(job, result); break;
    case Task::scan: verdict = run_scan(job, result); break;
    case Task::preset: {
      const std::string name = job.root.at("preset").string();
      verdict = run_group(job, result, preset_config(name), false);
      break;
    }
    case Task::batch: verdict = run_group(job, result, config.raw, true); break;
  }
  RunOutcome out;
  out.ok = verdict.value_or(true);
  out.report = {{"name", config.name},
                {"task", to_string(config.task)},
                {"config", config.raw},
                {"result", result},
                {"verdict", verdict ? json(*verdict) : json(nullptr)}};
  out.files = std::move(job.files);
  if (write_report) {
    const std::string path = job.out_path(sanitize(config.name) + ".json");
    write_file_atomic(path, out.report.dump(2) + "\n");
    out.files.push_back(path);
  }
  return out;
}

}  // namespace

const char* to_string(Task t) {
  for (const auto& tn : kTaskNames) {
    if (tn.task == t) return tn.name;
  }
  return "?";
}

Task task_from_string(const std::string& s) {
  for (const auto& tn : kTaskNames) {
    if (s == tn.name) return tn.task;
  }
  throw Error(ErrorKind::Config, "unknown task '" + s + "'");
}

ExperimentConfig parse_config(const json& doc, std::optional<Task> task, std::optional<std::uint64_t> seed,
                              const std::string& base_dir) {
  const ConfigNode root(doc, "");
  if (!doc.is_object()) root.fail("config must be a JSON object");
  ExperimentConfig c;
  c.raw = doc;
  c.base_dir = base_dir;
  if (root.has("task")) {
    try {
      c.task = task_from_string(root.at("task").string());
    } catch (const Error&) {
      root.at("task").fail("unknown task '" + root.at("task").string() + "'");
    }
    if (task && *task != c.task) {
      root.at("task").fail(std::string("config task '") + to_string(c.task) + "' does not match subcommand '" +
                           to_string(*task) + "'");
    }
  } else if (task) {
    c.task = *task;
  } else {
    root.fail("missing field 'task'");
  }
  c.raw["task"] = to_string(c.task);
  if (seed) c.raw["seed"] = *seed;
  c.seed = root.has("seed") ? root.at("seed").count() : 1;
  if (seed) c.seed = *seed;
  const ConfigNode r(c.raw, "");
  c.name = r.string_or("name", r.has("preset") ? r.at("preset").string() : to_string(c.task));

  switch (c.task) {
    case Task::construct:
    case Task::verify:
    case Task::zeros:
      if (c.task != Task::verify || !r.has("taylor")) {
        require(r, {"space"});
        require_one_of(r, "multiset", "polynomial");
      } else {
        require(r, {"space"});
      }
      break;
    case Task::subspace: require(r, {"space", "p", "q"}); break;
    case Task::extremal:
    case Task::oracle: require(r, {"space", "polynomial"}); break;
    case Task::reproducible: require(r, {"polynomial", "spaces"}); break;
    case Task::compare: require(r, {"space", "multiset"}); break;
    case Task::scan: require(r, {"space", "moduli"}); break;
    case Task::preset: {
      require(r, {"preset"});
      const std::string name = r.at("preset").string();
      const auto names = preset_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        r.at("preset").fail("unknown preset '" + name + "' (available: " + list + ")");
      }
      break;
    }
    case Task::batch: {
      require(r, {"experiments"});
      const ConfigNode list = r.at("experiments");
      if (!list.value().is_array()) list.fail("expected an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const ConfigNode e = list.at(i);
        if (e.value().is_string() && !fs::exists(fs::path(base_dir) / e.string())) {
          e.fail("referenced config '" + (fs::path(base_dir) / e.string()).string() + "' does not exist");
        }
      }
      break;
    }
  }
  if (r.has("space")) space_from_json(r.at("space"));
  if (r.has("policy")) policy_from_json(r.at("policy"));
  if (r.has("multiset")) multiset_from_json(r.at("multiset"));
  if (r.has("polynomial")) poly_from_json(r.at("polynomial"));
  if (r.has("route")) {
    try {
      route_from_string(r.at("route").string());
    } catch (const Error&) {
      r.at("route").fail("unknown route '" + r.at("route").string() + "'");
    }
  }
  if (r.has("tol")) r.at("tol").positive();
  return c;
}

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
  fs::create_directories(options.out_dir);
  return run_impl(config, options, true);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

json cj(double re, double im) { return json::array({re, im}); }

json dirichlet(double alpha) { return {{"type", "dirichlet"}, {"alpha", alpha}}; }

json rf_block(const std::string& name, const json& spaces, const json& expected) {
  // f = z^2 (z - i/2) (z^2 - 1)^2
  const json f{{"leading", cj(1, 0)},
               {"roots",
                {{{"point", cj(0, 0)}, {"mult", 2}},
                 {{"point", cj(0, 0.5)}, {"mult", 1}},
                 {{"point", cj(1, 0)}, {"mult", 2}},
                 {{"point", cj(-1, 0)}, {"mult", 2}}}}};
  return {{"task", "reproducible"}, {"name", name}, {"polynomial", f}, {"spaces", spaces}, {"expected", expected}};
}

json points(std::initializer_list<std::pair<json, int>> pts) {
  json a = json::array();
  for (const auto& [p, m] : pts) a.push_back({{"point", p}, {"mult", m}});
  return a;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"paper-Rf-example", "h2-blaschke-match", "bergman-residue", "d4-boundary", "a2-extraneous-scan",
          "dirichlet-extraneous"};
}

json preset_config(const std::string& name) {
  json ex = json::array();
  if (name == "paper-Rf-example") {
    ex.push_back(rf_block("alpha<=1", {dirichlet(-1), dirichlet(0), dirichlet(1)},
                          {{"origin", 2}, {"points", points({{cj(0, 0.5), 1}})}}));
    ex.push_back(rf_block("1<alpha<=3", {dirichlet(1.5), dirichlet(2), dirichlet(3)},
                          {{"origin", 2}, {"points", points({{cj(0, 0.5), 1}, {cj(-1, 0), 1}, {cj(1, 0), 1}})}}));
    ex.push_back(rf_block("3<alpha<=5", {dirichlet(3.5), dirichlet(4), dirichlet(5)},
                          {{"origin", 2}, {"points", points({{cj(0, 0.5), 1}, {cj(-1, 0), 2}, {cj(1, 0), 2}})}}));
    ex.push_back(rf_block("local-dirichlet-at-1", {{{"type", "local_dirichlet"}, {"zeta", cj(1, 0)}}},
                          {{"origin", 2}, {"points", points({{cj(0, 0.5), 1}, {cj(1, 0), 1}})}}));
  } else if (name == "h2-blaschke-match") {
    ex.push_back({{"task", "compare"},
                  {"name", "h2-blaschke-match"},
                  {"space", {{"type", "hardy"}}},
                  {"multiset", {{"origin", 1}, {"points", points({{cj(0.5, 0), 1}, {cj(-0.3, 0.4), 2}})}}},
                  {"reference", "classical"},
                  {"tol", 1e-8},
                  {"profile", {{"samples", 512}, {"file", "h2-blaschke-match_profile.csv"}, {"max_deviation", 1e-12}}}});
    ex.push_back({{"task", "verify"},
                  {"name", "h2-half-inner"},
                  {"space", {{"type", "hardy"}}},
                  {"multiset", {{"origin", 0}, {"points", points({{cj(0.5, 0), 1}})}}},
                  {"K", 20},
                  {"tol", 1e-8}});
  } else if (name == "bergman-residue") {
    ex.push_back({{"task", "compare"},
                  {"name", "bergman-residue-half"},
                  {"space", {{"type", "bergman"}}},
                  {"multiset", {{"origin", 0}, {"points", points({{cj(0.5, 0), 1}})}}},
                  {"reference", "residue"},
                  {"tol", 1e-8},
                  {"residue_tol", 1e-10},
                  {"profile", {{"samples", 512}, {"file", "bergman-residue-half_profile.csv"}}}});
    ex.push_back({{"task", "compare"},
                  {"name", "bergman-residue-pair"},
                  {"space", {{"type", "bergman"}}},
                  {"multiset", {{"origin", 0}, {"points", points({{cj(0.5, 0), 1}, {cj(-0.5, 0), 1}})}}},
                  {"reference", "residue"},
                  {"tol", 1e-8},
                  {"residue_tol", 1e-10}});
  } else if (name == "d4-boundary") {
    ex.push_back({{"task", "verify"},
                  {"name", "d4-boundary"},
                  {"space", dirichlet(4)},
                  {"multiset", {{"origin", 0}, {"points", points({{cj(1, 0), 1}})}}},
                  {"K", 20},
                  {"tol", 1e-6}});
  } else if (name == "a2-extraneous-scan") {
    ex.push_back({{"task", "scan"},
                  {"name", "a2-extraneous-scan"},
                  {"space", {{"type", "bergman"}}},
                  {"moduli", {0.8, 0.85, 0.9, 0.95}},
                  {"angles", 8},
                  {"radius", 0.99},
                  {"tol", 1e-8},
                  {"comparison_tol", 1e-7}});
  } else if (name == "dirichlet-extraneous") {
    ex.push_back({{"task", "scan"},
                  {"name", "dirichlet-extraneous"},
                  {"space", dirichlet(-5)},
                  {"moduli", {0.8}},
                  {"angles", 8},
                  {"radius", 0.99},
                  {"tol", 1e-8},
                  {"comparison_tol", 1e-7}});
  } else {
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
  }
  return {{"experiments", ex}};
}

// ---------------------------------------------------------------------------
// Circle profiles and output

double CircleProfile::max_deviation_from_one() const {
  double d = 0.0;
  for (double m : modulus) d = std::max(d, std::abs(m - 1.0));
  return d;
}

namespace {

template <typename F>
CircleProfile sample_circle(std::size_t samples, F&& f) {
  CircleProfile p;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    p.theta.push_back(t);
    p.modulus.push_back(std::abs(f(std::polar(1.0, t))));
  }
  return p;
}

}  // namespace

CircleProfile circle_profile(const RationalRep& r, std::size_t samples) {
  return sample_circle(samples, [&](cplx z) { return r(z); });
}

CircleProfile circle_profile(const TaylorSeries& t, std::size_t samples) {
  if (!std::isfinite(t.tail_bound)) {
    throw Error(ErrorKind::UnboundedTail, "circle profile needs a rational form or a finite Taylor tail bound");
  }
  return sample_circle(samples, [&](cplx z) { return poly::eval(t.coeffs, z); });
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string profile_csv(const CircleProfile& p) {
  std::string out = "theta,modulus\n";
  for (std::size_t k = 0; k < p.theta.size(); ++k) {
    out += format_double(p.theta[k]);
    out += ',';
    out += format_double(p.modulus[k]);
    out += '\n';
  }
  return out;
}

void emit_circle_profile(const RationalRep& r, std::size_t samples, const std::string& path) {
  write_file_atomic(path, profile_csv(circle_profile(r, samples)));
}

void emit_circle_profile(const TaylorSeries& t, std::size_t samples, const std::string& path) {
  write_file_atomic(path, profile_csv(circle_profile(t, samples)));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Config, "failed writing '" + tmp + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace innerkit
