#include "innerkit/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "innerkit/error.hpp"

namespace innerkit {

// ---------------------------------------------------------------------------
// ConfigNode

void ConfigNode::fail(const std::string& message) const {
  throw Error(ErrorKind::Config, "at " + (path_.empty() ? std::string("/") : path_) + ": " + message);
}

bool ConfigNode::has(const std::string& key) const {
  return j_->is_object() && j_->contains(key) && !(*j_)[key].is_null();
}

ConfigNode ConfigNode::at(const std::string& key) const {
  if (!j_->is_object()) fail("expected an object");
  if (!j_->contains(key)) fail("missing field '" + key + "'");
  return ConfigNode((*j_)[key], path_ + "/" + key);
}

ConfigNode ConfigNode::at(std::size_t index) const {
  if (!j_->is_array()) fail("expected an array");
  if (index >= j_->size()) fail("index " + std::to_string(index) + " out of range");
  return ConfigNode((*j_)[index], path_ + "/" + std::to_string(index));
}

std::size_t ConfigNode::size() const {
  if (!j_->is_array()) fail("expected an array");
  return j_->size();
}

double ConfigNode::number() const {
  if (!j_->is_number()) fail("expected a number");
  return j_->get<double>();
}

double ConfigNode::positive() const {
  const double x = number();
  if (!(x > 0.0)) fail("expected a positive number");
  return x;
}

long long ConfigNode::integer() const {
  if (j_->is_number_integer()) return j_->get<long long>();
  if (j_->is_number_float()) {
    const double x = j_->get<double>();
    if (std::floor(x) == x && std::abs(x) < 9e15) return static_cast<long long>(x);
  }
  fail("expected an integer");
}

std::size_t ConfigNode::count() const {
  const long long v = integer();
  if (v < 0) fail("expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

bool ConfigNode::boolean() const {
  if (!j_->is_boolean()) fail("expected true or false");
  return j_->get<bool>();
}

std::string ConfigNode::string() const {
  if (!j_->is_string()) fail("expected a string");
  return j_->get<std::string>();
}

cplx ConfigNode::complex() const {
  if (j_->is_number()) return {j_->get<double>(), 0.0};
  if (!j_->is_array() || j_->size() != 2 || !(*j_)[0].is_number() || !(*j_)[1].is_number()) {
    fail("expected a complex number [re, im] or a real number");
  }
  return {(*j_)[0].get<double>(), (*j_)[1].get<double>()};
}

double ConfigNode::number_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).number() : fallback;
}

double ConfigNode::positive_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).positive() : fallback;
}

std::size_t ConfigNode::count_or(const std::string& key, std::size_t fallback) const {
  return has(key) ? at(key).count() : fallback;
}

std::string ConfigNode::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? at(key).string() : fallback;
}

// ---------------------------------------------------------------------------
// Reading

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    // Keep only the parser's description after its own position prefix.
    std::string detail = e.what();
    if (const auto colon = detail.find(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
    os << source << ": parse error at line " << line << ", column " << column << ": " << detail;
    throw Error(ErrorKind::Config, os.str());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace {

int order_from_json(const ConfigNode& n) {
  if (n.value().is_string()) {
    const std::string s = n.string();
    if (s == "infinite") return -1;
    if (s == "none") return -2;
    n.fail("expected \"infinite\", \"none\" or a nonnegative integer");
  }
  return static_cast<int>(n.count());
}

std::vector<Root> roots_from_json(const ConfigNode& n) {
  std::vector<Root> roots;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const ConfigNode r = n.at(i);
    if (r.value().is_object()) {
      const std::size_t mult = r.count_or("mult", 1);
      if (mult == 0) r.at("mult").fail("multiplicity must be positive");
      roots.push_back({r.at("point").complex(), static_cast<int>(mult)});
    } else {
      roots.push_back({r.complex(), 1});
    }
  }
  return roots;
}

}  // namespace

SpaceSpec space_from_json(const ConfigNode& n) {
  const std::string type = n.at("type").string();
  try {
    if (type == "dirichlet") return SpaceSpec::dirichlet(n.at("alpha").number());
    if (type == "hardy") return SpaceSpec::hardy();
    if (type == "bergman") return SpaceSpec::bergman();
    if (type == "weights") {
      const ConfigNode v = n.at("values");
      std::vector<double> w;
      for (std::size_t i = 0; i < v.size(); ++i) w.push_back(v.at(i).positive());
      if (w.empty()) v.fail("weight table is empty");
      return SpaceSpec::weighted(std::move(w));
    }
    if (type == "local_dirichlet") return SpaceSpec::local_dirichlet(n.at("zeta").complex());
    if (type == "custom") {
      const ConfigNode g = n.at("gram");
      std::vector<std::vector<cplx>> table;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const ConfigNode row = g.at(i);
        std::vector<cplx> r;
        for (std::size_t k = 0; k < row.size(); ++k) r.push_back(row.at(k).complex());
        table.push_back(std::move(r));
      }
      std::vector<ReproducibilityEntry> repro;
      if (n.has("reproducibility")) {
        const ConfigNode rr = n.at("reproducibility");
        for (std::size_t i = 0; i < rr.size(); ++i) {
          repro.push_back({rr.at(i).at("point").complex(), order_from_json(rr.at(i).at("order"))});
        }
      }
      return SpaceSpec::custom_table(std::move(table), std::move(repro));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config && std::string(e.what()).find(" at /") != std::string::npos) throw;
    n.fail(e.what());
  }
  n.at("type").fail("unknown space type '" + type +
                    "' (expected dirichlet, hardy, bergman, weights, local_dirichlet or custom)");
}

FactoredPoly poly_from_json(const ConfigNode& n) {
  const cplx leading = n.has("leading") ? n.at("leading").complex() : cplx(1.0, 0.0);
  if (leading == cplx(0.0, 0.0)) n.at("leading").fail("leading coefficient must be nonzero");
  return FactoredPoly(leading, n.has("roots") ? roots_from_json(n.at("roots")) : std::vector<Root>{});
}

ReproducibleMultiset multiset_from_json(const ConfigNode& n) {
  const int m0 = static_cast<int>(n.count_or("origin", 0));
  std::vector<Root> pts = n.has("points") ? roots_from_json(n.at("points")) : std::vector<Root>{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i].point) <= kPointTolerance) {
      n.at("points").at(i).fail("the origin is given by the 'origin' multiplicity, not as a point");
    }
  }
  return ReproducibleMultiset(m0, std::move(pts));
}

TruncationPolicy policy_from_json(const ConfigNode& n) {
  TruncationPolicy p;
  p.target_tolerance = n.positive_or("target_tolerance", p.target_tolerance);
  p.max_terms = n.count_or("max_terms", p.max_terms);
  const std::string kind = n.string_or("bound_kind", "p_series");
  if (kind == "geometric") {
    p.bound_kind = BoundKind::geometric;
  } else if (kind == "p_series") {
    p.bound_kind = BoundKind::p_series;
  } else if (kind == "none") {
    p.bound_kind = BoundKind::none;
  } else {
    n.at("bound_kind").fail("expected geometric, p_series or none");
  }
  try {
    p.validate();
  } catch (const Error& e) {
    n.fail(e.what());
  }
  return p;
}

TaylorSeries taylor_from_json(const ConfigNode& n) {
  TaylorSeries t;
  const ConfigNode c = n.at("coeffs");
  for (std::size_t i = 0; i < c.size(); ++i) t.coeffs.push_back(c.at(i).complex());
  if (n.has("tail_bound")) {
    t.tail_bound = n.at("tail_bound").number();
  } else if (n.value().is_object() && n.value().contains("tail_bound")) {
    t.tail_bound = std::numeric_limits<double>::infinity();
  }
  return t;
}

// ---------------------------------------------------------------------------
// Writing

json json_of_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json json_of(cplx z) { return json::array({json_of_real(z.real()), json_of_real(z.imag())}); }

json json_of(const SpaceSpec& s) {
  const auto& v = s.variant();
  if (const auto* d = std::get_if<DirichletType>(&v)) return {{"type", "dirichlet"}, {"alpha", d->alpha}};
  if (const auto* w = std::get_if<WeightedHardy>(&v)) return {{"type", "weights"}, {"values", w->weights}};
  if (const auto* l = std::get_if<LocalDirichlet>(&v)) return {{"type", "local_dirichlet"}, {"zeta", json_of(l->zeta)}};
  const auto& c = std::get<CustomGram>(v);
  json out{{"type", "custom"}};
  if (c.table.empty()) {
    out["gram"] = "rule";
  } else {
    json rows = json::array();
    for (const auto& row : c.table) {
      json r = json::array();
      for (const cplx& x : row) r.push_back(json_of(x));
      rows.push_back(r);
    }
    out["gram"] = rows;
  }
  json repro = json::array();
  for (const auto& e : c.reproducibility) {
    json order = e.order == -1 ? json("infinite") : e.order == -2 ? json("none") : json(e.order);
    repro.push_back({{"point", json_of(e.point)}, {"order", order}});
  }
  out["reproducibility"] = repro;
  return out;
}

namespace {

json roots_json(const std::vector<Root>& roots) {
  json a = json::array();
  for (const Root& r : roots) a.push_back({{"point", json_of(r.point)}, {"mult", r.mult}});
  return a;
}

}  // namespace

json json_of(const FactoredPoly& p) { return {{"leading", json_of(p.leading())}, {"roots", roots_json(p.roots())}}; }

json json_of(const ReproducibleMultiset& Z) {
  return {{"origin", Z.origin_multiplicity()}, {"points", roots_json(Z.entries())}};
}

json json_of(const ReproducibleOrder& o) { return o.describe(); }

json json_of(const TruncationPolicy& p) {
  const char* kind = p.bound_kind == BoundKind::geometric ? "geometric"
                     : p.bound_kind == BoundKind::p_series ? "p_series"
                                                           : "none";
  return {{"target_tolerance", p.target_tolerance}, {"max_terms", p.max_terms}, {"bound_kind", kind}};
}

json json_of(const TaylorSeries& t, std::size_t max_coeffs) {
  json c = json::array();
  const std::size_t n = std::min(t.coeffs.size(), max_coeffs);
  for (std::size_t k = 0; k < n; ++k) c.push_back(json_of(t.coeffs[k]));
  json out{{"N", t.N()}, {"tail_bound", json_of_real(t.tail_bound)}, {"coeffs", c}};
  if (n < t.coeffs.size()) out["coeffs_listed"] = n;
  return out;
}

json json_of(const KernelCombo& c) {
  json terms = json::array();
  for (const WeightedTerm& t : c.terms()) {
    terms.push_back({{"point", json_of(t.kernel.point)}, {"order", t.kernel.order}, {"coef", json_of(t.coef)}});
  }
  return {{"terms", terms}};
}

json json_of(const ConstructionResult& r, std::size_t max_coeffs) {
  return {{"route", to_string(r.route)},
          {"normalization", json_of(r.normalization)},
          {"pairing_err", json_of_real(r.pairing_err)},
          {"pivot_ratio", json_of_real(r.pivot_ratio)},
          {"combo", r.combo ? json_of(*r.combo) : json(nullptr)},
          {"taylor", json_of(r.taylor, max_coeffs)}};
}

json json_of(const RationalRep& r) {
  return {{"numerator", json_of(r.numerator)}, {"denominator", json_of(r.denominator)}};
}

json json_of(const InnerReport& r) {
  json res = json::array();
  for (const auto& s : r.residuals) {
    res.push_back({{"k", s.k}, {"modulus", json_of_real(s.modulus)}, {"err", json_of_real(s.err)}});
  }
  return {{"norm_sq", json_of_real(r.norm_sq)},
          {"norm_sq_err", json_of_real(r.norm_sq_err)},
          {"K", r.K},
          {"tol", r.tol},
          {"residuals", res},
          {"max_relative_residual", json_of_real(r.max_relative_residual)},
          {"verdict", r.verdict}};
}

json json_of(const ZeroReport& r) {
  json pres = json::array();
  for (const auto& p : r.prescribed) {
    json res = json::array(), errs = json::array();
    for (double x : p.residuals) res.push_back(json_of_real(x));
    for (double x : p.errors) errs.push_back(json_of_real(x));
    pres.push_back({{"point", json_of(p.point)},
                    {"mult", p.mult},
                    {"residuals", res},
                    {"errors", errs},
                    {"first_nonvanishing", json_of_real(p.first_nonvanishing)},
                    {"ok", p.ok}});
  }
  json ext = json::array();
  for (const auto& e : r.extraneous) {
    ext.push_back({{"location", json_of(e.location)},
                   {"residual", json_of_real(e.residual)},
                   {"multiplicity", e.multiplicity}});
  }
  return {{"norm", json_of_real(r.norm)},
          {"prescribed", pres},
          {"extraneous", ext},
          {"origin_coefficient", json_of_real(r.origin_coefficient)},
          {"origin_exact", r.origin_exact},
          {"scan_degree", r.scan_degree},
          {"scan_tail", json_of_real(r.scan_tail)},
          {"zeros_in_disk", r.zeros_in_disk},
          {"radius", r.radius},
          {"tol", r.tol},
          {"verdict", r.verdict}};
}

json json_of(const ComparisonReport& r) {
  return {{"is_scalar_multiple", r.is_scalar_multiple},
          {"lambda", json_of(r.lambda)},
          {"max_coeff_deviation", json_of_real(r.max_coeff_deviation)},
          {"compared_degree", r.compared_degree},
          {"tol", r.tol}};
}

json json_of(const SubspaceResult& r) {
  json probes = json::array();
  for (const auto& p : r.evidence.probes) probes.push_back({{"probe", p.probe}, {"deviation", json_of_real(p.deviation)}});
  return {{"equal", r.equal},
          {"R_p", json_of(r.evidence.Rp)},
          {"R_q", json_of(r.evidence.Rq)},
          {"M", r.evidence.M},
          {"probes", probes},
          {"max_deviation", json_of_real(r.evidence.max_deviation)},
          {"corroborated", r.evidence.corroborated}};
}

json json_of(const ExtremalReport& r) {
  return {{"d", r.d},
          {"samples", r.samples},
          {"seed", r.seed},
          {"M", r.M},
          {"generator", "mt19937_64, 53-bit uniforms, Box-Muller"},
          {"construction_value", json_of_real(r.construction_value)},
          {"span_optimum", json_of_real(r.span_optimum)},
          {"max_sample", json_of_real(r.max_sample)},
          {"margin", r.margin},
          {"verdict", r.verdict}};
}

json json_of(const ScanReport& r) {
  json found = json::array();
  for (const auto& f : r.found) {
    json ext = json::array();
    for (const auto& e : f.extraneous) {
      ext.push_back({{"location", json_of(e.location)},
                     {"residual", json_of_real(e.residual)},
                     {"multiplicity", e.multiplicity}});
    }
    found.push_back({{"a", json_of(f.a)},
                     {"b", json_of(f.b)},
                     {"extraneous", ext},
                     {"comparison", f.comparison ? json_of(*f.comparison) : json(nullptr)}});
  }
  return {{"moduli", r.moduli},
          {"angles", r.angles},
          {"radius", r.radius},
          {"tol", r.tol},
          {"instances", r.instances},
          {"skipped", r.skipped},
          {"found", found},
          {"statement", r.statement},
          {"verdict", r.verdict}};
}

}  // namespace innerkit
