#include "innerkit/space.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "innerkit/error.hpp"

namespace innerkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Evaluation: return "EvaluationError";
    case ErrorKind::MissingReproducibility: return "MissingReproducibility";
    case ErrorKind::InadmissibleMultiset: return "InadmissibleMultiset";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::DivergentSeries: return "DivergentSeries";
    case ErrorKind::UnboundedTail: return "UnboundedTail";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DegenerateResidueSystem: return "DegenerateResidueSystem";
    case ErrorKind::TruncationDominatesResidual: return "TruncationDominatesResidual";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

namespace {

bool on_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= kCircleTolerance; }

bool same_point(cplx a, cplx b, double tol = kPointTolerance) { return std::abs(a - b) <= tol; }

}  // namespace

// ---------------------------------------------------------------------------
// SpaceSpec

SpaceSpec SpaceSpec::dirichlet(double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Config, "Dirichlet exponent must be finite");
  return SpaceSpec(DirichletType{alpha});
}

SpaceSpec SpaceSpec::weighted(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorKind::Config, "weight table is empty");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
      std::ostringstream os;
      os << "weight w_" << k << " = " << weights[k] << " is not strictly positive";
      throw Error(ErrorKind::Config, os.str());
    }
  }
  const std::size_t len = weights.size();
  // down[n] = sup_{m>=n} w_m/w_{m+1}; past the table every ratio is 1.
  std::vector<double> down(len + 1, 1.0), up(len + 1, 1.0);
  for (std::size_t n = len; n-- > 0;) {
    const double next = (n + 1 < len) ? weights[n + 1] : weights[len - 1];
    down[n] = std::max(down[n + 1], weights[n] / next);
    up[n] = std::max(up[n + 1], next / weights[n]);
  }
  SpaceSpec s(WeightedHardy{std::move(weights)});
  s.down_suffix_ = std::make_shared<const std::vector<double>>(std::move(down));
  s.up_suffix_ = std::make_shared<const std::vector<double>>(std::move(up));
  return s;
}

SpaceSpec SpaceSpec::local_dirichlet(cplx zeta) {
  const double r = std::abs(zeta);
  if (!(std::abs(r - 1.0) <= 1e-9)) {
    throw Error(ErrorKind::Config, "local Dirichlet point must be unimodular");
  }
  return SpaceSpec(LocalDirichlet{zeta / r});
}

SpaceSpec SpaceSpec::custom(std::function<cplx(std::size_t, std::size_t)> gram,
                            std::vector<ReproducibilityEntry> reproducibility,
                            std::size_t probe_size) {
  if (!gram) throw Error(ErrorKind::Config, "custom Gram rule is empty");
  Eigen::MatrixXcd g(probe_size, probe_size);
  for (std::size_t m = 0; m < probe_size; ++m) {
    for (std::size_t n = 0; n < probe_size; ++n) g(m, n) = gram(m, n);
  }
  for (std::size_t m = 0; m < probe_size; ++m) {
    for (std::size_t n = 0; n <= m; ++n) {
      const double scale = std::max({1.0, std::abs(g(m, n)), std::abs(g(n, m))});
      if (std::abs(g(m, n) - std::conj(g(n, m))) > 1e-12 * scale) {
        std::ostringstream os;
        os << "custom Gram is not Hermitian at (" << m << ", " << n << ")";
        throw Error(ErrorKind::Config, os.str());
      }
    }
  }
  if (probe_size > 0) {
    Eigen::LLT<Eigen::MatrixXcd> llt(g);
    bool ok = llt.info() == Eigen::Success;
    if (ok) {
      const Eigen::MatrixXcd l = llt.matrixL();
      for (std::size_t k = 0; k < probe_size; ++k) ok = ok && l(k, k).real() > 0.0;
    }
    if (!ok) throw Error(ErrorKind::Config, "custom Gram has a non-positive leading principal minor");
  }
  return SpaceSpec(CustomGram{std::move(gram), std::move(reproducibility), {}});
}

SpaceSpec SpaceSpec::custom_table(std::vector<std::vector<cplx>> table,
                                  std::vector<ReproducibilityEntry> reproducibility) {
  const std::size_t size = table.size();
  for (const auto& row : table) {
    if (row.size() != size) throw Error(ErrorKind::Config, "custom Gram table must be square");
  }
  auto shared = std::make_shared<const std::vector<std::vector<cplx>>>(table);
  auto rule = [shared](std::size_t m, std::size_t n) -> cplx {
    if (m >= shared->size() || n >= shared->size()) {
      std::ostringstream os;
      os << "custom Gram table has no entry (" << m << ", " << n << ")";
      throw Error(ErrorKind::Evaluation, os.str());
    }
    return (*shared)[m][n];
  };
  SpaceSpec s = custom(rule, std::move(reproducibility), std::min<std::size_t>(size, 24));
  std::get<CustomGram>(s.variant_).table = std::move(table);
  return s;
}

bool SpaceSpec::is_diagonal() const {
  return std::holds_alternative<DirichletType>(variant_) ||
         std::holds_alternative<WeightedHardy>(variant_);
}

double SpaceSpec::weight(std::size_t n) const {
  if (const auto* d = std::get_if<DirichletType>(&variant_)) {
    return std::pow(static_cast<double>(n + 1), d->alpha);
  }
  if (const auto* w = std::get_if<WeightedHardy>(&variant_)) {
    return n < w->weights.size() ? w->weights[n] : w->weights.back();
  }
  throw Error(ErrorKind::Unsupported, "weight() requires a diagonal space, got " + describe());
}

double SpaceSpec::weight_ratio_down_sup(std::size_t n) const {
  if (const auto* d = std::get_if<DirichletType>(&variant_)) {
    if (d->alpha >= 0.0) return 1.0;
    const double x = static_cast<double>(n + 1);
    return std::pow(x / (x + 1.0), d->alpha);
  }
  if (std::holds_alternative<WeightedHardy>(variant_)) {
    return n < down_suffix_->size() ? (*down_suffix_)[n] : 1.0;
  }
  throw Error(ErrorKind::Unsupported, "weight ratios require a diagonal space");
}

double SpaceSpec::weight_ratio_up_sup(std::size_t n) const {
  if (const auto* d = std::get_if<DirichletType>(&variant_)) {
    if (d->alpha <= 0.0) return 1.0;
    const double x = static_cast<double>(n + 1);
    return std::pow((x + 1.0) / x, d->alpha);
  }
  if (std::holds_alternative<WeightedHardy>(variant_)) {
    return n < up_suffix_->size() ? (*up_suffix_)[n] : 1.0;
  }
  throw Error(ErrorKind::Unsupported, "weight ratios require a diagonal space");
}

double SpaceSpec::shift_power_norm_bound(std::size_t k) const {
  if (const auto* d = std::get_if<DirichletType>(&variant_)) {
    if (d->alpha <= 0.0) return 1.0;
    return std::pow(static_cast<double>(k + 1), d->alpha / 2.0);
  }
  if (const auto* w = std::get_if<WeightedHardy>(&variant_)) {
    double best = 1.0;
    for (std::size_t n = 0; n < w->weights.size(); ++n) {
      best = std::max(best, weight(n + k) / w->weights[n]);
    }
    return std::sqrt(best);
  }
  if (std::holds_alternative<LocalDirichlet>(variant_)) {
    // ||z f||^2 <= 3 ||f||^2 in the local Dirichlet norm.
    return std::pow(3.0, static_cast<double>(k) / 2.0);
  }
  return std::numeric_limits<double>::infinity();
}

double SpaceSpec::weight_drift_probe() const {
  if (!is_diagonal()) return 0.0;
  double drift = 0.0;
  for (std::size_t k = 900; k < 1000; ++k) {
    drift = std::max(drift, std::abs(weight(k) / weight(k + 1) - 1.0));
  }
  return drift;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  if (const auto* d = std::get_if<DirichletType>(&variant_)) {
    os << "D_alpha(alpha=" << d->alpha << ")";
  } else if (const auto* w = std::get_if<WeightedHardy>(&variant_)) {
    os << "H2_w(table of " << w->weights.size() << ")";
  } else if (const auto* l = std::get_if<LocalDirichlet>(&variant_)) {
    os << "D_zeta(zeta=" << l->zeta.real() << (l->zeta.imag() < 0 ? "" : "+") << l->zeta.imag()
       << "i)";
  } else {
    os << "custom";
  }
  return os.str();
}

cplx monomial_inner(const SpaceSpec& space, std::size_t m, std::size_t n) {
  const auto& v = space.variant();
  if (space.is_diagonal()) return m == n ? cplx(space.weight(m), 0.0) : cplx(0.0, 0.0);
  if (const auto* l = std::get_if<LocalDirichlet>(&v)) {
    // H^2 part plus the local Dirichlet integral: delta_mn + min(m,n) zeta^(m-n).
    const double diag = (m == n) ? 1.0 : 0.0;
    const double mn = static_cast<double>(std::min(m, n));
    if (mn == 0.0) return {diag, 0.0};
    const double phase = (static_cast<double>(m) - static_cast<double>(n)) * std::arg(l->zeta);
    return cplx(diag, 0.0) + mn * std::polar(1.0, phase);
  }
  const auto& c = std::get<CustomGram>(v);
  return c.gram(m, n);
}

// ---------------------------------------------------------------------------
// FactoredPoly

FactoredPoly::FactoredPoly(cplx leading, std::vector<Root> roots) : leading_(leading) {
  if (leading == cplx(0.0, 0.0)) throw Error(ErrorKind::Config, "polynomial leading coefficient is zero");
  for (const Root& r : roots) {
    if (r.mult <= 0) throw Error(ErrorKind::Config, "root multiplicity must be positive");
    auto it = std::find_if(roots_.begin(), roots_.end(),
                           [&](const Root& x) { return x.point == r.point; });
    if (it != roots_.end()) {
      it->mult += r.mult;
    } else {
      roots_.push_back(r);
    }
  }
}

FactoredPoly FactoredPoly::monomial(int degree, cplx leading) {
  if (degree == 0) return FactoredPoly(leading, {});
  return FactoredPoly(leading, {Root{0.0, degree}});
}

int FactoredPoly::degree() const {
  int d = 0;
  for (const Root& r : roots_) d += r.mult;
  return d;
}

int FactoredPoly::ord0() const {
  for (const Root& r : roots_) {
    if (r.point == cplx(0.0, 0.0)) return r.mult;
  }
  return 0;
}

std::vector<cplx> FactoredPoly::coefficients() const {
  std::vector<cplx> c{leading_};
  for (const Root& r : roots_) {
    for (int k = 0; k < r.mult; ++k) {
      // multiply by (z - point)
      c.push_back(0.0);
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r.point * c[i];
      c[0] = -r.point * c[0];
    }
  }
  return c;
}

cplx FactoredPoly::operator()(cplx z) const {
  cplx v = leading_;
  for (const Root& r : roots_) v *= std::pow(z - r.point, r.mult);
  return v;
}

// ---------------------------------------------------------------------------
// Reproducibility

int ReproducibleOrder::cap() const {
  switch (tag_) {
    case Tag::Infinite: return INT_MAX;
    case Tag::Finite: return r_ + 1;
    case Tag::None: return 0;
  }
  return 0;
}

std::string ReproducibleOrder::describe() const {
  switch (tag_) {
    case Tag::Infinite: return "infinite";
    case Tag::Finite: return "finite(" + std::to_string(r_) + ")";
    case Tag::None: return "none";
  }
  return "none";
}

ReproducibleOrder reproducible_order(const SpaceSpec& space, cplx beta) {
  const auto& v = space.variant();
  if (const auto* c = std::get_if<CustomGram>(&v)) {
    for (const auto& e : c->reproducibility) {
      if (same_point(e.point, beta)) {
        if (e.order == -1) return ReproducibleOrder::infinite();
        if (e.order >= 0) return ReproducibleOrder::finite(e.order);
        return ReproducibleOrder::none();
      }
    }
    std::ostringstream os;
    os << "custom space has no reproducibility entry for point " << beta;
    throw Error(ErrorKind::MissingReproducibility, os.str());
  }
  const double r = std::abs(beta);
  if (r < 1.0 && !on_circle(beta)) return ReproducibleOrder::infinite();
  if (!on_circle(beta)) return ReproducibleOrder::none();

  if (const auto* d = std::get_if<DirichletType>(&v)) {
    // k_beta^(m) lies in D_alpha on the circle iff alpha > 2m + 1.
    if (d->alpha <= 1.0) return ReproducibleOrder::none();
    int order = static_cast<int>(std::ceil((d->alpha - 1.0) / 2.0)) - 1;
    while (d->alpha > 2.0 * (order + 1) + 1.0) ++order;
    while (order >= 0 && !(d->alpha > 2.0 * order + 1.0)) --order;
    return order >= 0 ? ReproducibleOrder::finite(order) : ReproducibleOrder::none();
  }
  if (std::holds_alternative<WeightedHardy>(v)) {
    // Weights are eventually constant, so sum_n n^(2m) / w_n diverges.
    return ReproducibleOrder::none();
  }
  const auto& l = std::get<LocalDirichlet>(v);
  if (same_point(l.zeta, beta, 1e-12)) return ReproducibleOrder::finite(0);
  return ReproducibleOrder::none();
}

// ---------------------------------------------------------------------------
// ReproducibleMultiset

ReproducibleMultiset::ReproducibleMultiset(int origin_multiplicity, std::vector<Root> entries)
    : origin_multiplicity_(origin_multiplicity), entries_(std::move(entries)) {
  if (origin_multiplicity_ < 0) {
    throw Error(ErrorKind::InadmissibleMultiset, "origin multiplicity must be nonnegative");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].mult < 1) {
      throw Error(ErrorKind::InadmissibleMultiset, "entry multiplicity must be at least 1");
    }
    if (std::abs(entries_[i].point) <= kPointTolerance) {
      throw Error(ErrorKind::InadmissibleMultiset,
                  "the origin must be given through origin_multiplicity");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (same_point(entries_[i].point, entries_[j].point)) {
        throw Error(ErrorKind::InadmissibleMultiset, "multiset points must be pairwise distinct");
      }
    }
  }
}

int ReproducibleMultiset::size() const {
  int n = origin_multiplicity_;
  for (const Root& r : entries_) n += r.mult;
  return n;
}

void ReproducibleMultiset::validate(const SpaceSpec& space, double min_separation) const {
  std::vector<cplx> pts;
  if (origin_multiplicity_ > 0) pts.push_back(0.0);
  for (const Root& r : entries_) {
    const ReproducibleOrder ro = reproducible_order(space, r.point);
    if (r.mult > ro.cap()) {
      std::ostringstream os;
      os << "point " << r.point << " has multiplicity " << r.mult << " but reproducible order "
         << ro.describe();
      throw Error(ErrorKind::InadmissibleMultiset, os.str());
    }
    pts.push_back(r.point);
  }
  if (origin_multiplicity_ > 0 && !reproducible_order(space, 0.0).admits(origin_multiplicity_ - 1)) {
    throw Error(ErrorKind::InadmissibleMultiset, "origin is not reproducible to the needed order");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(pts[i] - pts[j]) < min_separation) {
        std::ostringstream os;
        os << "points " << pts[j] << " and " << pts[i] << " are closer than " << min_separation;
        throw Error(ErrorKind::InadmissibleMultiset, os.str());
      }
    }
  }
}

FactoredPoly ReproducibleMultiset::polynomial() const {
  std::vector<Root> roots;
  if (origin_multiplicity_ > 0) roots.push_back(Root{0.0, origin_multiplicity_});
  roots.insert(roots.end(), entries_.begin(), entries_.end());
  return FactoredPoly(1.0, std::move(roots));
}

bool ReproducibleMultiset::equals(const ReproducibleMultiset& other, double tol) const {
  if (origin_multiplicity_ != other.origin_multiplicity_) return false;
  if (entries_.size() != other.entries_.size()) return false;
  std::vector<bool> used(other.entries_.size(), false);
  for (const Root& r : entries_) {
    bool found = false;
    for (std::size_t j = 0; j < other.entries_.size() && !found; ++j) {
      if (!used[j] && std::abs(other.entries_[j].point - r.point) <= tol &&
          other.entries_[j].mult == r.mult) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<cplx> ReproducibleMultiset::flatten() const {
  std::vector<cplx> out(static_cast<std::size_t>(origin_multiplicity_), cplx(0.0, 0.0));
  for (const Root& r : entries_) out.insert(out.end(), static_cast<std::size_t>(r.mult), r.point);
  return out;
}

ReproducibleMultiset reproducible_multiset(const SpaceSpec& space, const FactoredPoly& p) {
  int m0 = 0;
  std::vector<Root> entries;
  for (const Root& r : p.roots()) {
    const int kept = std::min(r.mult, reproducible_order(space, r.point).cap());
    if (kept <= 0) continue;
    if (std::abs(r.point) <= kPointTolerance) {
      m0 += kept;
    } else {
      entries.push_back(Root{r.point, kept});
    }
  }
  return ReproducibleMultiset(m0, std::move(entries));
}

}  // namespace innerkit
