#include "innerkit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "innerkit/error.hpp"
#include "innerkit/numeric.hpp"
#include "innerkit/poly.hpp"
#include "innerkit/projection.hpp"

namespace innerkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClusterTolerance = 1e-6;

double norm_of(const SpaceSpec& space, const TaylorSeries& B) {
  const double n2 = shift_inner_product(space, B, 0).value.real();
  if (!(n2 > 0.0)) throw Error(ErrorKind::ZeroFunction, "function has zero norm");
  return std::sqrt(n2);
}

// Evaluates B^(l)(z) for a construction, exactly through the kernel
// combination when there is one.
class Evaluator {
 public:
  Evaluator(const SpaceSpec& space, const ConstructionResult& result)
      : space_(space), result_(result) {}

  Certified operator()(cplx z, int l) const {
    if (result_.combo) return combo_derivative_at(space_, *result_.combo, z, l);
    const TaylorSeries& B = result_.taylor;
    const cplx v = B.evaluate(z, l);
    if (B.tail_bound == 0.0) return {v, 0.0};
    return {v, B.tail_bound * kernel_norm(z, l)};
  }

  // ||k_z^(l)||; restricted to polynomials of the Taylor degree outside
  // diagonal spaces.
  double kernel_norm(cplx z, int l) const {
    if (space_.is_diagonal()) {
      return std::sqrt(kernel_pairing(space_, {z, l}, {z, l}).value.real());
    }
    if (!iso_) iso_.emplace(space_, std::max<std::size_t>(result_.taylor.N(), 1));
    return iso_->riesz(derivative_functional(z, l, iso_->degree())).norm();
  }

 private:
  const SpaceSpec& space_;
  const ConstructionResult& result_;
  mutable std::optional<PolynomialIsometry> iso_;
};

PrescribedZero check_point(const SpaceSpec& space, const Evaluator& eval, cplx point, int mult,
                           double threshold) {
  PrescribedZero pz{point, mult, {}, {}, 0.0, true};
  for (int l = 0; l < mult; ++l) {
    const Certified c = eval(point, l);
    pz.residuals.push_back(std::abs(c.value));
    pz.errors.push_back(c.err);
    if (!(std::abs(c.value) <= threshold)) pz.ok = false;
  }
  const bool interior = std::abs(point) < 1.0 - kCircleTolerance;
  if (interior || reproducible_order(space, point).admits(mult)) {
    pz.first_nonvanishing = std::abs(eval(point, mult).value);
  } else {
    pz.first_nonvanishing = std::numeric_limits<double>::quiet_NaN();
  }
  return pz;
}

// Winding number of the polynomial c around |z| = r, or -1 when some sample
// has modulus at most floor or the sampling cannot resolve the argument.
// With floor bounding |B - c| on the circle, Rouche gives the zero count of B.
int winding_count(const std::vector<cplx>& c, double r, double floor) {
  for (std::size_t samples = 1024; samples <= (std::size_t{1} << 16); samples *= 2) {
    double total = 0.0;
    bool resolved = true;
    cplx prev = poly::eval(c, r);
    if (!(std::abs(prev) > floor)) return -1;
    for (std::size_t s = 1; s <= samples && resolved; ++s) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
      const cplx v = poly::eval(c, std::polar(r, t));
      if (!(std::abs(v) > floor)) return -1;
      const double step = std::arg(v / prev);
      if (std::abs(step) > std::numbers::pi / 4) resolved = false;
      total += step;
      prev = v;
    }
    if (resolved) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------

InnerReport inner_report(const SpaceSpec& space, const TaylorSeries& B, std::size_t K, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Config, "tolerance must be positive");
  InnerReport r;
  r.K = K;
  r.tol = tol;
  const Certified n2 = shift_inner_product(space, B, 0);
  r.norm_sq = n2.value.real();
  r.norm_sq_err = n2.err;
  if (!(r.norm_sq > 0.0)) throw Error(ErrorKind::ZeroFunction, "function has zero norm");
  for (std::size_t k = 1; k <= K; ++k) {
    const Certified c = shift_inner_product(space, B, k);
    r.residuals.push_back({k, std::abs(c.value), c.err});
    r.max_relative_residual = std::max(r.max_relative_residual, std::abs(c.value) / r.norm_sq);
  }
  r.verdict = r.max_relative_residual <= tol;
  return r;
}

ZeroReport zero_report(const SpaceSpec& space, const ConstructionResult& result,
                       const ReproducibleMultiset& Z, double radius, double tol) {
  if (!(radius > 0.0 && radius < 1.0)) throw Error(ErrorKind::Config, "scan radius must lie in (0, 1)");
  if (!(tol > 0.0)) throw Error(ErrorKind::Config, "tolerance must be positive");
  const TaylorSeries& B = result.taylor;
  const Evaluator eval(space, result);

  ZeroReport rep;
  rep.radius = radius;
  rep.tol = tol;
  rep.norm = norm_of(space, B);
  const double threshold = tol * rep.norm;

  const int m0 = Z.origin_multiplicity();
  rep.prescribed.push_back(check_point(space, eval, 0.0, m0, threshold));
  for (const Root& r : Z.entries()) rep.prescribed.push_back(check_point(space, eval, r.point, r.mult, threshold));
  rep.origin_coefficient = std::abs(B.coefficient(static_cast<std::size_t>(m0)));
  rep.origin_exact = rep.prescribed.front().ok && rep.origin_coefficient > tol;

  // Truncation degree whose tail is negligible on the scan disk: for |z| <= r,
  // |sum_{n>N} b_n z^n| <= ||tail of B|| * ||tail of k_r||.
  std::vector<cplx> coeffs;
  if (result.combo && space.is_diagonal()) {
    std::size_t N = 32;
    for (;; N *= 2) {
      rep.scan_tail = combo_tail_norm(space, *result.combo, N) * kernel_tail_norm(space, {radius, 0}, N);
      if (rep.scan_tail <= threshold) break;
      if (N >= kMaxScanDegree) {
        std::ostringstream os;
        os << "truncation error " << rep.scan_tail << " on |z| = " << radius
           << " exceeds the residual threshold " << threshold << " at degree " << N;
        throw Error(ErrorKind::TruncationDominatesResidual, os.str());
      }
    }
    coeffs = N <= B.N() ? std::vector<cplx>(B.coeffs.begin(), B.coeffs.begin() + static_cast<std::ptrdiff_t>(N + 1))
                        : combo_taylor(space, *result.combo, N).coeffs;
  } else {
    coeffs = B.coeffs;
    if (B.tail_bound == 0.0) {
      rep.scan_tail = 0.0;
    } else if (space.is_diagonal()) {
      rep.scan_tail = B.tail_bound * kernel_tail_norm(space, {radius, 0}, B.N());
    } else {
      rep.scan_tail = kInf;
    }
    if (!(rep.scan_tail <= threshold)) {
      std::ostringstream os;
      os << "truncation error " << rep.scan_tail << " on |z| = " << radius
         << " exceeds the residual threshold " << threshold;
      throw Error(ErrorKind::TruncationDominatesResidual, os.str());
    }
  }
  rep.scan_degree = coeffs.empty() ? 0 : coeffs.size() - 1;

  // Zeros at the origin are accounted for by m0; scan B / z^m0.
  std::vector<cplx> reduced(coeffs.begin() + std::min<std::ptrdiff_t>(m0, static_cast<std::ptrdiff_t>(coeffs.size())),
                            coeffs.end());
  reduced = poly::trim(std::move(reduced));
  std::vector<cplx> candidates;
  const int winding = reduced.size() > 1 ? winding_count(reduced, radius, rep.scan_tail / std::pow(radius, m0))
                                         : 0;
  rep.zeros_in_disk = winding < 0 ? -1 : winding + m0;
  int expected = 0;
  for (const Root& r : Z.entries()) {
    if (std::abs(r.point) < radius) expected += r.mult;
  }
  if (reduced.size() > 1 && winding != expected) {
    for (cplx z : poly::companion_roots(reduced)) {
      if (std::abs(z) > radius + 1e-3) continue;
      for (int it = 0; it < 12; ++it) {
        const cplx f = eval(z, 0).value;
        const cplx df = eval(z, 1).value;
        if (df == cplx(0.0, 0.0)) break;
        const cplx step = f / df;
        z -= step;
        if (!(std::abs(z) < 1.0)) break;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
      }
      if (!(std::abs(z) <= radius)) continue;
      const double rel = std::abs(eval(z, 0).value) / (rep.norm * eval.kernel_norm(z, 0));
      if (!(rel <= tol)) continue;
      bool prescribed = std::abs(z) < kClusterTolerance;
      for (const Root& r : Z.entries()) prescribed = prescribed || std::abs(z - r.point) < kClusterTolerance;
      if (!prescribed) candidates.push_back(z);
    }
  }
  for (const Root& c : poly::cluster_roots(candidates, kClusterTolerance)) {
    ExtraneousZero ez{c.point, std::abs(eval(c.point, 0).value) / (rep.norm * eval.kernel_norm(c.point, 0)), 1};
    // Multiplicity: first Taylor term B^(l)(c) rho^l / l! about the zero that
    // is not negligible next to the largest of the first eight.
    const double rho = 0.5 * (1.0 - std::abs(c.point));
    std::vector<double> local(9, 0.0);
    double fact = 1.0, biggest = 0.0;
    for (int l = 1; l <= 8; ++l) {
      fact *= l;
      local[l] = std::abs(eval(c.point, l).value) * std::pow(rho, l) / fact;
      biggest = std::max(biggest, local[l]);
    }
    for (int l = 1; l <= 8; ++l) {
      ez.multiplicity = l;
      if (local[l] > std::sqrt(tol) * biggest) break;
    }
    rep.extraneous.push_back(ez);
  }

  bool prescribed_ok = true;
  for (const PrescribedZero& pz : rep.prescribed) prescribed_ok = prescribed_ok && pz.ok;
  rep.verdict = prescribed_ok && rep.origin_exact;
  return rep;
}

ComparisonReport scalar_multiple_check(const TaylorSeries& f, const TaylorSeries& g, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Config, "tolerance must be positive");
  const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  if (n == 0) throw Error(ErrorKind::ZeroFunction, "empty Taylor series");
  double fmax = 0.0, gmax = 0.0;
  cplx gf{0.0, 0.0};
  double gg = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    fmax = std::max(fmax, std::abs(f.coeffs[k]));
    gmax = std::max(gmax, std::abs(g.coeffs[k]));
    gf += std::conj(g.coeffs[k]) * f.coeffs[k];
    gg += std::norm(g.coeffs[k]);
  }
  constexpr double tiny = std::numeric_limits<double>::min();
  if (!(fmax > tiny) || !(gmax > tiny)) {
    throw Error(ErrorKind::ZeroFunction, "cannot compare a numerically zero function");
  }
  ComparisonReport r;
  r.tol = tol;
  r.compared_degree = n - 1;
  r.lambda = gf / gg;
  for (std::size_t k = 0; k < n; ++k) {
    r.max_coeff_deviation = std::max(r.max_coeff_deviation, std::abs(f.coeffs[k] - r.lambda * g.coeffs[k]));
  }
  r.is_scalar_multiple = r.max_coeff_deviation <= tol * std::max(fmax, gmax);
  return r;
}

SubspaceResult subspace_equal(const SpaceSpec& space, const FactoredPoly& p, const FactoredPoly& q,
                              std::size_t M) {
  SubspaceResult out;
  SubspaceEvidence& ev = out.evidence;
  ev.Rp = reproducible_multiset(space, p);
  ev.Rq = reproducible_multiset(space, q);
  out.equal = ev.Rp.equals(ev.Rq);
  ev.M = std::max<std::size_t>(M, static_cast<std::size_t>(std::max(p.degree(), q.degree())) + 10);

  struct Probe {
    std::string label;
    cplx point;
    int order;
  };
  std::vector<Probe> probes;
  auto origin_probe = [&](int d) {
    std::ostringstream os;
    os << "k_0^(" << d << ")";
    for (const Probe& pr : probes) {
      if (pr.label == os.str()) return;
    }
    probes.push_back({os.str(), 0.0, d});
  };
  origin_probe(ev.Rp.origin_multiplicity());
  origin_probe(ev.Rq.origin_multiplicity());
  probes.push_back({"k_0.3", cplx(0.3, 0.0), 0});
  probes.push_back({"k_-0.4i^(1)", cplx(0.0, -0.4), 1});

  for (const Probe& pr : probes) {
    const TaylorSeries fp = project_probe(space, p, pr.point, pr.order, ev.M);
    const TaylorSeries fq = project_probe(space, q, pr.point, pr.order, ev.M);
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k <= ev.M; ++k) {
      scale = std::max({scale, std::abs(fp.coefficient(k)), std::abs(fq.coefficient(k))});
      diff = std::max(diff, std::abs(fp.coefficient(k) - fq.coefficient(k)));
    }
    const double dev = scale > 0.0 ? diff / scale : 0.0;
    ev.probes.push_back({pr.label, dev});
    ev.max_deviation = std::max(ev.max_deviation, dev);
  }
  ev.corroborated = out.equal ? ev.max_deviation <= kProbeAgreement : ev.max_deviation > kProbeAgreement;
  return out;
}

// ---------------------------------------------------------------------------
// Extremal sampling

namespace {

class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Box-Muller; both outputs are used.
  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  cplx complex() {
    const double re = next();
    const double im = next();
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

ExtremalReport extremal_check(const SpaceSpec& space, const FactoredPoly& p,
                              const ConstructionResult& result, std::size_t samples,
                              std::uint64_t seed, std::size_t M) {
  const auto degp = static_cast<std::size_t>(p.degree());
  if (M < degp + 1) throw Error(ErrorKind::Config, "extremal degree M must exceed deg p");
  ExtremalReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.M = M;
  rep.d = reproducible_multiset(space, p).origin_multiplicity();
  const auto d = static_cast<std::size_t>(rep.d);
  const double dfact = factorial(d);

  rep.construction_value = dfact * std::abs(result.taylor.coefficient(d)) / norm_of(space, result.taylor);

  const PolynomialIsometry iso(space, M);
  const std::vector<cplx> pc = p.coefficients();
  auto value_of = [&](const std::vector<cplx>& g) {
    const double n = iso.apply(g).norm();
    return n > 0.0 ? dfact * g[d].real() / n : 0.0;
  };
  Gaussian rng(seed);
  auto random_element = [&]() {
    std::vector<cplx> c(M - degp + 1);
    for (cplx& x : c) x = rng.complex();
    std::vector<cplx> g = poly::multiply(c, pc);
    g.resize(M + 1);
    const double n = iso.apply(g).norm();
    for (cplx& x : g) x /= n;
    return g;
  };

  // The span optimum is P k_0^(d) / ||P k_0^(d)||, with value ||P k_0^(d)||.
  std::vector<cplx> opt(M + 1);
  if (M >= degp + 10) {
    opt = project_kernel_raw(space, p, rep.d, M).coeffs;
  } else {
    const ShiftSpanProjector proj(space, pc, M);
    opt = proj.project_functional(derivative_functional(0.0, rep.d, M));
  }
  opt.resize(M + 1);
  const double opt_norm = iso.apply(opt).norm();
  rep.span_optimum = opt_norm;
  if (opt_norm > 0.0) {
    for (cplx& x : opt) x /= opt_norm;
  }

  rep.max_sample = -kInf;
  const std::size_t gaussian = (samples + 1) / 2;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> g = random_element();
    if (s >= gaussian && opt_norm > 0.0) {
      const std::size_t idx = s - gaussian;
      const double eps = std::pow(10.0, -7.0 + 6.0 * static_cast<double>(idx % 61) / 60.0);
      for (std::size_t k = 0; k <= M; ++k) g[k] = opt[k] + eps * g[k];
    }
    rep.max_sample = std::max(rep.max_sample, value_of(g));
  }
  if (samples == 0) rep.max_sample = 0.0;
  rep.verdict = rep.max_sample <= rep.construction_value + rep.margin;
  return rep;
}

// ---------------------------------------------------------------------------

ScanReport extraneous_scan(const SpaceSpec& space, const std::vector<double>& moduli,
                           std::size_t angles, double radius, double tol, double comparison_tol) {
  if (angles == 0) throw Error(ErrorKind::Config, "angle count must be positive");
  ScanReport rep;
  rep.moduli = moduli;
  rep.angles = angles;
  rep.radius = radius;
  rep.tol = tol;
  rep.verdict = true;
  for (double ra : moduli) {
    for (double rb : moduli) {
      for (std::size_t k = 0; k < angles; ++k) {
        const cplx a(ra, 0.0);
        const cplx b = std::polar(rb, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles));
        if (std::abs(a - b) < 1e-3) {
          ++rep.skipped;
          continue;
        }
        ++rep.instances;
        const ReproducibleMultiset Z(0, {{a, 1}, {b, 1}});
        const ConstructionResult S = shapiro_shields(space, Z);
        const ZeroReport zr = zero_report(space, S, Z, radius, tol);
        if (zr.extraneous.empty()) continue;
        ScanInstance inst{a, b, zr.extraneous, std::nullopt};
        std::vector<Root> extended = Z.entries();
        extended.push_back({zr.extraneous.front().location, 1});
        const ConstructionResult S2 = shapiro_shields(space, ReproducibleMultiset(0, extended));
        inst.comparison = scalar_multiple_check(S.taylor, S2.taylor, comparison_tol);
        rep.verdict = rep.verdict && inst.comparison->is_scalar_multiple;
        rep.found.push_back(std::move(inst));
      }
    }
  }
  std::ostringstream os;
  os << (rep.found.empty() ? "no instance found in region" : "extraneous zeros found") << ": "
     << rep.instances << " two-point multisets in " << space.describe() << ", moduli {";
  for (std::size_t i = 0; i < moduli.size(); ++i) os << (i ? ", " : "") << moduli[i];
  os << "}, " << angles << " angles, scan radius " << radius << ", residual tolerance " << tol;
  if (!rep.found.empty()) os << "; " << rep.found.size() << " instances with extraneous zeros";
  rep.statement = os.str();
  return rep;
}

}  // namespace innerkit
