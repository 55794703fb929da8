#include "innerkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "innerkit/error.hpp"
#include "innerkit/numeric.hpp"

namespace innerkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// z^k through polar form, which keeps the phase accurate for large k.
cplx int_power(cplx z, std::size_t k) {
  if (k == 0) return {1.0, 0.0};
  if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
  const double kk = static_cast<double>(k);
  return std::polar(std::pow(std::abs(z), kk), kk * std::arg(z));
}

bool on_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= kCircleTolerance; }

void require_diagonal(const SpaceSpec& space, const char* what) {
  if (!space.is_diagonal()) {
    throw Error(ErrorKind::Unsupported,
                std::string(what) + " needs a diagonal (weighted Hardy type) space; got " +
                    space.describe());
  }
}

void require_admissible(const SpaceSpec& space, const KernelTerm& t) {
  if (t.order < 0) throw Error(ErrorKind::Config, "kernel order must be nonnegative");
  if (!reproducible_order(space, t.point).admits(t.order)) {
    std::ostringstream os;
    os << "k_" << t.point << "^(" << t.order << ") is not in " << space.describe();
    throw Error(ErrorKind::DivergentSeries, os.str());
  }
}

double dirichlet_alpha(const SpaceSpec& space) {
  if (const auto* d = std::get_if<DirichletType>(&space.variant())) return d->alpha;
  return std::numeric_limits<double>::quiet_NaN();
}

// Upper bound on sum_{n > N} (n+1)^(-s), s > 1.
double p_series_tail(std::size_t N, double s) {
  return std::pow(static_cast<double>(N + 1), 1.0 - s) / (s - 1.0);
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(target_tolerance > 0.0)) throw Error(ErrorKind::Config, "target_tolerance must be positive");
  if (max_terms < 16) throw Error(ErrorKind::Config, "max_terms must be at least 16");
}

// ---------------------------------------------------------------------------
// KernelCombo / TaylorSeries

KernelCombo::KernelCombo(SpaceSpec space, std::vector<WeightedTerm> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
  bool nonzero = false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    nonzero = nonzero || terms_[i].coef != cplx(0.0, 0.0);
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[i].kernel.order == terms_[j].kernel.order &&
          std::abs(terms_[i].kernel.point - terms_[j].kernel.point) <= kPointTolerance) {
        throw Error(ErrorKind::Config, "kernel combination has a repeated (point, order) term");
      }
    }
  }
  if (!nonzero) throw Error(ErrorKind::ZeroFunction, "kernel combination has no nonzero coefficient");
}

KernelCombo KernelCombo::scaled(cplx s) const {
  std::vector<WeightedTerm> t = terms_;
  for (auto& w : t) w.coef *= s;
  return KernelCombo(space_, std::move(t));
}

cplx KernelCombo::taylor_coefficient(std::size_t n) const {
  CompensatedSum<cplx> acc;
  for (const auto& w : terms_) {
    const auto m = static_cast<std::size_t>(w.kernel.order);
    if (n < m) continue;
    acc.add(w.coef * falling_factorial(n, m) * int_power(std::conj(w.kernel.point), n - m) /
            space_.weight(n));
  }
  return acc.value();
}

TaylorSeries TaylorSeries::scaled(cplx s) const {
  TaylorSeries out = *this;
  for (auto& c : out.coeffs) c *= s;
  out.tail_bound *= std::abs(s);
  return out;
}

cplx TaylorSeries::evaluate(cplx z, int l) const {
  // Horner on the l-th derivative.
  cplx acc{0.0, 0.0};
  const auto lu = static_cast<std::size_t>(l);
  for (std::size_t n = coeffs.size(); n-- > lu;) {
    acc = acc * z + coeffs[n] * falling_factorial(n, lu);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Pairings

namespace {

// z^k in precision R, through polar form.
template <typename R>
std::complex<R> int_power_in(cplx z, std::size_t k) {
  if (k == 0) return {R(1), R(0)};
  if (z == cplx(0.0, 0.0)) return {R(0), R(0)};
  const R kk = static_cast<R>(k);
  const std::complex<R> zr(z.real(), z.imag());
  return std::polar(std::pow(std::abs(zr), kk), kk * std::arg(zr));
}

template <typename R>
R weight_in(const SpaceSpec& space, std::size_t n) {
  if (const auto* d = std::get_if<DirichletType>(&space.variant())) {
    return std::pow(static_cast<R>(n + 1), static_cast<R>(d->alpha));
  }
  return static_cast<R>(space.weight(n));
}

template <typename R>
R falling_factorial_in(std::size_t n, std::size_t m) {
  if (m > n) return R(0);
  R p = 1;
  for (std::size_t k = 0; k < m; ++k) p *= static_cast<R>(n - k);
  return p;
}

// The pairing series with terms formed and summed in precision R. Tail
// bounds and tolerances are handled in double.
template <typename R>
std::pair<std::complex<R>, double> pairing_series(const SpaceSpec& space, const KernelTerm& a,
                                                  const KernelTerm& b, const TruncationPolicy& policy) {
  using C = std::complex<R>;
  const double eps = static_cast<double>(std::numeric_limits<R>::epsilon());
  policy.validate();
  require_diagonal(space, "kernel_pairing");
  require_admissible(space, a);
  require_admissible(space, b);

  const auto ma = static_cast<std::size_t>(a.order);
  const auto mb = static_cast<std::size_t>(b.order);
  const cplx ca = std::conj(a.point);

  auto term = [&](std::size_t n) -> C {
    return falling_factorial_in<R>(n, ma) * falling_factorial_in<R>(n, mb) * int_power_in<R>(ca, n - ma) *
           int_power_in<R>(b.point, n - mb) / weight_in<R>(space, n);
  };

  // A kernel at the origin is a single monomial, so the series is finite.
  const bool a_zero = a.point == cplx(0.0, 0.0);
  const bool b_zero = b.point == cplx(0.0, 0.0);
  if (a_zero || b_zero) {
    std::size_t n = a_zero ? ma : mb;
    if ((a_zero && n < mb) || (b_zero && n < ma) || (a_zero && b_zero && ma != mb)) {
      return {C(0, 0), 0.0};
    }
    const C v = term(n);
    return {v, 2.0 * eps * static_cast<double>(std::abs(v))};
  }

  const double abs_a = std::abs(a.point), abs_b = std::abs(b.point);
  const double rho = abs_a * abs_b;
  const bool boundary = on_circle(a.point) && on_circle(b.point);
  double p_exponent = 0.0;
  if (boundary) {
    const double alpha = dirichlet_alpha(space);
    p_exponent = alpha - static_cast<double>(ma + mb);
    if (!(p_exponent > 1.0)) {
      throw Error(ErrorKind::DivergentSeries, "boundary pairing requires alpha > m_a + m_b + 1");
    }
    if (policy.bound_kind == BoundKind::geometric) {
      throw Error(ErrorKind::ToleranceUnreachable,
                  "boundary pairing needs a p-series tail bound but the policy allows only geometric");
    }
  } else if (!(rho < 1.0)) {
    throw Error(ErrorKind::DivergentSeries, "pairing series does not converge");
  }

  auto magnitude = [&](std::size_t n) {
    return falling_factorial(n, ma) * falling_factorial(n, mb) *
           std::pow(abs_a, static_cast<double>(n - ma)) *
           std::pow(abs_b, static_cast<double>(n - mb)) / space.weight(n);
  };
  auto ratio_sup = [&](std::size_t n) {
    const double x = static_cast<double>(n + 1);
    return x / (x - static_cast<double>(ma)) * x / (x - static_cast<double>(mb)) * rho *
           space.weight_ratio_down_sup(n);
  };

  const std::size_t n0 = std::max(ma, mb);
  CompensatedSum<C> sum;
  double abs_sum = 0.0;
  for (std::size_t n = n0;; ++n) {
    const C t = term(n);
    sum.add(t);
    abs_sum += static_cast<double>(std::abs(t));
    const double scale = std::max(1.0, abs_sum);
    const double rounding = 4.0 * eps * abs_sum;
    const std::size_t used = n - n0 + 1;
    if (policy.bound_kind == BoundKind::none) {
      if (used >= policy.max_terms) return {sum.value(), kInf};
      continue;
    }
    double tail = kInf;
    if (boundary) {
      tail = p_series_tail(n, p_exponent);
    } else {
      const double q = ratio_sup(n);
      if (q < 1.0) tail = magnitude(n) * q / (1.0 - q);
    }
    const double requested = policy.target_tolerance * scale;
    // Interior series converge geometrically, so they are summed to rounding level.
    const double goal = boundary ? requested - rounding : std::min(requested, eps * abs_sum);
    if (tail <= goal || (used >= policy.max_terms && tail + rounding <= requested)) {
      return {sum.value(), tail + rounding};
    }
    if (used >= policy.max_terms) {
      std::ostringstream os;
      os << "pairing of k_" << a.point << "^(" << a.order << ") and k_" << b.point << "^("
         << b.order << ") needs more than " << policy.max_terms << " terms (tail bound " << tail
         << ")";
      throw Error(ErrorKind::ToleranceUnreachable, os.str());
    }
  }
}

}  // namespace

Certified kernel_pairing(const SpaceSpec& space, const KernelTerm& a, const KernelTerm& b,
                         const TruncationPolicy& policy) {
  const auto [value, err] = pairing_series<double>(space, a, b, policy);
  return {value, err};
}

CertifiedExtended kernel_pairing_extended(const SpaceSpec& space, const KernelTerm& a, const KernelTerm& b,
                                          const TruncationPolicy& policy) {
  const auto [value, err] = pairing_series<long double>(space, a, b, policy);
  return {value, err};
}

// ---------------------------------------------------------------------------
// Taylor expansions

double kernel_tail_norm(const SpaceSpec& space, const KernelTerm& t, std::size_t N) {
  require_diagonal(space, "kernel_tail_norm");
  if (t.order < 0 || !reproducible_order(space, t.point).admits(t.order)) return kInf;
  const auto m = static_cast<std::size_t>(t.order);
  const double r = std::abs(t.point);
  if (r == 0.0) return N >= m ? 0.0 : factorial(m) / std::sqrt(space.weight(m));

  // ||tail||^2 = sum_{n>N} [n!/(n-m)!]^2 r^(2(n-m)) / w_n
  auto term = [&](std::size_t n) {
    if (n < m) return 0.0;
    const double p = falling_factorial(n, m);
    return p * p * std::pow(r, 2.0 * static_cast<double>(n - m)) / space.weight(n);
  };
  double sq = 0.0;
  std::size_t start = N;
  while (start < m) sq += term(++start);
  if (on_circle(t.point)) {
    const double s = dirichlet_alpha(space) - 2.0 * static_cast<double>(m);
    if (!(s > 1.0)) return kInf;
    sq += p_series_tail(start, s);
  } else {
    const double rho = r * r;
    auto ratio_sup = [&](std::size_t n) {
      const double x = static_cast<double>(n + 1);
      const double f = x / (x - static_cast<double>(m));
      return f * f * rho * space.weight_ratio_down_sup(n);
    };
    sq += geometric_tail(term, ratio_sup, start);
  }
  return std::sqrt(sq);
}

TaylorSeries kernel_taylor(const SpaceSpec& space, const KernelTerm& t, std::size_t N) {
  require_diagonal(space, "kernel_taylor");
  TaylorSeries out;
  out.coeffs.assign(N + 1, cplx(0.0, 0.0));
  const auto m = static_cast<std::size_t>(std::max(t.order, 0));
  const cplx cb = std::conj(t.point);
  for (std::size_t n = m; n <= N; ++n) {
    out.coeffs[n] = falling_factorial(n, m) * int_power(cb, n - m) / space.weight(n);
  }
  out.tail_bound = kernel_tail_norm(space, t, N);
  return out;
}

double combo_tail_norm(const SpaceSpec& space, const KernelCombo& combo, std::size_t N) {
  double tail = 0.0;
  for (const auto& w : combo.terms()) {
    if (w.coef == cplx(0.0, 0.0)) continue;
    tail += std::abs(w.coef) * kernel_tail_norm(space, w.kernel, N);
  }
  return tail;
}

TaylorSeries combo_taylor(const SpaceSpec& space, const KernelCombo& combo, std::size_t N) {
  require_diagonal(space, "combo_taylor");
  TaylorSeries out;
  out.coeffs.assign(N + 1, cplx(0.0, 0.0));
  for (std::size_t n = 0; n <= N; ++n) out.coeffs[n] = combo.taylor_coefficient(n);
  out.tail_bound = combo_tail_norm(space, combo, N);
  return out;
}

Certified combo_derivative_at(const SpaceSpec& space, const KernelCombo& combo, cplx beta, int l,
                              const TruncationPolicy& policy) {
  const KernelTerm probe{beta, l};
  CompensatedSum<cplx> sum;
  double err = 0.0;
  for (const auto& w : combo.terms()) {
    const Certified p = kernel_pairing(space, w.kernel, probe, policy);
    sum.add(w.coef * p.value);
    err += std::abs(w.coef) * p.err + kEps * std::abs(w.coef * p.value);
  }
  return {sum.value(), err};
}

// ---------------------------------------------------------------------------
// Shift inner products

double polynomial_norm_squared(const SpaceSpec& space, const std::vector<cplx>& c) {
  if (space.is_diagonal()) {
    CompensatedSum<double> s;
    for (std::size_t n = 0; n < c.size(); ++n) s.add(std::norm(c[n]) * space.weight(n));
    return s.value();
  }
  CompensatedSum<cplx> s;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == cplx(0.0, 0.0)) continue;
    for (std::size_t n = 0; n < c.size(); ++n) {
      s.add(c[m] * std::conj(c[n]) * monomial_inner(space, m, n));
    }
  }
  return s.value().real();
}

Certified shift_inner_product(const SpaceSpec& space, const TaylorSeries& b, std::size_t k) {
  const double tau = b.tail_bound;
  if (!std::isfinite(tau)) {
    throw Error(ErrorKind::UnboundedTail, "Taylor series has no tail bound");
  }
  const auto& c = b.coeffs;
  const std::size_t len = c.size();
  CompensatedSum<cplx> sum;
  double abs_sum = 0.0;
  double norm_sq = 0.0, shifted_norm_sq = 0.0;
  if (space.is_diagonal()) {
    for (std::size_t n = k; n < len; ++n) {
      const cplx t = c[n - k] * std::conj(c[n]) * space.weight(n);
      sum.add(t);
      abs_sum += std::abs(t);
    }
    if (tau > 0.0) {
      for (std::size_t n = 0; n < len; ++n) {
        norm_sq += std::norm(c[n]) * space.weight(n);
        shifted_norm_sq += std::norm(c[n]) * space.weight(n + k);
      }
    }
  } else {
    for (std::size_t m = 0; m < len; ++m) {
      if (c[m] == cplx(0.0, 0.0)) continue;
      for (std::size_t n = 0; n < len; ++n) {
        const cplx t = c[m] * std::conj(c[n]) * monomial_inner(space, m + k, n);
        sum.add(t);
        abs_sum += std::abs(t);
      }
    }
    if (tau > 0.0) {
      norm_sq = polynomial_norm_squared(space, c);
      std::vector<cplx> shifted(len + k, cplx(0.0, 0.0));
      std::copy(c.begin(), c.end(), shifted.begin() + static_cast<std::ptrdiff_t>(k));
      shifted_norm_sq = polynomial_norm_squared(space, shifted);
    }
  }
  double err = 4.0 * kEps * abs_sum;
  if (tau > 0.0) {
    const double s = space.shift_power_norm_bound(k);
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::UnboundedTail, "no shift norm bound is known for " + space.describe());
    }
    err += tau * (std::sqrt(std::max(shifted_norm_sq, 0.0)) + s * std::sqrt(std::max(norm_sq, 0.0)) +
                  s * tau);
  }
  cplx v = sum.value();
  if (k == 0) v = cplx(v.real(), 0.0);
  return {v, err};
}

}  // namespace innerkit
