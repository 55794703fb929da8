#pragma once

// Reproducing kernels k_beta^(m) of diagonal (weighted Hardy type) spaces:
// pairings with certified truncation error, Taylor expansions, and the shift
// inner products <z^k B, B> that define innerness.

#include <cstddef>
#include <utility>
#include <vector>

#include "innerkit/space.hpp"

namespace innerkit {

// Represents f -> f^(order)(point).
struct KernelTerm {
  cplx point;
  int order = 0;

  bool operator==(const KernelTerm&) const = default;
};

struct WeightedTerm {
  KernelTerm kernel;
  cplx coef;
};

// sum of coef * k_point^(order)
class KernelCombo {
 public:
  KernelCombo(SpaceSpec space, std::vector<WeightedTerm> terms);

  const SpaceSpec& space() const { return space_; }
  const std::vector<WeightedTerm>& terms() const { return terms_; }

  KernelCombo scaled(cplx s) const;

  // Exact Taylor coefficient of z^n (finite sum over the terms).
  cplx taylor_coefficient(std::size_t n) const;

 private:
  SpaceSpec space_;
  std::vector<WeightedTerm> terms_;
};

struct TaylorSeries {
  std::vector<cplx> coeffs;  // degrees 0..N
  // Bound on the space norm of the discarded tail; +inf when no bound exists.
  double tail_bound = 0.0;

  std::size_t N() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx coefficient(std::size_t n) const { return n < coeffs.size() ? coeffs[n] : cplx(0.0, 0.0); }
  TaylorSeries scaled(cplx s) const;
  // Value of the truncated polynomial (or its l-th derivative) at z.
  cplx evaluate(cplx z, int l = 0) const;
};

enum class BoundKind { geometric, p_series, none };

// target_tolerance is absolute for values of magnitude <= 1 and relative to
// the sum of term magnitudes above that. With bound_kind none no tail bound
// is attempted: max_terms terms are summed and the reported err is +inf.
struct TruncationPolicy {
  double target_tolerance = 1e-12;
  std::size_t max_terms = std::size_t{1} << 20;
  BoundKind bound_kind = BoundKind::p_series;

  void validate() const;
};

struct Certified {
  cplx value;
  double err = 0.0;
};

// <k_a^(m_a), k_b^(m_b)> = sum_n [n!/(n-m_a)!][n!/(n-m_b)!] conj(a)^(n-m_a) b^(n-m_b) / w_n
Certified kernel_pairing(const SpaceSpec& space, const KernelTerm& a, const KernelTerm& b,
                         const TruncationPolicy& policy = {});

struct CertifiedExtended {
  std::complex<long double> value;
  double err = 0.0;
};

// The same series with terms formed and summed in long double, for Gram
// matrices that are factored afterwards.
CertifiedExtended kernel_pairing_extended(const SpaceSpec& space, const KernelTerm& a, const KernelTerm& b,
                                          const TruncationPolicy& policy = {});

TaylorSeries kernel_taylor(const SpaceSpec& space, const KernelTerm& t, std::size_t N);

// Norm of k_t minus its degree-N truncation; +inf when no bound is available.
double kernel_tail_norm(const SpaceSpec& space, const KernelTerm& t, std::size_t N);

TaylorSeries combo_taylor(const SpaceSpec& space, const KernelCombo& combo, std::size_t N);

// Sum over terms of |coef| * kernel_tail_norm(term, N).
double combo_tail_norm(const SpaceSpec& space, const KernelCombo& combo, std::size_t N);

// B^(l)(beta) = <B, k_beta^(l)>.
Certified combo_derivative_at(const SpaceSpec& space, const KernelCombo& combo, cplx beta, int l,
                              const TruncationPolicy& policy = {});

// <z^k B, B> from the truncated series plus a Cauchy-Schwarz bound on the
// contribution of the tail.
Certified shift_inner_product(const SpaceSpec& space, const TaylorSeries& b, std::size_t k);

// Squared space norm of the truncated polynomial sum_{n<=N} c_n z^n.
double polynomial_norm_squared(const SpaceSpec& space, const std::vector<cplx>& coeffs);

}  // namespace innerkit
