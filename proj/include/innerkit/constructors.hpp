#pragma once

// Analogues of finite Blaschke products: Shapiro-Shields functions built from
// Gram determinants or from the equivalent Hermitian solve, the brute-force
// projection oracle onto [p], closed-form references (classical Blaschke
// products in H^2, the residue construction in A^2), and the inner part of a
// polynomial.

#include <optional>
#include <string>
#include <vector>

#include "innerkit/kernel.hpp"
#include "innerkit/space.hpp"

namespace innerkit {

enum class Route { determinant, solve, oracle, closed_form, residue, automatic };

const char* to_string(Route r);
Route route_from_string(const std::string& s);

struct ConstructionResult {
  std::optional<KernelCombo> combo;  // absent for the oracle route
  TaylorSeries taylor;
  cplx normalization{1.0, 0.0};  // scalar applied to the raw construction
  Route route = Route::solve;
  // Largest certified error among the kernel pairings used.
  double pairing_err = 0.0;
  // Smallest pivot ratio of the diagonally scaled kernel Gram (or of the
  // oracle spanning set).
  double pivot_ratio = 1.0;
};

// numerator / denominator
struct RationalRep {
  FactoredPoly numerator;
  FactoredPoly denominator;

  cplx operator()(cplx z) const { return numerator(z) / denominator(z); }
};

struct RationalResult {
  RationalRep rational;
  TaylorSeries taylor;  // canonically normalized
  cplx normalization{1.0, 0.0};  // taylor = normalization * rational
};

// Kernels of the Shapiro-Shields determinant for Z, in the order
// k_0^(m0-1), ..., k_0, k_b1^(m1-1), ..., k_b1, ...
std::vector<KernelTerm> multiset_kernels(const ReproducibleMultiset& Z);

// Taylor degree used when none is requested: smallest power of two >= 64
// whose certified tail is below target * |normalizing coefficient|, capped at
// policy.max_terms.
inline constexpr std::size_t kAutoDegree = 0;

// Route::automatic uses the determinant for at most 6 kernels and the
// Hermitian solve beyond that.
ConstructionResult shapiro_shields(const SpaceSpec& space, const ReproducibleMultiset& Z,
                                   Route route = Route::automatic,
                                   const TruncationPolicy& policy = {},
                                   std::size_t taylor_degree = kAutoDegree);

// Raw determinant D(u; v_1..v_n) as kernel coefficients: coefficient of u
// first, then v_1..v_n. Exposed for the cofactor identities.
std::vector<cplx> gram_determinant_coefficients(const SpaceSpec& space, const KernelTerm& u,
                                                const std::vector<KernelTerm>& v,
                                                const TruncationPolicy& policy = {});

// Projection of k_0^(d) onto span{z^j p : 0 <= j <= M - deg p}, unnormalized.
TaylorSeries project_kernel_raw(const SpaceSpec& space, const FactoredPoly& p, int d, std::size_t M);

// Same, canonically normalized (coefficient of z^d equal to 1).
TaylorSeries project_kernel_fd(const SpaceSpec& space, const FactoredPoly& p, int d, std::size_t M);

// Projection of k_beta^(l) onto the same span, unnormalized.
TaylorSeries project_probe(const SpaceSpec& space, const FactoredPoly& p, cplx beta, int l,
                           std::size_t M);

// prod ((z - b) / (1 - conj(b) z))^m. The rational form is the unimodular
// product itself; the Taylor series is canonically normalized.
RationalResult classical_blaschke(const std::vector<Root>& zeros, std::size_t N = 400);

// A^2 inner function q(z) prod (z - l_j) / prod (1 - conj(l_j) z)^2 with q
// fixed by vanishing residues at 1 / conj(l_j); canonically normalized.
RationalResult bergman_rational(const std::vector<cplx>& zeros, std::size_t N = 400);

// Residue of a rational function at one of its poles.
cplx residue_at(const RationalRep& r, cplx pole);

// J = f - projection of f onto span{z^j f : 1 <= j <= M - deg f}; unnormalized.
TaylorSeries inner_projection_of(const SpaceSpec& space, const FactoredPoly& f, std::size_t M);

// Divides by the Taylor coefficient of z^m0.
TaylorSeries canonical_normalize(const TaylorSeries& t, std::size_t m0);

}  // namespace innerkit
