#pragma once

// Numerical checks on constructed functions: innerness through shift inner
// products, prescribed and extraneous zeros, scalar-multiple relations,
// equality of shift-invariant subspaces, and the extremal property.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "innerkit/constructors.hpp"
#include "innerkit/kernel.hpp"
#include "innerkit/space.hpp"

namespace innerkit {

struct ShiftResidual {
  std::size_t k = 0;
  double modulus = 0.0;  // |<z^k B, B>|
  double err = 0.0;
};

struct InnerReport {
  double norm_sq = 0.0;
  double norm_sq_err = 0.0;
  std::vector<ShiftResidual> residuals;
  double max_relative_residual = 0.0;
  std::size_t K = 0;
  double tol = 0.0;
  bool verdict = false;
};

// Residuals for k = 1..K; verdict is max |<z^k B, B>| / ||B||^2 <= tol.
InnerReport inner_report(const SpaceSpec& space, const TaylorSeries& B, std::size_t K, double tol);

struct PrescribedZero {
  cplx point;
  int mult = 0;
  std::vector<double> residuals;    // |B^(l)(point)| for l < mult
  std::vector<double> errors;       // certified error of each residual
  double first_nonvanishing = 0.0;  // |B^(mult)(point)|, NaN when not admissible
  bool ok = false;
};

struct ExtraneousZero {
  cplx location;
  // |B(z)| / (||B|| ||k_z||), at most 1 by Cauchy-Schwarz.
  double residual = 0.0;
  int multiplicity = 1;
};

struct ZeroReport {
  double norm = 0.0;
  std::vector<PrescribedZero> prescribed;
  std::vector<ExtraneousZero> extraneous;
  double origin_coefficient = 0.0;  // |b_{m0}|
  bool origin_exact = false;
  std::size_t scan_degree = 0;
  double scan_tail = 0.0;  // bound on the truncation error over the scan disk
  // Zeros of B in |z| < radius (origin included) by the argument principle
  // on the truncated series, -1 when the winding could not be certified.
  int zeros_in_disk = -1;
  double radius = 0.0;
  double tol = 0.0;
  // Prescribed residuals small and origin order exact. Extraneous zeros are
  // reported but do not fail the verdict.
  bool verdict = false;
};

// Largest Taylor degree the extraneous scan will use.
inline constexpr std::size_t kMaxScanDegree = 1024;

ZeroReport zero_report(const SpaceSpec& space, const ConstructionResult& result,
                       const ReproducibleMultiset& Z, double radius = 0.99, double tol = 1e-8);

struct ComparisonReport {
  bool is_scalar_multiple = false;
  cplx lambda;  // f ~ lambda * g
  double max_coeff_deviation = 0.0;
  std::size_t compared_degree = 0;
  double tol = 0.0;
};

// Compares coefficients 0..min(N_f, N_g) with the least-squares lambda.
ComparisonReport scalar_multiple_check(const TaylorSeries& f, const TaylorSeries& g, double tol);

struct ProbeDeviation {
  std::string probe;
  double deviation = 0.0;  // max coefficient difference / max coefficient
};

struct SubspaceEvidence {
  ReproducibleMultiset Rp;
  ReproducibleMultiset Rq;
  std::vector<ProbeDeviation> probes;
  double max_deviation = 0.0;
  std::size_t M = 0;
  // Equal: every probe agrees within kProbeAgreement. Unequal: some probe
  // disagrees by more than that.
  bool corroborated = false;
};

inline constexpr double kProbeAgreement = 1e-8;

struct SubspaceResult {
  bool equal = false;
  SubspaceEvidence evidence;
};

// Decided by R(p) == R(q); oracle projections of probe kernels are evidence.
SubspaceResult subspace_equal(const SpaceSpec& space, const FactoredPoly& p, const FactoredPoly& q,
                              std::size_t M = 400);

struct ExtremalReport {
  int d = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t M = 0;
  double construction_value = 0.0;  // d! |b_d| / ||B||
  double span_optimum = 0.0;        // exact optimum over the sampled span
  double max_sample = 0.0;
  double margin = 1e-9;
  bool verdict = false;
};

// Samples unit vectors of span{z^j p : 0 <= j <= M - deg p}: half complex
// Gaussian coefficient vectors, half perturbations of the span optimum at
// scales 10^-7..10^-1. Uses std::mt19937_64 with 53-bit uniforms and
// Box-Muller, so runs are reproducible across platforms.
ExtremalReport extremal_check(const SpaceSpec& space, const FactoredPoly& p,
                              const ConstructionResult& result, std::size_t samples,
                              std::uint64_t seed, std::size_t M = 64);

struct ScanInstance {
  cplx a;
  cplx b;
  std::vector<ExtraneousZero> extraneous;
  // Filled when an extraneous zero was found: S_Z vs S_{Z + beta}.
  std::optional<ComparisonReport> comparison;
};

struct ScanReport {
  std::vector<double> moduli;
  std::size_t angles = 0;
  double radius = 0.0;
  double tol = 0.0;
  std::size_t instances = 0;
  std::size_t skipped = 0;  // coincident or too-close pairs
  std::vector<ScanInstance> found;
  std::string statement;
  bool verdict = false;  // no instance found, or every comparison passes
};

// Two-point multisets {a, b} with a = r_a > 0 and b = r_b exp(2 pi i k / angles),
// r_a, r_b in moduli. For every extraneous zero beta of S_Z, checks that
// S_{Z + beta} is a scalar multiple of S_Z at comparison_tol.
ScanReport extraneous_scan(const SpaceSpec& space, const std::vector<double>& moduli,
                           std::size_t angles, double radius = 0.99, double tol = 1e-8,
                           double comparison_tol = 1e-7);

}  // namespace innerkit
