#pragma once

// Hilbert spaces of analytic functions on the unit disk, described through the
// inner products of monomials, together with the reproducibility structure of
// points (which derivative evaluations extend boundedly from polynomials).

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace innerkit {

using cplx = std::complex<double>;

// Two complex points closer than this are treated as the same point when
// looking up tables or comparing multisets.
inline constexpr double kPointTolerance = 1e-12;

// |beta| within this distance of 1 is treated as lying on the unit circle.
inline constexpr double kCircleTolerance = 1e-12;

struct DirichletType {
  double alpha = 0.0;  // w_k = (k+1)^alpha
};

// Explicit weight table w_0..w_{L-1}; indices past the table reuse w_{L-1}.
struct WeightedHardy {
  std::vector<double> weights;
};

struct LocalDirichlet {
  cplx zeta{1.0, 0.0};  // unimodular
};

class ReproducibleOrder;

struct ReproducibilityEntry {
  cplx point;
  // -1 encodes "infinite"; -2 encodes "not reproducible"; r >= 0 finite.
  int order = -2;
};

struct CustomGram {
  std::function<cplx(std::size_t, std::size_t)> gram;
  std::vector<ReproducibilityEntry> reproducibility;
  // Dense copy of the rule when it came from a table (used for serialization).
  std::vector<std::vector<cplx>> table;
};

class SpaceSpec {
 public:
  using Variant = std::variant<DirichletType, WeightedHardy, LocalDirichlet, CustomGram>;

  static SpaceSpec dirichlet(double alpha);
  static SpaceSpec hardy() { return dirichlet(0.0); }
  static SpaceSpec bergman() { return dirichlet(-1.0); }
  static SpaceSpec weighted(std::vector<double> weights);
  static SpaceSpec local_dirichlet(cplx zeta);
  // Validates Hermitian symmetry and positivity of leading principal minors
  // up to probe_size.
  static SpaceSpec custom(std::function<cplx(std::size_t, std::size_t)> gram,
                          std::vector<ReproducibilityEntry> reproducibility,
                          std::size_t probe_size = 24);
  static SpaceSpec custom_table(std::vector<std::vector<cplx>> table,
                                std::vector<ReproducibilityEntry> reproducibility);

  const Variant& variant() const { return variant_; }
  double domain_radius() const { return 1.0; }

  // Monomials are mutually orthogonal (weighted Hardy family).
  bool is_diagonal() const;

  // w_n for diagonal spaces. Throws Unsupported otherwise.
  double weight(std::size_t n) const;

  // sup_{m >= n} w_m / w_{m+1} and sup_{m >= n} w_{m+1} / w_m (diagonal only).
  double weight_ratio_down_sup(std::size_t n) const;
  double weight_ratio_up_sup(std::size_t n) const;

  // Upper bound on the operator norm of S^k (multiplication by z^k);
  // +inf when none is known.
  double shift_power_norm_bound(std::size_t k) const;

  // max |w_k / w_{k+1} - 1| over k in [900, 1000). The weight rule is assumed
  // to satisfy w_k / w_{k+1} -> 1; this is a cheap probe of that assumption.
  double weight_drift_probe() const;

  std::string describe() const;

 private:
  explicit SpaceSpec(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
  // Suffix maxima of the weight ratios for WeightedHardy tables.
  std::shared_ptr<const std::vector<double>> down_suffix_;
  std::shared_ptr<const std::vector<double>> up_suffix_;
};

// <z^m, z^n> in the space.
cplx monomial_inner(const SpaceSpec& space, std::size_t m, std::size_t n);

struct Root {
  cplx point;
  int mult = 1;
};

// leading * prod (z - point)^mult
class FactoredPoly {
 public:
  FactoredPoly() = default;
  FactoredPoly(cplx leading, std::vector<Root> roots);

  static FactoredPoly monomial(int degree, cplx leading = 1.0);

  cplx leading() const { return leading_; }
  const std::vector<Root>& roots() const { return roots_; }
  int degree() const;
  int ord0() const;

  // Ascending coefficients a_0..a_degree.
  std::vector<cplx> coefficients() const;
  cplx operator()(cplx z) const;

 private:
  cplx leading_{1.0, 0.0};
  std::vector<Root> roots_;
};

class ReproducibleOrder {
 public:
  enum class Tag { Infinite, Finite, None };

  static ReproducibleOrder infinite() { return ReproducibleOrder(Tag::Infinite, 0); }
  static ReproducibleOrder finite(int r) { return ReproducibleOrder(Tag::Finite, r); }
  static ReproducibleOrder none() { return ReproducibleOrder(Tag::None, 0); }

  Tag tag() const { return tag_; }
  int r() const { return r_; }

  // Whether f -> f^(m)(beta) is bounded.
  bool admits(int m) const {
    return tag_ == Tag::Infinite || (tag_ == Tag::Finite && m >= 0 && m <= r_);
  }

  // Largest zero multiplicity retained in a reproducible multiset:
  // number of bounded derivative functionals, INT_MAX when unbounded.
  int cap() const;

  bool operator==(const ReproducibleOrder&) const = default;
  std::string describe() const;

 private:
  ReproducibleOrder(Tag t, int r) : tag_(t), r_(r) {}
  Tag tag_;
  int r_;
};

ReproducibleOrder reproducible_order(const SpaceSpec& space, cplx beta);

class ReproducibleMultiset {
 public:
  ReproducibleMultiset() = default;
  ReproducibleMultiset(int origin_multiplicity, std::vector<Root> entries);

  int origin_multiplicity() const { return origin_multiplicity_; }
  const std::vector<Root>& entries() const { return entries_; }

  // Total count, origin included.
  int size() const;

  // Throws InadmissibleMultiset when a multiplicity exceeds the point's cap,
  // a point is not reproducible, or two points are closer than min_separation.
  void validate(const SpaceSpec& space, double min_separation = 1e-6) const;

  // prod_{beta in Z} (z - beta)
  FactoredPoly polynomial() const;

  // Multiset equality with points compared to tolerance tol.
  bool equals(const ReproducibleMultiset& other, double tol = 1e-9) const;

  // Flattened list with repetitions, origin first; entries in stored order.
  std::vector<cplx> flatten() const;

 private:
  int origin_multiplicity_ = 0;
  std::vector<Root> entries_;
};

ReproducibleMultiset reproducible_multiset(const SpaceSpec& space, const FactoredPoly& p);

}  // namespace innerkit
