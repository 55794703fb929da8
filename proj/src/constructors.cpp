#include "innerkit/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SVD>

#include "innerkit/error.hpp"
#include "innerkit/numeric.hpp"
#include "innerkit/poly.hpp"
#include "innerkit/projection.hpp"

namespace innerkit {

namespace {

constexpr std::size_t kMaxAutoDegree = std::size_t{1} << 16;
// Kernel Gram matrices whose diagonally scaled Cholesky pivots fall below this
// are treated as singular.
constexpr double kGramPivotFloor = 1e-13;

using lcplx = std::complex<long double>;
using MatrixXlc = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXlc = Eigen::Matrix<lcplx, Eigen::Dynamic, 1>;

struct PairingTable {
  MatrixXlc values;  // values(i, j) = <x_i, x_j>, in long double
  double max_err = 0.0;
};

PairingTable pair_all(const SpaceSpec& space, const std::vector<KernelTerm>& x,
                      const TruncationPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(x.size());
  PairingTable t{MatrixXlc(n, n), 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const CertifiedExtended c = kernel_pairing_extended(space, x[static_cast<std::size_t>(i)],
                                                          x[static_cast<std::size_t>(j)], policy);
      t.values(i, j) = c.value;
      t.values(j, i) = std::conj(c.value);
      if (i == j) t.values(i, i) = lcplx(c.value.real(), 0.0L);
      t.max_err = std::max(t.max_err, c.err);
    }
  }
  return t;
}

cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Smallest Cholesky pivot of D^{-1/2} G D^{-1/2}, with G rounded to double;
// 0 when factorization fails.
double scaled_pivot_ratio(const MatrixXlc& gl) {
  if (gl.rows() == 0) return 1.0;
  const Eigen::MatrixXcd g = gl.unaryExpr([](const lcplx& z) { return narrow(z); });
  Eigen::VectorXd d = g.diagonal().real().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXcd s = d.asDiagonal() * g * d.asDiagonal();
  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  const Eigen::MatrixXcd l = llt.matrixL();
  double best = 1.0;
  for (Eigen::Index k = 0; k < l.rows(); ++k) best = std::min(best, std::norm(l(k, k)));
  return best;
}

std::size_t choose_degree(const SpaceSpec& space, const KernelCombo& combo, std::size_t m0,
                          const TruncationPolicy& policy) {
  const std::size_t cap = std::min(policy.max_terms, kMaxAutoDegree);
  std::size_t n = std::max<std::size_t>(64, m0 + 1);
  while (n < cap && combo_tail_norm(space, combo, n) > policy.target_tolerance) n *= 2;
  return std::min(n, cap);
}

// Bound on the H^2 norm of sum_{n>N} b_n z^n for b = num / den, via Cauchy
// estimates on |z| = R between 1 and the nearest pole. H^2 dominates every
// D_alpha norm with alpha <= 0.
double rational_tail_h2(const std::vector<cplx>& num, const FactoredPoly& den, std::size_t N) {
  double rho = std::numeric_limits<double>::infinity();
  for (const Root& r : den.roots()) rho = std::min(rho, std::abs(r.point));
  if (!std::isfinite(rho)) {
    double s = 0.0;
    for (std::size_t n = N + 1; n < num.size(); ++n) s += std::norm(num[n] / den.leading());
    return std::sqrt(s);
  }
  if (!(rho > 1.0)) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int step = 1; step < 20; ++step) {
    const double R = 1.0 + (rho - 1.0) * step / 20.0;
    double top = 0.0;
    for (std::size_t k = num.size(); k-- > 0;) top = top * R + std::abs(num[k]);
    double bottom = std::abs(den.leading());
    for (const Root& r : den.roots()) bottom *= std::pow(std::abs(r.point) - R, r.mult);
    const double mr = top / bottom;
    const double r2 = 1.0 / (R * R);
    const double tail_sq = mr * mr * std::pow(r2, static_cast<double>(N + 1)) / (1.0 - r2);
    best = std::min(best, std::sqrt(tail_sq));
  }
  return best;
}

}  // namespace

const char* to_string(Route r) {
  switch (r) {
    case Route::determinant: return "determinant";
    case Route::solve: return "solve";
    case Route::oracle: return "oracle";
    case Route::closed_form: return "closed_form";
    case Route::residue: return "residue";
    case Route::automatic: return "auto";
  }
  return "auto";
}

Route route_from_string(const std::string& s) {
  if (s == "determinant") return Route::determinant;
  if (s == "solve") return Route::solve;
  if (s == "oracle") return Route::oracle;
  if (s == "closed_form") return Route::closed_form;
  if (s == "residue") return Route::residue;
  if (s == "auto" || s == "automatic") return Route::automatic;
  throw Error(ErrorKind::Config, "unknown route '" + s + "'");
}

std::vector<KernelTerm> multiset_kernels(const ReproducibleMultiset& Z) {
  std::vector<KernelTerm> out;
  for (int l = Z.origin_multiplicity() - 1; l >= 0; --l) out.push_back({cplx(0.0, 0.0), l});
  for (const Root& r : Z.entries()) {
    for (int l = r.mult - 1; l >= 0; --l) out.push_back({r.point, l});
  }
  return out;
}

TaylorSeries canonical_normalize(const TaylorSeries& t, std::size_t m0) {
  double big = 0.0;
  for (const cplx& c : t.coeffs) big = std::max(big, std::abs(c));
  const cplx lead = t.coefficient(m0);
  if (!(big > 0.0) || !(std::abs(lead) > 1e-14 * big)) {
    std::ostringstream os;
    os << "coefficient of z^" << m0 << " vanishes; cannot normalize";
    throw Error(ErrorKind::ZeroFunction, os.str());
  }
  return t.scaled(1.0 / lead);
}

// ---------------------------------------------------------------------------
// Gram determinant route

namespace {

// Cofactor expansion of D(x_0; x_1..x_n) along the vector column, from the
// pairing table of x_0..x_n. Row i of the bordered matrix holds
// <x_i, x_1> ... <x_i, x_n>; coefficient i is (-1)^i det(minor without row i).
std::vector<cplx> cofactor_coefficients(const MatrixXlc& table) {
  const Eigen::Index n = table.rows() - 1;
  const MatrixXlc bordered = table.rightCols(n);
  std::vector<cplx> coef(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i <= n; ++i) {
    MatrixXlc minor(n, n);
    Eigen::Index row = 0;
    for (Eigen::Index r = 0; r <= n; ++r) {
      if (r == i) continue;
      minor.row(row++) = bordered.row(r);
    }
    const lcplx det = n == 0 ? lcplx(1.0L, 0.0L) : minor.partialPivLu().determinant();
    coef[static_cast<std::size_t>(i)] = narrow((i % 2 == 0 ? 1.0L : -1.0L) * det);
  }
  return coef;
}

}  // namespace

std::vector<cplx> gram_determinant_coefficients(const SpaceSpec& space, const KernelTerm& u,
                                                const std::vector<KernelTerm>& v,
                                                const TruncationPolicy& policy) {
  std::vector<KernelTerm> x{u};
  x.insert(x.end(), v.begin(), v.end());
  return cofactor_coefficients(pair_all(space, x, policy).values);
}

ConstructionResult shapiro_shields(const SpaceSpec& space, const ReproducibleMultiset& Z, Route route,
                                   const TruncationPolicy& policy, std::size_t taylor_degree) {
  policy.validate();
  if (!space.is_diagonal()) {
    throw Error(ErrorKind::Unsupported,
                "kernel constructions need a diagonal space; use the oracle route for " +
                    space.describe());
  }
  Z.validate(space);
  const auto m0 = static_cast<std::size_t>(Z.origin_multiplicity());
  const KernelTerm u{cplx(0.0, 0.0), Z.origin_multiplicity()};
  const std::vector<KernelTerm> v = multiset_kernels(Z);

  if (route == Route::automatic) route = v.size() <= 6 ? Route::determinant : Route::solve;
  if (route != Route::determinant && route != Route::solve) {
    throw Error(ErrorKind::Config, std::string("shapiro_shields does not build route ") + to_string(route));
  }

  std::vector<KernelTerm> all{u};
  all.insert(all.end(), v.begin(), v.end());
  const PairingTable table = pair_all(space, all, policy);
  const auto n = static_cast<Eigen::Index>(v.size());
  const double pivot = scaled_pivot_ratio(table.values.bottomRightCorner(n, n));
  if (!(pivot > kGramPivotFloor)) {
    std::ostringstream os;
    os << "kernel Gram matrix is numerically singular (scaled pivot " << pivot << ")";
    throw Error(ErrorKind::SingularGram, os.str());
  }

  std::vector<cplx> coef;
  if (route == Route::determinant) {
    coef = cofactor_coefficients(table.values);
  } else {
    // phi = u - sum c_i v_i with <phi, v_j> = 0:  sum_i c_i <v_i, v_j> = <u, v_j>.
    MatrixXlc a(n, n);
    VectorXlc rhs(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      rhs(j) = table.values(0, j + 1);
      for (Eigen::Index i = 0; i < n; ++i) a(j, i) = table.values(i + 1, j + 1);
    }
    Eigen::LLT<MatrixXlc> llt(a);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::SingularGram, "kernel Gram matrix failed Cholesky factorization");
    }
    const VectorXlc c = llt.solve(rhs);
    coef.push_back(1.0);
    for (Eigen::Index i = 0; i < n; ++i) coef.push_back(-narrow(c(i)));
  }

  std::vector<WeightedTerm> terms;
  for (std::size_t i = 0; i < all.size(); ++i) terms.push_back({all[i], coef[i]});
  const KernelCombo raw(space, std::move(terms));
  const cplx lead = raw.taylor_coefficient(m0);
  if (!(std::abs(lead) > 0.0)) {
    throw Error(ErrorKind::ZeroFunction, "constructed function vanishes to order above m0");
  }

  ConstructionResult out{raw.scaled(1.0 / lead), {}, 1.0 / lead, route, table.max_err, pivot};
  const std::size_t N =
      taylor_degree == kAutoDegree ? choose_degree(space, *out.combo, m0, policy) : taylor_degree;
  out.taylor = combo_taylor(space, *out.combo, N);
  out.taylor.coeffs[m0] = 1.0;
  return out;
}

// ---------------------------------------------------------------------------
// Finite-dimensional oracle

namespace {

void check_oracle_degree(const FactoredPoly& p, std::size_t M) {
  if (M < static_cast<std::size_t>(p.degree()) + 10) {
    std::ostringstream os;
    os << "oracle degree M = " << M << " must be at least deg p + 10 = " << p.degree() + 10;
    throw Error(ErrorKind::Config, os.str());
  }
}

}  // namespace

TaylorSeries project_kernel_raw(const SpaceSpec& space, const FactoredPoly& p, int d, std::size_t M) {
  return project_probe(space, p, cplx(0.0, 0.0), d, M);
}

TaylorSeries project_probe(const SpaceSpec& space, const FactoredPoly& p, cplx beta, int l,
                           std::size_t M) {
  check_oracle_degree(p, M);
  if (l < 0) throw Error(ErrorKind::Config, "derivative order must be nonnegative");
  const ShiftSpanProjector proj(space, p.coefficients(), M);
  return TaylorSeries{proj.project_functional(derivative_functional(beta, l, M)), 0.0};
}

TaylorSeries project_kernel_fd(const SpaceSpec& space, const FactoredPoly& p, int d, std::size_t M) {
  return canonical_normalize(project_kernel_raw(space, p, d, M), static_cast<std::size_t>(d));
}

TaylorSeries inner_projection_of(const SpaceSpec& space, const FactoredPoly& f, std::size_t M) {
  check_oracle_degree(f, M);
  const std::vector<cplx> c = f.coefficients();
  const ShiftSpanProjector proj(space, c, M, /*j_first=*/1);
  std::vector<cplx> j = proj.project(c);
  for (std::size_t k = 0; k < j.size(); ++k) j[k] = (k < c.size() ? c[k] : cplx(0.0, 0.0)) - j[k];
  return TaylorSeries{std::move(j), 0.0};
}

// ---------------------------------------------------------------------------
// Closed forms

RationalResult classical_blaschke(const std::vector<Root>& zeros, std::size_t N) {
  std::vector<Root> den_roots;
  cplx den_lead{1.0, 0.0};
  std::vector<cplx> den{1.0};
  std::size_t m0 = 0;
  for (const Root& z : zeros) {
    if (!(std::abs(z.point) < 1.0)) throw Error(ErrorKind::Config, "Blaschke zeros must lie in the open disk");
    if (z.point == cplx(0.0, 0.0)) {
      m0 += static_cast<std::size_t>(z.mult);
      continue;
    }
    const cplx cb = std::conj(z.point);
    // 1 - conj(b) z = -conj(b) (z - 1/conj(b))
    den_roots.push_back(Root{1.0 / cb, z.mult});
    den_lead *= std::pow(-cb, z.mult);
    for (int k = 0; k < z.mult; ++k) den = poly::multiply(den, {1.0, -cb});
  }
  const FactoredPoly numerator(1.0, zeros);
  const std::vector<cplx> num = numerator.coefficients();
  std::vector<cplx> raw = poly::series_divide(num, den, std::max(N, m0));
  const cplx s = 1.0 / raw[m0];

  RationalResult out{RationalRep{numerator, FactoredPoly(den_lead, den_roots)}, {}, s};
  std::vector<cplx> scaled_num = num;
  for (auto& c : scaled_num) c *= s;
  for (auto& c : raw) c *= s;
  raw[m0] = 1.0;
  out.taylor = TaylorSeries{std::move(raw), rational_tail_h2(scaled_num, FactoredPoly(den_lead, den_roots),
                                                              std::max(N, m0))};
  return out;
}

RationalResult bergman_rational(const std::vector<cplx>& zeros, std::size_t N) {
  const std::size_t s = zeros.size();
  for (std::size_t i = 0; i < s; ++i) {
    if (!(std::abs(zeros[i]) < 1.0) || std::abs(zeros[i]) <= kPointTolerance) {
      throw Error(ErrorKind::Config, "residue construction needs nonzero points in the open disk");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(zeros[i] - zeros[j]) < 1e-6) throw Error(ErrorKind::Config, "residue construction needs distinct points");
    }
  }

  // Residue of q g_j / (conj(l_j)^2 (z - p_j)^2) at p_j = 1/conj(l_j) is
  // proportional to (q g_j)'(p_j) = g_j(p_j) [q'(p_j) + q(p_j) L_j], where
  // L_j is the logarithmic derivative of g_j = prod (z - l_i) / prod_{i != j} (1 - conj(l_i) z)^2.
  std::vector<cplx> q{1.0};
  if (s > 0) {
    const auto rows = static_cast<Eigen::Index>(s);
    Eigen::MatrixXcd a(rows, rows + 1);
    for (std::size_t j = 0; j < s; ++j) {
      const cplx p = 1.0 / std::conj(zeros[j]);
      cplx logd{0.0, 0.0};
      for (std::size_t i = 0; i < s; ++i) {
        logd += 1.0 / (p - zeros[i]);
        if (i != j) logd += 2.0 * std::conj(zeros[i]) / (1.0 - std::conj(zeros[i]) * p);
      }
      for (std::size_t k = 0; k <= s; ++k) {
        const cplx pk = std::pow(p, static_cast<int>(k));
        const cplx dpk = k == 0 ? cplx(0.0, 0.0) : static_cast<double>(k) * std::pow(p, static_cast<int>(k) - 1);
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = dpk + logd * pk;
      }
      a.row(static_cast<Eigen::Index>(j)) /= a.row(static_cast<Eigen::Index>(j)).norm();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (!(sv(rows - 1) > 1e-10 * sv(0))) {
      throw Error(ErrorKind::DegenerateResidueSystem, "residue conditions are rank deficient");
    }
    const Eigen::VectorXcd nullv = svd.matrixV().col(rows);
    q.assign(nullv.data(), nullv.data() + nullv.size());
  }

  std::vector<cplx> num = q;
  std::vector<cplx> den{1.0};
  std::vector<Root> den_roots;
  cplx den_lead{1.0, 0.0};
  for (const cplx& l : zeros) {
    num = poly::multiply(num, {-l, 1.0});
    const cplx cl = std::conj(l);
    den = poly::multiply(poly::multiply(den, {1.0, -cl}), {1.0, -cl});
    den_roots.push_back(Root{1.0 / cl, 2});
    den_lead *= cl * cl;
  }
  std::vector<cplx> raw = poly::series_divide(num, den, N);
  const cplx scale = 1.0 / raw[0];
  for (auto& c : raw) c *= scale;
  for (auto& c : num) c *= scale;
  raw[0] = 1.0;

  const std::vector<cplx> qt = poly::trim(q, 1e-13);
  std::vector<Root> num_roots;
  for (const cplx& r : poly::companion_roots(qt)) num_roots.push_back(Root{r, 1});
  for (const cplx& l : zeros) num_roots.push_back(Root{l, 1});
  const cplx num_lead = qt.back() * scale;
  const FactoredPoly denominator(den_lead, den_roots);

  return RationalResult{RationalRep{FactoredPoly(num_lead, num_roots), denominator},
                        TaylorSeries{std::move(raw), rational_tail_h2(num, denominator, N)}, 1.0};
}

cplx residue_at(const RationalRep& r, cplx pole) {
  int k = 0;
  for (const Root& root : r.denominator.roots()) {
    if (std::abs(root.point - pole) <= 1e-9 * std::max(1.0, std::abs(pole))) {
      k = root.mult;
      pole = root.point;
    }
  }
  if (k == 0) return {0.0, 0.0};
  const auto order = static_cast<std::size_t>(k - 1);
  // Taylor coefficients at the pole of h(z) = (z - pole)^k r(z), up to t^(k-1).
  const std::vector<cplx> num = r.numerator.coefficients();
  std::vector<cplx> h(order + 1);
  for (std::size_t j = 0; j <= order; ++j) {
    h[j] = poly::eval_derivative(num, pole, static_cast<int>(j)) / factorial(j);
  }
  for (const Root& root : r.denominator.roots()) {
    if (root.point == pole) continue;
    // (pole - r + t)^(-m) = sum_j binom(-m, j) (pole - r)^(-m-j) t^j
    const cplx base = pole - root.point;
    std::vector<cplx> f(order + 1);
    double binom = 1.0;
    for (std::size_t j = 0; j <= order; ++j) {
      f[j] = binom * std::pow(base, -root.mult - static_cast<int>(j));
      binom *= (-root.mult - static_cast<double>(j)) / static_cast<double>(j + 1);
    }
    h = poly::multiply(h, f);
    h.resize(order + 1);
  }
  return h[order] / r.denominator.leading();
}

}  // namespace innerkit
