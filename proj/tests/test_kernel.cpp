#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "innerkit/constructors.hpp"
#include "innerkit/error.hpp"
#include "innerkit/kernel.hpp"
#include "oracles.hpp"

using namespace innerkit;

namespace {

const cplx I(0.0, 1.0);

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Evaluation;
}

}  // namespace

TEST_CASE("kernel pairings against closed forms") {
  const Certified h = kernel_pairing(SpaceSpec::hardy(), {0.5, 0}, {0.5, 0});
  CHECK(close(h.value, 4.0 / 3.0, 1e-12));
  CHECK(h.err <= 1e-12);

  const Certified a = kernel_pairing(SpaceSpec::bergman(), {0.5, 0}, {0.5, 0});
  CHECK(close(a.value, 16.0 / 9.0, 1e-12));

  const Certified d = kernel_pairing(SpaceSpec::dirichlet(4.0), {1.0, 0}, {1.0, 0});
  CHECK(close(d.value, std::pow(std::numbers::pi, 4) / 90.0, d.err));
  CHECK(d.err <= 1e-12 * std::abs(d.value));

  for (double alpha : {0.0, -1.0, 2.0}) {
    CHECK(kernel_pairing(SpaceSpec::dirichlet(alpha), {0.0, 1}, {0.0, 0}).value == cplx(0.0));
  }

  const cplx p(0.3, -0.6), q(-0.7, 0.2);
  CHECK(close(kernel_pairing(SpaceSpec::hardy(), {p, 0}, {q, 0}).value, oracle::szego(p, q), 1e-13));
  CHECK(close(kernel_pairing(SpaceSpec::bergman(), {p, 0}, {q, 0}).value, oracle::bergman(p, q), 1e-13));
}

TEST_CASE("derivative pairings against long double summation") {
  const cplx p(0.45, 0.3), q(-0.2, 0.55);
  for (double alpha : {-2.0, -1.0, 0.0, 1.0, 2.5}) {
    for (int ma : {0, 1, 2}) {
      for (int mb : {0, 1, 3}) {
        const cplx want = oracle::dirichlet_pairing(alpha, p, ma, q, mb);
        const Certified got = kernel_pairing(SpaceSpec::dirichlet(alpha), {p, ma}, {q, mb});
        CHECK(std::abs(got.value - want) <= 1e-11 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("boundary pairings use the p-series tail") {
  const SpaceSpec d5 = SpaceSpec::dirichlet(5.0);
  const Certified c = kernel_pairing(d5, {1.0, 1}, {I, 0});
  const cplx want = oracle::dirichlet_pairing(5.0, 1.0, 1, I, 0, 2000000);
  CHECK(std::abs(c.value - want) <= 1e-10);
  CHECK(c.err <= 1e-12);
  CHECK(kind_of([&] { kernel_pairing(d5, {1.0, 2}, {1.0, 2}); }) == ErrorKind::DivergentSeries);
  CHECK(kind_of([&] { kernel_pairing(SpaceSpec::hardy(), {1.0, 0}, {1.0, 0}); }) == ErrorKind::DivergentSeries);
}

TEST_CASE("pairing conjugate symmetry") {
  const SpaceSpec s = SpaceSpec::dirichlet(0.7);
  const KernelTerm a{cplx(0.1, 0.8), 1}, b{cplx(-0.6, -0.3), 2};
  const Certified ab = kernel_pairing(s, a, b), ba = kernel_pairing(s, b, a);
  CHECK(std::abs(ab.value - std::conj(ba.value)) <= ab.err + ba.err + 1e-14);
}

TEST_CASE("truncation policy limits") {
  TruncationPolicy tight;
  tight.max_terms = 16;
  tight.target_tolerance = 1e-14;
  CHECK(kind_of([&] { kernel_pairing(SpaceSpec::hardy(), {0.99, 0}, {0.99, 0}, tight); }) ==
        ErrorKind::ToleranceUnreachable);
  TruncationPolicy bad;
  bad.max_terms = 4;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.target_tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);

  TruncationPolicy none;
  none.bound_kind = BoundKind::none;
  none.max_terms = 2000;
  const Certified c = kernel_pairing(SpaceSpec::hardy(), {0.5, 0}, {0.5, 0}, none);
  CHECK(std::isinf(c.err));
  CHECK(close(c.value, 4.0 / 3.0, 1e-14));
}

TEST_CASE("kernel Taylor expansions") {
  const TaylorSeries s = kernel_taylor(SpaceSpec::hardy(), {0.5, 0}, 3);
  REQUIRE(s.coeffs.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(close(s.coeffs[n], std::pow(0.5, n), 1e-16));
  CHECK(s.tail_bound > 0.0);
  // ||tail|| = sqrt(sum_{n>3} 4^-n) = sqrt(4^-4 / (1 - 1/4))
  CHECK(s.tail_bound >= std::sqrt(std::pow(0.25, 4) / 0.75) * (1 - 1e-12));

  const TaylorSeries t = kernel_taylor(SpaceSpec::hardy(), {0.0, 2}, 6);
  for (int n = 0; n <= 6; ++n) CHECK(t.coeffs[n] == cplx(n == 2 ? 2.0 : 0.0));
  CHECK(t.tail_bound == 0.0);

  const TaylorSeries u = kernel_taylor(SpaceSpec::dirichlet(1.0), {0.0, 1}, 3);
  CHECK(close(u.coeffs[1], 0.5, 1e-16));

  const TaylorSeries b = kernel_taylor(SpaceSpec::dirichlet(4.0), {1.0, 0}, 10);
  CHECK(std::isfinite(b.tail_bound));
  CHECK(std::isinf(kernel_tail_norm(SpaceSpec::dirichlet(2.0), {1.0, 1}, 10)));
}

TEST_CASE("kernel tail norms bound the discarded coefficients") {
  for (double alpha : {-1.0, 0.0, 2.0}) {
    const SpaceSpec s = SpaceSpec::dirichlet(alpha);
    const KernelTerm t{cplx(0.6, 0.5), 2};
    const std::size_t N = 40;
    const TaylorSeries big = kernel_taylor(s, t, 4000);
    double tail = 0.0;
    for (std::size_t n = N + 1; n <= 4000; ++n) tail += std::norm(big.coeffs[n]) * s.weight(n);
    CHECK(std::sqrt(tail) <= kernel_tail_norm(s, t, N));
  }
}

TEST_CASE("reproducing property on random polynomials") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (double alpha : {-1.0, 0.0, 1.5}) {
    const SpaceSpec s = SpaceSpec::dirichlet(alpha);
    std::vector<cplx> p(21);
    for (auto& c : p) c = cplx(g(rng), g(rng));
    const cplx beta(0.4, -0.35);
    for (int m : {0, 1, 3}) {
      const TaylorSeries k = kernel_taylor(s, {beta, m}, 20);
      cplx pair = 0.0;
      for (int n = 0; n <= 20; ++n) pair += p[n] * std::conj(k.coeffs[n]) * s.weight(n);
      cplx deriv = 0.0;
      for (int n = m; n <= 20; ++n) {
        double f = 1.0;
        for (int j = 0; j < m; ++j) f *= n - j;
        deriv += f * p[n] * std::pow(beta, n - m);
      }
      CHECK(std::abs(pair - deriv) <= 1e-10 * std::max(1.0, std::abs(deriv)));
    }
  }
}

TEST_CASE("combination Taylor series and derivatives") {
  const SpaceSpec h2 = SpaceSpec::hardy();
  const KernelCombo b(h2, {{{0.0, 0}, 1.0}, {{0.5, 0}, -1.0}});
  const TaylorSeries t = combo_taylor(h2, b, 2);
  CHECK(close(t.coeffs[0], 0.0, 1e-16));
  CHECK(close(t.coeffs[1], -0.5, 1e-16));
  CHECK(close(t.coeffs[2], -0.25, 1e-16));
  CHECK(combo_tail_norm(h2, b, 2) == doctest::Approx(kernel_tail_norm(h2, {0.5, 0}, 2)));

  const SpaceSpec d3 = SpaceSpec::dirichlet(3.0);
  const TaylorSeries one = combo_taylor(d3, KernelCombo(d3, {{{0.0, 0}, 1.0}}), 4);
  CHECK(one.coeffs[0] == cplx(1.0));
  for (int n = 1; n <= 4; ++n) CHECK(one.coeffs[n] == cplx(0.0));

  const Certified v = combo_derivative_at(h2, b, 0.5, 0);
  CHECK(close(v.value, -1.0 / 3.0, 1e-12));
  CHECK(combo_derivative_at(d3, KernelCombo(d3, {{{0.0, 0}, 1.0}}), 0.0, 1).value == cplx(0.0));

  const ConstructionResult ss = shapiro_shields(h2, ReproducibleMultiset(0, {{0.5, 1}}));
  REQUIRE(ss.combo.has_value());
  CHECK(std::abs(combo_derivative_at(h2, *ss.combo, 0.5, 0).value) <= 1e-12);

  CHECK(close(b.taylor_coefficient(3), -0.125, 1e-16));
  CHECK(close(b.scaled(2.0 * I).taylor_coefficient(1), -1.0 * I, 1e-16));
}

TEST_CASE("shift inner products") {
  const SpaceSpec h2 = SpaceSpec::hardy();
  TaylorSeries z{{0.0, 1.0}, 0.0};
  for (std::size_t k = 1; k <= 5; ++k) CHECK(shift_inner_product(h2, z, k).value == cplx(0.0));
  TaylorSeries one_plus_z{{1.0, 1.0}, 0.0};
  CHECK(close(shift_inner_product(h2, one_plus_z, 1).value, 1.0, 1e-16));
  CHECK(close(shift_inner_product(SpaceSpec::dirichlet(1.0), one_plus_z, 1).value, 2.0, 1e-16));
  CHECK(close(shift_inner_product(h2, one_plus_z, 0).value, 2.0, 1e-16));

  const ConstructionResult ss = shapiro_shields(h2, ReproducibleMultiset(0, {{0.5, 1}}), Route::automatic, {}, 400);
  const Certified r = shift_inner_product(h2, ss.taylor, 1);
  CHECK(std::abs(r.value) <= 1e-8);

  TaylorSeries unbounded{{1.0}, std::numeric_limits<double>::infinity()};
  CHECK(kind_of([&] { shift_inner_product(h2, unbounded, 1); }) == ErrorKind::UnboundedTail);
}

TEST_CASE("polynomial norms") {
  CHECK(polynomial_norm_squared(SpaceSpec::dirichlet(1.0), {1.0, I, 2.0}) == doctest::Approx(1.0 + 2.0 + 12.0));
  CHECK(polynomial_norm_squared(SpaceSpec::local_dirichlet(1.0), {0.0, 1.0, 1.0}) == doctest::Approx(2.0 + 3.0 + 2.0));
}
