#include "doctest.h"

#include <cmath>
#include <numbers>

#include "innerkit/error.hpp"
#include "innerkit/space.hpp"
#include "oracles.hpp"

using namespace innerkit;

namespace {

const cplx I(0.0, 1.0);

FactoredPoly paper_f() {
  // z^2 (z - i/2) (z^2 - 1)^2
  return FactoredPoly(1.0, {{0.0, 2}, {0.5 * I, 1}, {1.0, 2}, {-1.0, 2}});
}

ReproducibleMultiset ms(int m0, std::vector<Root> pts) { return ReproducibleMultiset(m0, std::move(pts)); }

}  // namespace

TEST_CASE("monomial inner products") {
  CHECK(monomial_inner(SpaceSpec::hardy(), 3, 3) == cplx(1.0));
  CHECK(monomial_inner(SpaceSpec::dirichlet(1.0), 2, 3) == cplx(0.0));
  CHECK(monomial_inner(SpaceSpec::weighted({1.0, 2.0, 5.0}), 2, 3) == cplx(0.0));
  CHECK(monomial_inner(SpaceSpec::dirichlet(1.0), 2, 2).real() == doctest::Approx(3.0));
  CHECK(monomial_inner(SpaceSpec::bergman(), 4, 4).real() == doctest::Approx(0.2));
  CHECK(std::abs(monomial_inner(SpaceSpec::local_dirichlet(1.0), 1, 2) - 1.0) < 1e-15);
}

TEST_CASE("local Dirichlet Gram matches the area integral") {
  for (cplx zeta : {cplx(1.0, 0.0), std::polar(1.0, 2.1)}) {
    const SpaceSpec s = SpaceSpec::local_dirichlet(zeta);
    const Eigen::MatrixXcd g = oracle::local_dirichlet_gram(zeta, 9);
    double worst = 0.0;
    for (int m = 0; m < 9; ++m) {
      for (int n = 0; n < 9; ++n) worst = std::max(worst, std::abs(g(m, n) - monomial_inner(s, m, n)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("weight tables extend by their last entry") {
  const SpaceSpec s = SpaceSpec::weighted({1.0, 0.5, 0.25});
  CHECK(s.weight(2) == 0.25);
  CHECK(s.weight(50) == 0.25);
  CHECK(reproducible_order(s, 1.0) == ReproducibleOrder::none());
  CHECK_THROWS_AS(SpaceSpec::weighted({1.0, -1.0}), Error);
  CHECK_THROWS_AS(SpaceSpec::weighted({}), Error);
}

TEST_CASE("weight ratio suprema bound every later ratio") {
  for (double alpha : {-3.0, -1.0, 0.5, 4.0}) {
    const SpaceSpec s = SpaceSpec::dirichlet(alpha);
    for (std::size_t n : {0u, 3u, 40u}) {
      double down = 0.0, up = 0.0;
      for (std::size_t m = n; m < n + 2000; ++m) {
        down = std::max(down, s.weight(m) / s.weight(m + 1));
        up = std::max(up, s.weight(m + 1) / s.weight(m));
      }
      CHECK(down <= s.weight_ratio_down_sup(n) * (1 + 1e-14));
      CHECK(up <= s.weight_ratio_up_sup(n) * (1 + 1e-14));
    }
  }
  CHECK(SpaceSpec::dirichlet(2.0).weight_drift_probe() < 3e-3);
}

TEST_CASE("shift norm bounds hold on monomials") {
  for (double alpha : {-2.0, 0.0, 2.5}) {
    const SpaceSpec s = SpaceSpec::dirichlet(alpha);
    for (std::size_t k : {1u, 4u}) {
      double worst = 0.0;
      for (std::size_t n = 0; n < 500; ++n) worst = std::max(worst, std::sqrt(s.weight(n + k) / s.weight(n)));
      CHECK(worst <= s.shift_power_norm_bound(k) * (1 + 1e-14));
    }
  }
}

TEST_CASE("reproducible orders") {
  CHECK(reproducible_order(SpaceSpec::hardy(), 0.3) == ReproducibleOrder::infinite());
  CHECK(reproducible_order(SpaceSpec::dirichlet(4.0), 1.0) == ReproducibleOrder::finite(1));
  CHECK(reproducible_order(SpaceSpec::hardy(), 1.0) == ReproducibleOrder::none());
  CHECK(reproducible_order(SpaceSpec::hardy(), 2.0) == ReproducibleOrder::none());
  CHECK(reproducible_order(SpaceSpec::local_dirichlet(1.0), -1.0) == ReproducibleOrder::none());
  CHECK(reproducible_order(SpaceSpec::local_dirichlet(1.0), 1.0) == ReproducibleOrder::finite(0));
  CHECK(reproducible_order(SpaceSpec::local_dirichlet(1.0), 0.5 * I) == ReproducibleOrder::infinite());

  // alpha > 2r + 1 decides the boundary order; equality is excluded.
  CHECK(reproducible_order(SpaceSpec::dirichlet(1.0), I) == ReproducibleOrder::none());
  CHECK(reproducible_order(SpaceSpec::dirichlet(3.0), I) == ReproducibleOrder::finite(0));
  CHECK(reproducible_order(SpaceSpec::dirichlet(3.0001), I) == ReproducibleOrder::finite(1));
  CHECK(reproducible_order(SpaceSpec::dirichlet(5.0), I) == ReproducibleOrder::finite(1));
  CHECK(ReproducibleOrder::finite(1).cap() == 2);
  CHECK(ReproducibleOrder::none().cap() == 0);
}

TEST_CASE("custom spaces need an explicit reproducibility table") {
  std::vector<std::vector<cplx>> g(4, std::vector<cplx>(4, 0.0));
  for (int k = 0; k < 4; ++k) g[k][k] = 1.0 + k;
  const SpaceSpec s = SpaceSpec::custom_table(g, {{0.5, -1}, {1.0, 0}});
  CHECK(reproducible_order(s, 0.5) == ReproducibleOrder::infinite());
  CHECK(reproducible_order(s, 1.0) == ReproducibleOrder::finite(0));
  try {
    reproducible_order(s, 0.25);
    FAIL("expected MissingReproducibility");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingReproducibility);
  }
  try {
    monomial_inner(s, 7, 1);
    FAIL("expected Evaluation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Evaluation);
  }
  g[0][1] = 0.3;  // not Hermitian
  CHECK_THROWS_AS(SpaceSpec::custom_table(g, {}), Error);
}

TEST_CASE("reproducible multisets of the worked example") {
  const FactoredPoly f = paper_f();
  const auto low = ms(2, {{0.5 * I, 1}});
  const auto mid = ms(2, {{0.5 * I, 1}, {-1.0, 1}, {1.0, 1}});
  const auto high = ms(2, {{0.5 * I, 1}, {-1.0, 2}, {1.0, 2}});
  for (double a : {-1.0, 0.0, 1.0}) CHECK(reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(low));
  for (double a : {1.5, 2.0, 3.0}) CHECK(reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(mid));
  for (double a : {3.5, 4.0, 5.0}) CHECK(reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(high));
  CHECK(reproducible_multiset(SpaceSpec::dirichlet(6.0), f).equals(high));
  CHECK(reproducible_multiset(SpaceSpec::local_dirichlet(1.0), f).equals(ms(2, {{0.5 * I, 1}, {1.0, 1}})));

  CHECK(reproducible_multiset(SpaceSpec::hardy(), FactoredPoly::monomial(3)).equals(ms(3, {})));
  CHECK(reproducible_multiset(SpaceSpec::hardy(), FactoredPoly(1.0, {{0.0, 1}, {2.0, 1}})).equals(ms(1, {})));
  CHECK_FALSE(low.equals(mid));
}

TEST_CASE("multiset equality ignores order") {
  const auto a = ms(1, {{0.3, 2}, {-0.2 * I, 1}});
  const auto b = ms(1, {{-0.2 * I, 1}, {0.3, 2}});
  CHECK(a.equals(b));
  CHECK_FALSE(a.equals(ms(1, {{0.3, 1}, {-0.2 * I, 1}})));
  CHECK(a.size() == 4);
  CHECK(a.flatten().size() == 4);
}

TEST_CASE("multiset validation") {
  const SpaceSpec h2 = SpaceSpec::hardy();
  CHECK_NOTHROW(ms(1, {{0.5, 2}}).validate(h2));
  auto kind_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Evaluation;
  };
  CHECK(kind_of([&] { ms(0, {{1.0, 1}}).validate(h2); }) == ErrorKind::InadmissibleMultiset);
  CHECK(kind_of([&] { ms(0, {{1.0, 3}}).validate(SpaceSpec::dirichlet(4.0)); }) == ErrorKind::InadmissibleMultiset);
  CHECK(kind_of([&] { ms(0, {{0.5, 1}, {0.5 + 1e-8, 1}}).validate(h2); }) == ErrorKind::InadmissibleMultiset);
  CHECK_NOTHROW(ms(0, {{1.0, 2}}).validate(SpaceSpec::dirichlet(4.0)));
}

TEST_CASE("factored polynomials") {
  const FactoredPoly p(2.0, {{1.0, 2}, {-0.5, 1}});
  const auto c = p.coefficients();
  REQUIRE(c.size() == 4);
  // 2 (z - 1)^2 (z + 1/2) = 2z^3 - 3z^2 + 1
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  CHECK(std::abs(c[1]) < 1e-15);
  CHECK(std::abs(c[2] + 3.0) < 1e-15);
  CHECK(std::abs(c[3] - 2.0) < 1e-15);
  CHECK(p.degree() == 3);
  CHECK(p.ord0() == 0);
  CHECK(FactoredPoly::monomial(4).ord0() == 4);
  CHECK(std::abs(p(0.3) - (2.0 * 0.027 - 3.0 * 0.09 + 1.0)) < 1e-15);
}
