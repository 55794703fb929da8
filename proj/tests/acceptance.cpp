// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "innerkit/constructors.hpp"
#include "innerkit/error.hpp"
#include "innerkit/experiments.hpp"
#include "innerkit/verification.hpp"

using namespace innerkit;

namespace {

const cplx I(0.0, 1.0);

constexpr double kRouteTol = 1e-8;
constexpr std::size_t kRouteDegree = 40;
constexpr std::size_t kOracleM = 400;
constexpr double kInnerTol = 1e-8;
constexpr double kBoundaryInnerTol = 1e-6;
constexpr double kProfileTol = 1e-12;
constexpr double kResidueTol = 1e-10;
constexpr double kZeroTol = 1e-8;
constexpr double kOriginFloor = 1e-6;
constexpr double kExtremalMargin = 1e-9;
constexpr double kScanCompareTol = 1e-7;
constexpr double kInnerPartTol = 1e-8;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Up to four interior points with |beta| <= 0.8, pairwise separation >= 0.15
// (and from the origin), multiplicities <= 2; origin multiplicity 0..2.
ReproducibleMultiset random_multiset(std::mt19937_64& g, bool simple) {
  const int count = 1 + static_cast<int>(uniform(g) * 4);
  std::vector<Root> pts;
  while (static_cast<int>(pts.size()) < count) {
    const cplx b = std::polar(0.15 + 0.65 * std::sqrt(uniform(g)), 2 * std::numbers::pi * uniform(g));
    bool ok = true;
    for (const Root& r : pts) ok = ok && std::abs(r.point - b) >= 0.15;
    if (ok) pts.push_back({b, simple ? 1 : 1 + static_cast<int>(uniform(g) * 2)});
  }
  const int m0 = simple ? 0 : static_cast<int>(uniform(g) * 3);
  return ReproducibleMultiset(m0, pts);
}

double max_diff(const TaylorSeries& a, const TaylorSeries& b, std::size_t upto) {
  double d = 0.0;
  for (std::size_t n = 0; n <= upto; ++n) d = std::max(d, std::abs(a.coefficient(n) - b.coefficient(n)));
  return d;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Constructions of criterion 2, reused by criteria 3 and 6.
struct Built {
  SpaceSpec space;
  ReproducibleMultiset Z;
  ConstructionResult result;
};
std::vector<Built> built;

Outcome paper_example() {
  const std::vector<Root> f_roots{{0.0, 2}, {0.5 * I, 1}, {1.0, 2}, {-1.0, 2}};
  const FactoredPoly f(1.0, f_roots);
  const auto low = ReproducibleMultiset(2, {{0.5 * I, 1}});
  const auto mid = ReproducibleMultiset(2, {{0.5 * I, 1}, {-1.0, 1}, {1.0, 1}});
  const auto high = ReproducibleMultiset(2, {{0.5 * I, 1}, {-1.0, 2}, {1.0, 2}});
  const auto local = ReproducibleMultiset(2, {{0.5 * I, 1}, {1.0, 1}});
  bool ok = true;
  for (double a : {-2.0, -1.0, 0.0, 0.5, 1.0}) ok = ok && reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(low);
  for (double a : {1.01, 2.0, 3.0}) ok = ok && reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(mid);
  for (double a : {3.01, 4.0, 5.0}) ok = ok && reproducible_multiset(SpaceSpec::dirichlet(a), f).equals(high);
  ok = ok && reproducible_multiset(SpaceSpec::local_dirichlet(1.0), f).equals(local);

  const auto out = std::filesystem::temp_directory_path() / "innerkit_acceptance";
  RunOptions opts;
  opts.out_dir = out.string();
  const RunOutcome r = run(parse_config({{"task", "preset"}, {"preset", "paper-Rf-example"}}), opts);
  std::size_t rows = 0;
  for (const auto& b : r.report["result"]["blocks"]) {
    for (const auto& row : b["result"]["rows"]) {
      ok = ok && row["matches_expected"].get<bool>();
      ++rows;
    }
  }
  ok = ok && r.ok && r.report["result"]["blocks"].size() == 4;
  return {ok, "4 preset blocks, " + std::to_string(rows) + " spaces, exact multiset equality"};
}

Outcome route_agreement() {
  std::mt19937_64 g(20240601);
  double worst = 0.0;
  std::size_t n = 0;
  for (double alpha : {0.0, -1.0, 1.0}) {
    const SpaceSpec s = SpaceSpec::dirichlet(alpha);
    for (int k = 0; k < 20; ++k) {
      const ReproducibleMultiset Z = random_multiset(g, false);
      const ConstructionResult det = shapiro_shields(s, Z, Route::determinant, {}, kOracleM);
      const ConstructionResult sol = shapiro_shields(s, Z, Route::solve, {}, kOracleM);
      const TaylorSeries orc = project_kernel_fd(s, Z.polynomial(), Z.origin_multiplicity(), kOracleM);
      worst = std::max({worst, max_diff(det.taylor, sol.taylor, kRouteDegree), max_diff(det.taylor, orc, kRouteDegree),
                        max_diff(sol.taylor, orc, kRouteDegree)});
      built.push_back({s, Z, sol});
      ++n;
    }
  }
  return {worst <= kRouteTol, std::to_string(n) + " multisets, max coefficient gap " + sci(worst)};
}

Outcome innerness() {
  double worst = 0.0;
  bool ok = true;
  for (const Built& b : built) {
    const InnerReport r = inner_report(b.space, b.result.taylor, 20, kInnerTol);
    ok = ok && r.verdict;
    worst = std::max(worst, r.max_relative_residual);
  }
  const SpaceSpec d4 = SpaceSpec::dirichlet(4.0);
  const ConstructionResult c = shapiro_shields(d4, ReproducibleMultiset(0, {{1.0, 1}}));
  const InnerReport rb = inner_report(d4, c.taylor, 20, kBoundaryInnerTol);
  ok = ok && rb.verdict;
  return {ok, "interior max " + sci(worst) + ", D4 {1} " + sci(rb.max_relative_residual)};
}

Outcome classical_match() {
  std::mt19937_64 g(77);
  const SpaceSpec h2 = SpaceSpec::hardy();
  double worst = 0.0, profile = 0.0;
  bool ok = true;
  for (int k = 0; k < 10; ++k) {
    const ReproducibleMultiset Z = random_multiset(g, true);
    const ConstructionResult c = shapiro_shields(h2, Z, Route::automatic, {}, 400);
    const RationalResult b = classical_blaschke(Z.entries(), 400);
    const ComparisonReport cmp = scalar_multiple_check(c.taylor, b.taylor, kRouteTol);
    ok = ok && cmp.is_scalar_multiple;
    worst = std::max(worst, cmp.max_coeff_deviation);
    profile = std::max(profile, circle_profile(b.rational, 512).max_deviation_from_one());
  }
  ok = ok && profile <= kProfileTol;
  return {ok, "scalar multiple gap " + sci(worst) + ", |B| - 1 on circle " + sci(profile)};
}

Outcome bergman_residue() {
  const SpaceSpec a2 = SpaceSpec::bergman();
  double gap = 0.0, residue = 0.0;
  for (const std::vector<cplx>& zeros : {std::vector<cplx>{0.5}, std::vector<cplx>{0.5, -0.5}}) {
    const RationalResult b = bergman_rational(zeros, 400);
    std::vector<Root> roots;
    for (cplx l : zeros) roots.push_back({l, 1});
    const ConstructionResult c = shapiro_shields(a2, ReproducibleMultiset(0, roots), Route::determinant, {}, 400);
    gap = std::max(gap, max_diff(c.taylor, b.taylor, 400));
    for (cplx l : zeros) residue = std::max(residue, std::abs(residue_at(b.rational, 1.0 / std::conj(l))));
  }
  return {gap <= kRouteTol && residue <= kResidueTol, "coefficient gap " + sci(gap) + ", residues " + sci(residue)};
}

Outcome zero_structure() {
  double worst = 0.0, origin = 1.0;
  bool ok = true;
  for (const Built& b : built) {
    const ZeroReport r = zero_report(b.space, b.result, b.Z, 0.99, kZeroTol);
    for (const PrescribedZero& pz : r.prescribed) {
      for (double res : pz.residuals) worst = std::max(worst, res / r.norm);
    }
    const std::size_t m0 = static_cast<std::size_t>(b.Z.origin_multiplicity());
    for (std::size_t k = 0; k < m0; ++k) ok = ok && std::abs(b.result.taylor.coefficient(k)) <= kZeroTol * r.norm;
    origin = std::min(origin, std::abs(b.result.taylor.coefficient(m0)));
    ok = ok && r.verdict;
  }
  ok = ok && worst <= kZeroTol && origin > kOriginFloor;
  return {ok, "max residual / norm " + sci(worst) + ", min |b_m0| " + sci(origin)};
}

Outcome subspace_laws() {
  const SpaceSpec h2 = SpaceSpec::hardy();
  const SubspaceResult a = subspace_equal(h2, FactoredPoly(1.0, {{0.0, 1}, {2.0, 1}}), FactoredPoly::monomial(1));
  const SubspaceResult b = subspace_equal(SpaceSpec::dirichlet(2.0), FactoredPoly(1.0, {{1.0, 2}}),
                                          FactoredPoly(1.0, {{1.0, 1}}));
  const SubspaceResult c = subspace_equal(h2, FactoredPoly::monomial(1), FactoredPoly::monomial(2));
  const bool ok = a.equal && a.evidence.max_deviation <= kRouteTol && b.equal && !c.equal;
  return {ok, "z(z-2)~z probe gap " + sci(a.evidence.max_deviation) + ", (z-1)^2~(z-1) in D2 " +
                  (b.equal ? "equal" : "unequal") + ", z vs z^2 " + (c.equal ? "equal" : "unequal")};
}

Outcome extremal() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 101;
  for (const auto& [s, label] : {std::pair{SpaceSpec::hardy(), "H2"}, std::pair{SpaceSpec::bergman(), "A2"}}) {
    const FactoredPoly p(1.0, {{0.5, 1}});
    const ConstructionResult c = shapiro_shields(s, ReproducibleMultiset(0, {{0.5, 1}}));
    const ExtremalReport r = extremal_check(s, p, c, 10000, seed++);
    ok = ok && r.verdict && r.max_sample <= r.construction_value + kExtremalMargin;
    detail += std::string(detail.empty() ? "" : ", ") + label + " excess " + sci(r.max_sample - r.construction_value);
  }
  return {ok, detail};
}

Outcome extraneous() {
  const ScanReport r = extraneous_scan(SpaceSpec::bergman(), {0.8, 0.85, 0.9, 0.95}, 8, 0.99, kZeroTol, kScanCompareTol);
  bool ok = true;
  for (const ScanInstance& inst : r.found) ok = ok && inst.comparison && inst.comparison->is_scalar_multiple;
  const bool signed_statement = r.found.empty() && r.statement.rfind("no instance found in region", 0) == 0;
  ok = ok && (signed_statement || !r.found.empty()) && r.verdict;
  return {ok, std::to_string(r.instances) + " instances; " + r.statement};
}

Outcome inner_part() {
  std::mt19937_64 g(404);
  double worst = 0.0;
  bool ok = true;
  for (const auto& s : {SpaceSpec::hardy(), SpaceSpec::bergman()}) {
    for (int k = 0; k < 10; ++k) {
      // Roots inside |z| <= 0.8, outside |z| >= 1.2, or at the origin.
      const int deg = 1 + static_cast<int>(uniform(g) * 4);
      std::vector<Root> roots;
      for (int j = 0; j < deg; ++j) {
        const double u = uniform(g);
        const double r = u < 0.2 ? 0.0 : u < 0.6 ? 0.1 + 0.7 * uniform(g) : 1.2 + 0.8 * uniform(g);
        roots.push_back({std::polar(r, 2 * std::numbers::pi * uniform(g)), 1});
      }
      const FactoredPoly f(cplx(0.5 + uniform(g), uniform(g) - 0.5), roots);
      const TaylorSeries J = inner_projection_of(s, f, kOracleM);
      const TaylorSeries P = project_kernel_fd(s, f, f.ord0(), kOracleM);
      const ComparisonReport cmp = scalar_multiple_check(J, P, kInnerPartTol);
      ok = ok && cmp.is_scalar_multiple;
      worst = std::max(worst, cmp.max_coeff_deviation);
    }
  }
  return {ok, "20 polynomials, max deviation " + sci(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> body;
    double budget;  // seconds
  };
  const std::vector<Criterion> criteria{
      {1, "worked example R(f)", paper_example, 1.0},
      {2, "route agreement", route_agreement, 60.0},
      {3, "innerness", innerness, 0.0},
      {4, "classical Blaschke match", classical_match, 0.0},
      {5, "Bergman residue construction", bergman_residue, 0.0},
      {6, "zero structure", zero_structure, 0.0},
      {7, "subspace laws", subspace_laws, 0.0},
      {8, "extremal dominance", extremal, 0.0},
      {9, "extraneous zeros in A2", extraneous, 300.0},
      {10, "inner part identity", inner_part, 0.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0.0 && secs > c.budget) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    std::printf("criterion %2d %s: %s | %s | %.2f s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
