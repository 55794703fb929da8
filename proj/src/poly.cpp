#include "innerkit/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "innerkit/error.hpp"
#include "innerkit/numeric.hpp"

namespace innerkit::poly {

cplx eval(const std::vector<cplx>& c, cplx z) {
  cplx acc{0.0, 0.0};
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
  return acc;
}

cplx eval_derivative(const std::vector<cplx>& c, cplx z, int l) {
  const auto lu = static_cast<std::size_t>(l);
  cplx acc{0.0, 0.0};
  for (std::size_t n = c.size(); n-- > lu;) acc = acc * z + c[n] * falling_factorial(n, lu);
  return acc;
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<cplx> series_divide(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                std::size_t N) {
  if (b.empty() || b[0] == cplx(0.0, 0.0)) {
    throw Error(ErrorKind::Evaluation, "series division by a series vanishing at 0");
  }
  std::vector<cplx> q(N + 1, cplx(0.0, 0.0));
  for (std::size_t n = 0; n <= N; ++n) {
    cplx acc = n < a.size() ? a[n] : cplx(0.0, 0.0);
    const std::size_t kmax = std::min(n, b.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= b[k] * q[n - k];
    q[n] = acc / b[0];
  }
  return q;
}

std::vector<cplx> trim(std::vector<cplx> c, double rel_tol) {
  double big = 0.0;
  for (const cplx& x : c) big = std::max(big, std::abs(x));
  while (!c.empty() && std::abs(c.back()) <= rel_tol * big) c.pop_back();
  return c;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
  std::vector<cplx> c = trim(coeffs);
  if (c.size() <= 1) return {};
  const auto deg = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) {
    comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Evaluation, "companion eigenvalue iteration did not converge");
  }
  std::vector<cplx> roots(static_cast<std::size_t>(deg));
  for (Eigen::Index i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

std::vector<Root> cluster_roots(const std::vector<cplx>& roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(roots[i] - roots[j]) < tol) parent[find(i)] = find(j);
    }
  }
  std::vector<Root> out;
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(rep.begin(), rep.end(), r);
    if (it == rep.end()) {
      rep.push_back(r);
      out.push_back(Root{roots[i], 1});
    } else {
      Root& acc = out[static_cast<std::size_t>(it - rep.begin())];
      acc.point = (acc.point * static_cast<double>(acc.mult) + roots[i]) /
                  static_cast<double>(acc.mult + 1);
      ++acc.mult;
    }
  }
  return out;
}

}  // namespace innerkit::poly
