#include "innerkit/projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "innerkit/error.hpp"
#include "innerkit/numeric.hpp"

namespace innerkit {

PolynomialIsometry::PolynomialIsometry(const SpaceSpec& space, std::size_t M)
    : M_(M), diagonal_(space.is_diagonal()) {
  const auto n = static_cast<Eigen::Index>(M + 1);
  if (diagonal_) {
    sqrt_weights_.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      sqrt_weights_(k) = std::sqrt(space.weight(static_cast<std::size_t>(k)));
    }
    return;
  }
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = monomial_inner(space, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  // Coefficient vectors a, b: <a, b> = b^H G^T a, G^T(i,j) = <z^j, z^i>.
  Eigen::MatrixXcd gt = g.transpose();
  Eigen::LLT<Eigen::MatrixXcd> llt(gt);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::IllConditioned, "monomial Gram matrix is not numerically positive definite");
  }
  lower_ = llt.matrixL();
}

Eigen::VectorXcd PolynomialIsometry::apply(const std::vector<cplx>& coeffs) const {
  if (coeffs.size() > M_ + 1) throw Error(ErrorKind::Evaluation, "polynomial exceeds isometry degree");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(M_ + 1));
  for (std::size_t k = 0; k < coeffs.size(); ++k) a(static_cast<Eigen::Index>(k)) = coeffs[k];
  if (diagonal_) return a.cwiseProduct(sqrt_weights_.cast<cplx>());
  return lower_.adjoint() * a;
}

std::vector<cplx> PolynomialIsometry::invert(const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd a;
  if (diagonal_) {
    a = y.cwiseQuotient(sqrt_weights_.cast<cplx>());
  } else {
    a = lower_.adjoint().triangularView<Eigen::Upper>().solve(y);
  }
  return std::vector<cplx>(a.data(), a.data() + a.size());
}

Eigen::VectorXcd PolynomialIsometry::riesz(const std::vector<cplx>& values) const {
  Eigen::VectorXcd l = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(M_ + 1));
  for (std::size_t k = 0; k < std::min(values.size(), M_ + 1); ++k) {
    l(static_cast<Eigen::Index>(k)) = std::conj(values[k]);
  }
  if (diagonal_) return l.cwiseQuotient(sqrt_weights_.cast<cplx>());
  return lower_.triangularView<Eigen::Lower>().solve(l);
}

std::vector<cplx> derivative_functional(cplx beta, int l, std::size_t M) {
  std::vector<cplx> v(M + 1, cplx(0.0, 0.0));
  const auto lu = static_cast<std::size_t>(l);
  for (std::size_t n = lu; n <= M; ++n) {
    v[n] = falling_factorial(n, lu) * (n == lu ? cplx(1.0, 0.0) : std::pow(beta, static_cast<int>(n - lu)));
  }
  return v;
}

ShiftSpanProjector::ShiftSpanProjector(const SpaceSpec& space, const std::vector<cplx>& p,
                                       std::size_t M, std::size_t j_first, double pivot_floor)
    : iso_(space, M) {
  const std::size_t deg = p.empty() ? 0 : p.size() - 1;
  if (p.empty() || deg > M || j_first > M - deg) {
    throw Error(ErrorKind::IllConditioned, "spanning set is empty for the requested degree");
  }
  dim_ = M - deg - j_first + 1;
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(M + 1), static_cast<Eigen::Index>(dim_));
  std::vector<cplx> shifted(M + 1, cplx(0.0, 0.0));
  for (std::size_t c = 0; c < dim_; ++c) {
    std::fill(shifted.begin(), shifted.end(), cplx(0.0, 0.0));
    std::copy(p.begin(), p.end(), shifted.begin() + static_cast<std::ptrdiff_t>(j_first + c));
    Eigen::VectorXcd col = iso_.apply(shifted);
    const double nrm = col.norm();
    if (!(nrm > 0.0)) throw Error(ErrorKind::IllConditioned, "zero spanning vector");
    a.col(static_cast<Eigen::Index>(c)) = col / nrm;
  }
  qr_.compute(a);
  const auto& r = qr_.matrixQR();
  const double first = std::norm(r(0, 0));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim_); ++k) {
    min_pivot_ratio_ = std::min(min_pivot_ratio_, std::norm(r(k, k)) / first);
  }
  if (!(min_pivot_ratio_ > pivot_floor)) {
    std::ostringstream os;
    os << "spanning-set Gram pivot ratio " << min_pivot_ratio_ << " is below " << pivot_floor;
    throw Error(ErrorKind::IllConditioned, os.str());
  }
}

std::vector<cplx> ShiftSpanProjector::project_image(const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd t = qr_.householderQ().adjoint() * y;
  t.tail(t.size() - static_cast<Eigen::Index>(dim_)).setZero();
  const Eigen::VectorXcd proj = qr_.householderQ() * t;
  return iso_.invert(proj);
}

std::vector<cplx> ShiftSpanProjector::project_functional(const std::vector<cplx>& values) const {
  return project_image(iso_.riesz(values));
}

std::vector<cplx> ShiftSpanProjector::project(const std::vector<cplx>& f) const {
  return project_image(iso_.apply(f));
}

}  // namespace innerkit
