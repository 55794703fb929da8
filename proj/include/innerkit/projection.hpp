#pragma once

// Finite-dimensional projections onto spans of shifted polynomials
// {z^j p}. Polynomials of degree <= M are mapped isometrically into C^(M+1)
// by a factor R of the monomial Gram matrix, <a, b> = (R b)^H (R a), so the
// projections are computed by Householder QR rather than normal equations.

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

#include "innerkit/space.hpp"

namespace innerkit {

class PolynomialIsometry {
 public:
  PolynomialIsometry(const SpaceSpec& space, std::size_t M);

  std::size_t degree() const { return M_; }
  // R a, with a padded to degree M.
  Eigen::VectorXcd apply(const std::vector<cplx>& coeffs) const;
  // R^{-1} y
  std::vector<cplx> invert(const Eigen::VectorXcd& y) const;
  // Isometric image of the Riesz representer (within polynomials of degree
  // <= M) of the functional L with L(z^n) = values[n].
  Eigen::VectorXcd riesz(const std::vector<cplx>& values) const;

 private:
  std::size_t M_;
  bool diagonal_;
  Eigen::VectorXd sqrt_weights_;
  Eigen::MatrixXcd lower_;  // G = L L^H, R = L^H
};

// L(z^n) = d^l/dz^l z^n at beta, for n = 0..M.
std::vector<cplx> derivative_functional(cplx beta, int l, std::size_t M);

class ShiftSpanProjector {
 public:
  // Span of z^j p for j_first <= j <= M - deg p. Columns are normalized before
  // factorization; IllConditioned is raised when the smallest squared QR
  // pivot falls below pivot_floor times the first one.
  ShiftSpanProjector(const SpaceSpec& space, const std::vector<cplx>& p, std::size_t M,
                     std::size_t j_first = 0, double pivot_floor = 1e-12);

  std::size_t dimension() const { return dim_; }
  double min_pivot_ratio() const { return min_pivot_ratio_; }
  const PolynomialIsometry& isometry() const { return iso_; }

  // Coefficients (degree <= M) of the projection of the representer of L.
  std::vector<cplx> project_functional(const std::vector<cplx>& values) const;
  // Coefficients of the projection of the polynomial f.
  std::vector<cplx> project(const std::vector<cplx>& f) const;

 private:
  std::vector<cplx> project_image(const Eigen::VectorXcd& y) const;

  PolynomialIsometry iso_;
  std::size_t dim_ = 0;
  double min_pivot_ratio_ = 1.0;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_;
};

}  // namespace innerkit
