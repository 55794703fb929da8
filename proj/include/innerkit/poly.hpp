#pragma once

#include <vector>

#include "innerkit/space.hpp"

namespace innerkit::poly {

// All polynomials here are ascending coefficient vectors.

cplx eval(const std::vector<cplx>& c, cplx z);
// l-th derivative at z
cplx eval_derivative(const std::vector<cplx>& c, cplx z, int l);
std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b);
// Power series a / b truncated to degrees 0..N; b(0) must be nonzero.
std::vector<cplx> series_divide(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                std::size_t N);
// Drops trailing coefficients with |c| <= rel_tol * max |c|.
std::vector<cplx> trim(std::vector<cplx> c, double rel_tol = 0.0);

// Eigenvalues of the companion matrix (Frobenius form) after trimming exact
// trailing zeros. Order follows the eigensolver and is not meaningful.
std::vector<cplx> companion_roots(const std::vector<cplx>& c);

// Groups roots closer than tol (single linkage); each cluster becomes its
// centroid with the cluster size as multiplicity.
std::vector<Root> cluster_roots(const std::vector<cplx>& roots, double tol);

}  // namespace innerkit::poly
