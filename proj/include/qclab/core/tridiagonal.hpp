#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qclab {

/// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
/// with the given diagonal and off-diagonal (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

/// All eigenvalues in ascending order by Sturm bisection, each within `tol`
/// (absolute, widened to a few ulps for large eigenvalues).
/// Throws InputError when tol <= 0 or offdiag.size() + 1 != diag.size().
std::vector<double> eig_sym_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                                        double tol = 1e-12);

}  // namespace qclab
