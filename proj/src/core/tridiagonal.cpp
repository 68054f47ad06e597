#include "qclab/core/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qclab/core/error.hpp"

namespace qclab {
namespace {

double pivmin_for(std::span<const double> offdiag) {
  double m = 1.0;
  for (double e : offdiag) m = std::max(m, e * e);
  return m * std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
}

std::size_t count_below(std::span<const double> d, std::span<const double> e, double x, double pivmin) {
  std::size_t neg = 0;
  double q = d[0] - x;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0) ++neg;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++neg;
  }
  return neg;
}

struct Bisector {
  std::span<const double> d, e;
  double pivmin, tol;
  std::vector<double>& out;

  // Eigenvalues with index in [clo, chi) lie in (lo, hi].
  void run(double lo, double hi, std::size_t clo, std::size_t chi) {
    if (clo >= chi) return;
    const double width_tol = std::max(tol, 4 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)));
    if (hi - lo <= width_tol) {
      const double mid = 0.5 * (lo + hi);
      for (std::size_t k = clo; k < chi; ++k) out[k] = mid;
      return;
    }
    const double mid = 0.5 * (lo + hi);
    std::size_t cm = std::clamp(count_below(d, e, mid, pivmin), clo, chi);
    run(lo, mid, clo, cm);
    run(mid, hi, cm, chi);
  }
};

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  if (diag.empty()) return 0;
  if (offdiag.size() + 1 != diag.size()) throw InputError("sturm_count: offdiag must be one shorter than diag");
  return count_below(diag, offdiag, x, pivmin_for(offdiag));
}

std::vector<double> eig_sym_tridiagonal(std::span<const double> diag, std::span<const double> offdiag, double tol) {
  if (!(tol > 0)) throw InputError("eig_sym_tridiagonal: tol must be positive");
  if (diag.empty()) {
    if (!offdiag.empty()) throw InputError("eig_sym_tridiagonal: offdiag must be one shorter than diag");
    return {};
  }
  if (offdiag.size() + 1 != diag.size()) throw InputError("eig_sym_tridiagonal: offdiag must be one shorter than diag");

  // Gershgorin enclosure.
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::fabs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 2 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)) + tol;
  lo -= pad;
  hi += pad;

  std::vector<double> out(n);
  Bisector b{diag, offdiag, pivmin_for(offdiag), tol, out};
  b.run(lo, hi, 0, n);
  return out;
}

}  // namespace qclab
