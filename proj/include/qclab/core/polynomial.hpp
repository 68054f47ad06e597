#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qclab {

/// Integer polynomial, constant term first. Trailing zero coefficients are
/// stripped on construction, so the leading coefficient is nonzero unless
/// the polynomial is zero (empty coefficient list).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  std::int64_t coeff(int i) const { return i < 0 || i > degree() ? 0 : coeffs_[static_cast<std::size_t>(i)]; }

  std::complex<long double> evaluate(std::complex<long double> z) const;
  long double evaluate(long double x) const;
  /// Sum of |a_i| |z|^i: the natural scale of rounding error in evaluate(z).
  long double evaluation_scale(std::complex<long double> z) const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Exact division. Returns the quotient if `divisor` divides `dividend` in
/// Z[x], otherwise nullopt. Throws NumericError on overflow.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& dividend, const IntPolynomial& divisor);

/// det(xI - M) by Faddeev-LeVerrier; every division in the recurrence is exact
/// so the computation stays in the integers. Throws InputError for non-square
/// input and NumericError on 64-bit overflow.
IntPolynomial char_poly(const std::vector<std::vector<std::int64_t>>& matrix);

struct PolyRoot {
  std::complex<long double> value;
  /// Radius of an inclusion disk around `value` (Weierstrass-type bound).
  long double error_bound = 0;
};

/// All complex roots by Aberth-Ehrlich iteration from a fixed circle of
/// starting points, followed by Newton polishing. Roots are ordered by real
/// part, then imaginary part; roots whose inclusion disk meets the real axis
/// and isolates them are snapped to the real line.
/// Throws InputError for constant or zero polynomials, NumericError if some
/// residual |p(r)| exceeds tol times the evaluation scale.
std::vector<PolyRoot> poly_roots(const IntPolynomial& p, double tol = 1e-12);

struct FactorCertificate {
  bool irreducible = true;
  /// When reducible: factor * cofactor == p exactly, deg factor <= deg cofactor.
  IntPolynomial factor;
  IntPolynomial cofactor;
};

inline constexpr int kMaxIrreducibilityDegree = 12;

/// Irreducibility over Q (Gauss: equivalently over Z up to content). Roots are
/// grouped into subsets whose scaled elementary symmetric functions are
/// integral; each candidate is confirmed by exact division.
/// Throws InputError for degree < 1 or degree > kMaxIrreducibilityDegree.
FactorCertificate poly_irreducible_over_Q(const IntPolynomial& p);

/// Complete factorization into irreducible factors over Z (content dropped),
/// built by repeated certificate splitting. Degree cap as above.
std::vector<IntPolynomial> factor_over_Q(const IntPolynomial& p);

}  // namespace qclab
