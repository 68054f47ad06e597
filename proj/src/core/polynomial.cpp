#include "qclab/core/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qclab/core/error.hpp"

namespace qclab {
namespace {

using cld = std::complex<long double>;

std::int64_t add_ck(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw NumericError("integer overflow in polynomial arithmetic");
  return r;
}

std::int64_t mul_ck(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("integer overflow in polynomial arithmetic");
  return r;
}

std::int64_t sub_ck(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw NumericError("integer overflow in polynomial arithmetic");
  return r;
}

cld derivative_at(const IntPolynomial& p, cld z) {
  cld d = 0;
  for (int i = p.degree(); i >= 1; --i) d = d * z + static_cast<long double>(i) * static_cast<long double>(p.coeff(i));
  return d;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

cld IntPolynomial::evaluate(cld z) const {
  cld v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + static_cast<long double>(*it);
  return v;
}

long double IntPolynomial::evaluate(long double x) const {
  long double v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + static_cast<long double>(*it);
  return v;
}

long double IntPolynomial::evaluation_scale(cld z) const {
  const long double r = std::abs(z);
  long double s = 0, pw = 1;
  for (auto c : coeffs_) {
    s += std::fabs(static_cast<long double>(c)) * pw;
    pw *= r;
  }
  return s;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    std::int64_t c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::int64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = add_ck(out[i + j], mul_ck(a.coeffs_[i], b.coeffs_[j]));
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<std::int64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_ck(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return IntPolynomial(std::move(out));
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& dividend, const IntPolynomial& divisor) {
  if (divisor.is_zero()) throw InputError("division by the zero polynomial");
  if (dividend.is_zero()) return IntPolynomial{};
  if (dividend.degree() < divisor.degree()) return std::nullopt;
  std::vector<std::int64_t> rem = dividend.coeffs();
  const int dq = dividend.degree() - divisor.degree();
  std::vector<std::int64_t> quot(static_cast<std::size_t>(dq) + 1, 0);
  const std::int64_t lead = divisor.leading();
  for (int k = dq; k >= 0; --k) {
    const std::int64_t top = rem[static_cast<std::size_t>(k + divisor.degree())];
    if (top % lead != 0) return std::nullopt;
    const std::int64_t q = top / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= divisor.degree(); ++j) {
      auto& r = rem[static_cast<std::size_t>(k + j)];
      r = sub_ck(r, mul_ck(q, divisor.coeff(j)));
    }
  }
  for (auto r : rem)
    if (r != 0) return std::nullopt;
  return IntPolynomial(std::move(quot));
}

IntPolynomial char_poly(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw InputError("char_poly: matrix is not square");
  if (n == 0) return IntPolynomial({1});

  using Mat = std::vector<std::vector<std::int64_t>>;
  auto matmul = [n](const Mat& x, const Mat& y) {
    Mat r(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (x[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) r[i][j] = add_ck(r[i][j], mul_ck(x[i][k], y[k][j]));
      }
    return r;
  };

  std::vector<std::int64_t> c(n + 1, 0);
  c[n] = 1;
  Mat m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) next[i][i] = add_ck(next[i][i], c[n - k + 1]);
    m = std::move(next);
    Mat am = matmul(a, m);
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr = add_ck(tr, am[i][i]);
    // Faddeev-LeVerrier guarantees k | tr.
    c[n - k] = -tr / static_cast<std::int64_t>(k);
  }
  return IntPolynomial(std::move(c));
}

std::vector<PolyRoot> poly_roots(const IntPolynomial& p, double tol) {
  const int n = p.degree();
  if (n < 1) throw InputError("poly_roots: polynomial must have degree >= 1");
  if (!(tol > 0)) throw InputError("poly_roots: tol must be positive");

  const long double an = static_cast<long double>(p.leading());
  std::vector<cld> z(static_cast<std::size_t>(n));
  {
    // Starting circle: the geometric mean of root moduli (or 1 when p(0) = 0).
    long double radius = 1.0L;
    if (p.coeff(0) != 0) radius = std::pow(std::fabs(static_cast<long double>(p.coeff(0)) / an), 1.0L / n);
    radius = std::clamp(radius, 1e-3L, 1e6L);
    const long double two_pi = 2.0L * std::acos(-1.0L);
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, two_pi * k / n + 0.7L);
  }

  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < 2000; ++iter) {
    long double max_step = 0;
    for (int k = 0; k < n; ++k) {
      cld& zk = z[static_cast<std::size_t>(k)];
      cld pv = p.evaluate(zk);
      if (std::abs(pv) == 0) continue;
      cld w = pv / derivative_at(p, zk);
      cld s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (zk - z[static_cast<std::size_t>(j)]);
      cld step = w / (1.0L - w * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = w;
      zk -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(zk)));
    }
    if (max_step < 8 * eps) break;
  }

  // Newton polish; helps simple roots reach full long-double accuracy.
  for (auto& zk : z) {
    for (int it = 0; it < 3; ++it) {
      cld d = derivative_at(p, zk);
      if (std::abs(d) == 0) break;
      cld nz = zk - p.evaluate(zk) / d;
      if (std::abs(p.evaluate(nz)) < std::abs(p.evaluate(zk))) zk = nz;
      else break;
    }
  }

  std::vector<PolyRoot> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const cld zk = z[static_cast<std::size_t>(k)];
    const long double scale = p.evaluation_scale(zk);
    const long double resid = std::abs(p.evaluate(zk));
    if (resid > tol * scale) throw NumericError("poly_roots: residual above tolerance for " + p.to_string());
    long double denom = std::fabs(an);
    for (int j = 0; j < n; ++j)
      if (j != k) denom *= std::abs(zk - z[static_cast<std::size_t>(j)]);
    const long double num = resid + 4 * eps * scale;
    long double radius = denom > 0 ? n * num / denom : std::numeric_limits<long double>::infinity();
    roots[static_cast<std::size_t>(k)] = {zk, radius};
  }

  for (int k = 0; k < n; ++k) {
    auto& rk = roots[static_cast<std::size_t>(k)];
    if (std::fabs(rk.value.imag()) > rk.error_bound) continue;
    bool isolated = true;
    for (int j = 0; j < n && isolated; ++j) {
      if (j == k) continue;
      const auto& rj = roots[static_cast<std::size_t>(j)];
      if (std::abs(rk.value - rj.value) <= rj.error_bound + 3 * rk.error_bound) isolated = false;
    }
    if (isolated) rk.value = cld(rk.value.real(), 0.0L);
  }

  std::sort(roots.begin(), roots.end(), [](const PolyRoot& a, const PolyRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

namespace {

std::vector<std::int64_t> positive_divisors(std::int64_t v) {
  v = v < 0 ? -v : v;
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i * i <= v; ++i) {
    if (v % i == 0) {
      d.push_back(i);
      if (i != v / i) d.push_back(v / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

FactorCertificate poly_irreducible_over_Q(const IntPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw InputError("irreducibility test needs degree >= 1");
  if (n > kMaxIrreducibilityDegree) {
    throw InputError("irreducibility test supports degree <= " + std::to_string(kMaxIrreducibilityDegree) +
                     ", got " + std::to_string(n));
  }
  FactorCertificate cert;
  if (n == 1) return cert;
  if (p.coeff(0) == 0) {
    cert.irreducible = false;
    cert.factor = IntPolynomial({0, 1});
    cert.cofactor = *exact_divide(p, cert.factor);
    return cert;
  }

  const auto roots = poly_roots(p);
  const auto divisors = positive_divisors(p.leading());
  const unsigned full = 1u << n;
  for (int size = 1; size <= n / 2; ++size) {
    for (unsigned mask = 1; mask < full; ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      // Monic product of the chosen linear factors.
      std::vector<cld> prod{cld(1)};
      for (int k = 0; k < n; ++k) {
        if (!(mask & (1u << k))) continue;
        std::vector<cld> next(prod.size() + 1, cld(0));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= prod[i] * roots[static_cast<std::size_t>(k)].value;
        }
        prod = std::move(next);
      }
      for (std::int64_t c : divisors) {
        std::vector<std::int64_t> q(prod.size());
        bool integral = true;
        for (std::size_t i = 0; i < prod.size() && integral; ++i) {
          const cld v = prod[i] * static_cast<long double>(c);
          const long double r = std::round(v.real());
          const long double slack = 1e-6L * std::max(1.0L, std::fabs(v.real()));
          if (std::fabs(v.imag()) > slack || std::fabs(v.real() - r) > slack ||
              std::fabs(r) > 9.0e18L) {
            integral = false;
          } else {
            q[i] = static_cast<std::int64_t>(r);
          }
        }
        if (!integral) continue;
        IntPolynomial cand(q);
        if (auto co = exact_divide(p, cand)) {
          cert.irreducible = false;
          cert.factor = std::move(cand);
          cert.cofactor = std::move(*co);
          return cert;
        }
      }
    }
  }
  return cert;
}

std::vector<IntPolynomial> factor_over_Q(const IntPolynomial& p) {
  auto cert = poly_irreducible_over_Q(p);
  if (cert.irreducible) return {p};
  auto left = factor_over_Q(cert.factor);
  auto right = factor_over_Q(cert.cofactor);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace qclab
