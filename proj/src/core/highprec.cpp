#include "qclab/core/highprec.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <regex>
#include <string>

#include "qclab/core/error.hpp"

namespace qclab {
namespace {

// Error-free transformations (Knuth two-sum, Dekker/FMA two-product).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Bound arithmetic is itself rounded; inflate slightly so it stays an upper bound.
inline double up(double x) { return x * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()); }

inline double magnitude(double hi, double lo) { return std::fabs(hi + lo); }

}  // namespace

HighPrec::HighPrec(std::int64_t v) {
  hi_ = static_cast<double>(v);
  lo_ = static_cast<double>(v - static_cast<std::int64_t>(hi_));
  quick_two_sum(hi_, lo_, hi_, lo_);
}

HighPrec HighPrec::from_parts(double hi, double lo, double error_bound) {
  if (!(error_bound >= 0.0)) throw InputError("HighPrec: error bound must be non-negative");
  HighPrec r;
  quick_two_sum(hi, lo, r.hi_, r.lo_);
  r.err_ = error_bound;
  return r;
}

HighPrec HighPrec::with_extra_error(double extra) const {
  HighPrec r = *this;
  r.err_ = up(err_ + std::fabs(extra));
  return r;
}

HighPrec HighPrec::operator-() const {
  HighPrec r = *this;
  r.hi_ = -hi_;
  r.lo_ = -lo_;
  return r;
}

HighPrec& HighPrec::operator+=(const HighPrec& o) {
  double s, e, t, f;
  two_sum(hi_, o.hi_, s, e);
  two_sum(lo_, o.lo_, t, f);
  e += t;
  quick_two_sum(s, e, s, e);
  e += f;
  quick_two_sum(s, e, hi_, lo_);
  err_ = up(err_ + o.err_ + kUnitRoundoff * magnitude(hi_, lo_));
  return *this;
}

HighPrec& HighPrec::operator-=(const HighPrec& o) { return *this += -o; }

HighPrec& HighPrec::operator*=(const HighPrec& o) {
  const double a_mag = magnitude(hi_, lo_);
  const double b_mag = magnitude(o.hi_, o.lo_);
  double p, e;
  two_prod(hi_, o.hi_, p, e);
  e += hi_ * o.lo_ + lo_ * o.hi_;
  quick_two_sum(p, e, hi_, lo_);
  err_ = up(a_mag * o.err_ + b_mag * err_ + err_ * o.err_ + kUnitRoundoff * magnitude(hi_, lo_));
  return *this;
}

HighPrec& HighPrec::operator/=(const HighPrec& o) {
  const double b_mag = magnitude(o.hi_, o.lo_);
  if (o.hi_ == 0.0) throw NumericError("HighPrec: division by zero");
  if (!(b_mag > o.err_)) throw NumericError("HighPrec: divisor not separated from zero by its error bound");
  const double a_err = err_;
  const double b_err = o.err_;
  HighPrec num = *this;
  num.err_ = 0.0;
  HighPrec den = o;
  den.err_ = 0.0;

  double q1 = num.hi_ / den.hi_;
  HighPrec r = num - den * HighPrec(q1);
  double q2 = r.hi_ / den.hi_;
  r -= den * HighPrec(q2);
  double q3 = r.hi_ / den.hi_;
  double s, e;
  quick_two_sum(q1, q2, s, e);
  HighPrec q = HighPrec::from_parts(s, e, 0.0);
  q += HighPrec(q3);

  hi_ = q.hi_;
  lo_ = q.lo_;
  const double q_mag = magnitude(hi_, lo_);
  err_ = up((a_err + q_mag * b_err) / (b_mag - b_err) + 4.0 * kUnitRoundoff * q_mag);
  return *this;
}

std::int64_t HighPrec::floor_int() const {
  double f = std::floor(hi_);
  if (f == hi_) {
    // hi_ is an integer; the fractional information lives in lo_.
    double g = std::floor(lo_);
    return static_cast<std::int64_t>(f) + static_cast<std::int64_t>(g);
  }
  return static_cast<std::int64_t>(f);
}

std::int64_t HighPrec::round_int() const {
  HighPrec shifted = *this + HighPrec(0.5);
  return shifted.floor_int();
}

std::string HighPrec::to_string(int digits) const {
  if (digits < 1) digits = 1;
  if (digits > 32) digits = 32;
  if (hi_ == 0.0) return "0";
  if (!std::isfinite(hi_)) return std::to_string(hi_);
  HighPrec x = abs(*this);
  int exp10 = static_cast<int>(std::floor(std::log10(x.hi_)));
  HighPrec scale(1.0);
  HighPrec ten(10.0);
  for (int i = 0; i < std::abs(exp10); ++i) scale *= ten;
  x = exp10 >= 0 ? x / scale : x * scale;
  if (x.hi_ >= 10.0) {
    x /= ten;
    ++exp10;
  } else if (x.hi_ < 1.0) {
    x *= ten;
    --exp10;
  }
  std::string mant;
  for (int i = 0; i < digits; ++i) {
    std::int64_t d = x.floor_int();
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    mant.push_back(static_cast<char>('0' + d));
    x = (x - HighPrec(d)) * ten;
  }
  std::string out = (hi_ < 0 ? "-" : "");
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  if (exp10 != 0) out += "e" + std::to_string(exp10);
  return out;
}

HighPrec abs(const HighPrec& x) { return x.hi() < 0 || (x.hi() == 0 && x.lo() < 0) ? -x : x; }

HighPrec sqrt(const HighPrec& x) {
  if (x.hi() < 0.0) throw NumericError("HighPrec: sqrt of negative value");
  if (x.hi() == 0.0) return HighPrec::from_parts(0.0, 0.0, std::sqrt(x.error_bound()));
  HighPrec exact = HighPrec::from_parts(x.hi(), x.lo(), 0.0);
  double s0 = std::sqrt(x.hi());
  HighPrec s(s0);
  // One Newton step doubles the ~53 correct bits.
  HighPrec r = s + (exact - s * s) / (HighPrec(2.0) * s);
  const double v = r.to_double();
  const double lower = std::max(x.to_double() - x.error_bound(), 0.0);
  const double prop = x.error_bound() / (v + std::sqrt(lower));
  return HighPrec::from_parts(r.hi(), r.lo(), 0.0).with_extra_error(prop + 8.0 * HighPrec::kUnitRoundoff * v);
}

HighPrec frac(const HighPrec& x) { return x - HighPrec(x.floor_int()); }

HighPrec dist_to_int(const HighPrec& x) { return abs(x - HighPrec(x.round_int())); }

namespace {

HighPrec parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw InputError("not an integer: " + s);
    return HighPrec(static_cast<std::int64_t>(v));
  } catch (const std::logic_error&) {
    throw InputError("not an integer: " + s);
  }
}

HighPrec sqrt_of_int(const std::string& s) {
  HighPrec d = parse_int(s);
  if (d.hi() < 0) throw InputError("sqrt of negative integer: " + s);
  return sqrt(d);
}

HighPrec parse_decimal(std::string_view tok) {
  static const std::regex re(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  std::string s(tok);
  std::smatch m;
  if (!std::regex_match(s, m, re) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw InputError("unrecognized real literal: " + s);
  }
  std::string digits = m[2].str() + m[3].str();
  int exp10 = -static_cast<int>(m[3].length());
  if (m[4].matched) exp10 += std::stoi(m[4].str());
  HighPrec v(0.0);
  HighPrec ten(10.0);
  for (char c : digits) v = v * ten + HighPrec(static_cast<double>(c - '0'));
  HighPrec p(1.0);
  for (int i = 0; i < std::abs(exp10); ++i) p *= ten;
  v = exp10 >= 0 ? v * p : v / p;
  return m[1] == "-" ? -v : v;
}

}  // namespace

HighPrec parse_real(std::string_view token) {
  std::string t;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw InputError("empty real literal");
  const HighPrec five(5.0);
  if (t == "golden") return (sqrt(five) - HighPrec(1.0)) / HighPrec(2.0);
  if (t == "phi") return (sqrt(five) + HighPrec(1.0)) / HighPrec(2.0);

  static const std::regex sqrt_re(R"(^sqrt\(?(\d+)\)?$)");
  static const std::regex surd_re(R"(^\(([+-]?\d+)([+-]\d*)\*?sqrt\(?(\d+)\)?\)/([+-]?\d+)$)");
  std::smatch m;
  if (std::regex_match(t, m, sqrt_re)) return sqrt_of_int(m[1].str());
  if (std::regex_match(t, m, surd_re)) {
    HighPrec p = parse_int(m[1].str());
    std::string qs = m[2].str();
    if (qs == "+" || qs == "-") qs += "1";
    HighPrec q = parse_int(qs);
    HighPrec r = parse_int(m[4].str());
    if (r.hi() == 0.0) throw InputError("zero denominator in surd: " + t);
    return (p + q * sqrt_of_int(m[3].str())) / r;
  }
  return parse_decimal(t);
}

std::ostream& operator<<(std::ostream& os, const HighPrec& x) { return os << x.to_string(); }

}  // namespace qclab
