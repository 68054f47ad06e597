#include "qclab/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <regex>
#include <sstream>

#include "qclab/core/error.hpp"

namespace qclab {
namespace {

bool is_primitive(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<bool>> pos(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pos[i][j] = m[i][j] > 0;
  auto p = pos;
  // Wielandt: a primitive n x n matrix has M^k > 0 for k = n^2 - 2n + 2.
  const std::size_t kmax = n * n - 2 * n + 2;
  for (std::size_t k = 1; k <= std::max<std::size_t>(kmax, 1); ++k) {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      for (std::size_t j = 0; j < n && all; ++j) all = p[i][j];
    if (all) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (p[i][l])
          for (std::size_t j = 0; j < n; ++j)
            if (pos[l][j]) next[i][j] = true;
    p = std::move(next);
  }
  return false;
}

}  // namespace

Substitution1D::Substitution1D(std::vector<char> alphabet, std::vector<std::string> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (alphabet_.empty()) throw InputError("substitution: empty alphabet");
  if (alphabet_.size() != rules_.size()) throw InputError("substitution: one rule per letter required");
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (!std::isalpha(static_cast<unsigned char>(alphabet_[i])))
      throw InputError(std::string("substitution: letters must be ASCII letters, got '") + alphabet_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (alphabet_[j] == alphabet_[i]) throw InputError(std::string("substitution: duplicate letter ") + alphabet_[i]);
  }
  for (const auto& r : rules_) {
    if (r.empty()) throw InputError("substitution: replacement words must be nonempty");
    for (char c : r)
      if (std::find(alphabet_.begin(), alphabet_.end(), c) == alphabet_.end())
        throw InputError(std::string("substitution: rule letter '") + c + "' not in alphabet");
  }
  primitive_ = is_primitive(abelianization(*this));
}

Substitution1D Substitution1D::parse(const std::string& text) {
  static const std::regex rule_re(R"(^\s*([A-Za-z])\s*->\s*([A-Za-z]+)\s*$)");
  std::vector<char> alphabet;
  std::vector<std::string> rules;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    std::smatch m;
    if (!std::regex_match(part, m, rule_re)) throw InputError("substitution: cannot parse rule '" + part + "'");
    alphabet.push_back(m[1].str()[0]);
    rules.push_back(m[2].str());
  }
  return Substitution1D(std::move(alphabet), std::move(rules));
}

std::size_t Substitution1D::index_of(char letter) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), letter);
  if (it == alphabet_.end()) throw InputError(std::string("letter '") + letter + "' not in alphabet");
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::string Substitution1D::apply(const std::string& word) const {
  std::string out;
  for (char c : word) out += rule(c);
  return out;
}

std::string Substitution1D::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (i) s += "; ";
    s += alphabet_[i];
    s += "->" + rules_[i];
  }
  return s;
}

IntMatrix abelianization(const Substitution1D& sub) {
  const std::size_t n = sub.alphabet().size();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (char c : sub.rules()[j]) ++m[sub.index_of(c)][j];
  return m;
}

PisotReport pisot_check(const Substitution1D& sub, double tol) {
  if (!sub.primitive()) throw InputError("pisot_check: substitution is not primitive");
  PisotReport r;
  r.matrix = abelianization(sub);
  r.char_poly = char_poly(r.matrix);
  r.is_unimodular = std::llabs(r.char_poly.coeff(0)) == 1;

  const auto roots = poly_roots(r.char_poly, tol);
  // The Perron root is real, simple and of maximal modulus.
  std::size_t pi = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i].value) > std::abs(roots[pi].value)) pi = i;
  const long double lambda = roots[pi].value.real();
  const long double lambda_err = roots[pi].error_bound;
  r.perron = static_cast<double>(lambda);

  r.certificate = poly_irreducible_over_Q(r.char_poly);
  r.is_irreducible = r.certificate.irreducible;

  // Irreducible factor containing lambda: the one with the smallest relative residual.
  const auto factors = factor_over_Q(r.char_poly);
  std::size_t best = 0;
  long double best_res = -1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const long double res = std::fabs(factors[i].evaluate(lambda)) / factors[i].evaluation_scale(lambda);
    if (best_res < 0 || res < best_res) {
      best_res = res;
      best = i;
    }
  }
  const IntPolynomial& minimal = factors[best];

  if (lambda - lambda_err <= 1.0L && lambda + lambda_err >= 1.0L)
    throw NumericError("pisot_check: Perron root not separated from 1 at working precision");
  bool pisot = lambda > 1.0L;
  if (minimal.degree() > 1) {
    auto conj = poly_roots(minimal, tol);
    // Drop the root closest to lambda.
    std::size_t drop = 0;
    for (std::size_t i = 1; i < conj.size(); ++i)
      if (std::abs(conj[i].value - lambda) < std::abs(conj[drop].value - lambda)) drop = i;
    for (std::size_t i = 0; i < conj.size(); ++i) {
      if (i == drop) continue;
      const long double mod = std::abs(conj[i].value);
      const long double err = conj[i].error_bound;
      if (mod + err < 1.0L) {
      } else if (mod - err > 1.0L) {
        pisot = false;
      } else {
        throw NumericError("pisot_check: conjugate modulus within its error bound of 1 (indeterminate)");
      }
      r.conjugates.emplace_back(static_cast<double>(conj[i].value.real()), static_cast<double>(conj[i].value.imag()));
    }
  }
  r.is_pisot = pisot;
  r.conjecture_applies = r.is_pisot && r.is_irreducible;
  return r;
}

std::string fixed_point(const Substitution1D& sub, char seed, std::size_t length) {
  if (length < 1) throw InputError("fixed_point: length must be >= 1");
  const std::string& img = sub.rule(seed);
  if (img[0] != seed) throw InputError(std::string("fixed_point: seed '") + seed + "' is not prolongable");
  if (img.size() == 1) return std::string(length, seed);
  std::string w(1, seed);
  while (w.size() < length) {
    std::string next = sub.apply(w);
    if (next.size() <= w.size()) throw InputError("fixed_point: iteration does not grow");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

TilePoints natural_tile_points(const Substitution1D& sub, std::size_t length) {
  if (!sub.primitive()) throw InputError("natural_tile_points: substitution is not primitive");
  const IntMatrix m = abelianization(sub);
  const std::size_t n = m.size();
  // Power iteration on (M + I)^T: same eigenvectors, strictly dominant Perron root.
  std::vector<double> v(n, 1.0), next(n);
  for (int it = 0; it < 10000; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = v[j];
      for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(m[i][j]) * v[i];
      next[j] = s;
    }
    const double norm = *std::max_element(next.begin(), next.end());
    double change = 0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] /= norm;
      change = std::max(change, std::fabs(next[j] - v[j]));
    }
    v.swap(next);
    if (change < 1e-16) break;
  }
  const double mn = *std::min_element(v.begin(), v.end());
  TilePoints tp;
  for (double x : v) tp.lengths.push_back(x / mn);
  auto seed = std::find_if(sub.alphabet().begin(), sub.alphabet().end(),
                           [&](char c) { return sub.rule(c)[0] == c; });
  if (seed == sub.alphabet().end()) throw InputError("natural_tile_points: no prolongable letter");
  tp.types = fixed_point(sub, *seed, length);
  tp.endpoints.reserve(length);
  double x = 0;
  for (char c : tp.types) {
    tp.endpoints.push_back(x);
    x += tp.lengths[sub.index_of(c)];
  }
  return tp;
}

}  // namespace qclab
