#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qclab/core/polynomial.hpp"

namespace qclab {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Substitution on a finite alphabet of single characters.
class Substitution1D {
 public:
  Substitution1D(std::vector<char> alphabet, std::vector<std::string> rules);

  /// Parses "a->ab; b->a". The alphabet is the left-hand letters in order.
  static Substitution1D parse(const std::string& text);

  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& rules() const { return rules_; }
  std::size_t index_of(char letter) const;
  const std::string& rule(char letter) const { return rules_[index_of(letter)]; }
  bool primitive() const { return primitive_; }

  std::string apply(const std::string& word) const;
  std::string to_string() const;

 private:
  std::vector<char> alphabet_;
  std::vector<std::string> rules_;
  bool primitive_ = false;
};

/// M[i][j] = occurrences of letter i in rule(letter j). Columns index the
/// source letter, so letter counts transform as v' = M v.
IntMatrix abelianization(const Substitution1D& sub);

struct PisotReport {
  IntMatrix matrix;
  IntPolynomial char_poly;
  double perron = 0;
  /// Remaining roots of the irreducible factor that contains the Perron root.
  std::vector<std::complex<double>> conjugates;
  bool is_pisot = false;
  bool is_irreducible = false;
  bool is_unimodular = false;
  bool conjecture_applies = false;
  FactorCertificate certificate;
};

/// Throws InputError for non-primitive substitutions and NumericError when
/// the Perron root or some conjugate modulus cannot be separated from 1
/// by its inclusion radius.
PisotReport pisot_check(const Substitution1D& sub, double tol = 1e-12);

/// Prefix of the one-sided fixed point starting with `seed`. Throws
/// InputError when rule(seed) does not start with seed or never grows.
std::string fixed_point(const Substitution1D& sub, char seed, std::size_t length);

struct TilePoints {
  std::string types;
  /// Tile length per alphabet letter; the shortest is 1.
  std::vector<double> lengths;
  /// Left endpoints of the tiles, starting at 0.
  std::vector<double> endpoints;
};

/// Tiles follow the fixed point of the first prolongable letter, lengths from the left
/// Perron eigenvector of M. Throws InputError for non-primitive input.
TilePoints natural_tile_points(const Substitution1D& sub, std::size_t length);

}  // namespace qclab
