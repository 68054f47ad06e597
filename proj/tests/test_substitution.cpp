#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "oracle.hpp"
#include "qclab/core/error.hpp"
#include "qclab/substitution.hpp"

using namespace qclab;
using oracle::Big;

namespace {

const auto kFib = Substitution1D::parse("a->ab; b->a");
const auto kTM = Substitution1D::parse("a->ab; b->ba");
const auto kTrib = Substitution1D::parse("a->ab; b->ac; c->a");

std::vector<std::int64_t> counts(const Substitution1D& s, const std::string& w) {
  std::vector<std::int64_t> c(s.alphabet().size(), 0);
  for (char ch : w) ++c[s.index_of(ch)];
  return c;
}

}  // namespace

TEST_CASE("parsing and application") {
  CHECK(kFib.alphabet() == std::vector<char>{'a', 'b'});
  CHECK(kFib.rule('a') == "ab");
  CHECK(kFib.apply("aba") == "abaab");
  CHECK(kFib.primitive());
  CHECK(!Substitution1D::parse("a->ab; b->b").primitive());
  CHECK(Substitution1D::parse(kTrib.to_string()).rules() == kTrib.rules());
  CHECK_THROWS_AS(Substitution1D::parse("a->ac"), InputError);
  CHECK_THROWS_AS(Substitution1D::parse("a->ab; a->b"), InputError);
  CHECK_THROWS_AS(Substitution1D::parse("a=ab"), InputError);
  CHECK_THROWS_AS(Substitution1D::parse("a->"), InputError);
}

TEST_CASE("abelianization") {
  CHECK(abelianization(kFib) == IntMatrix{{1, 1}, {1, 0}});
  CHECK(abelianization(kTM) == IntMatrix{{1, 1}, {1, 1}});
  CHECK(abelianization(Substitution1D::parse("a->a")) == IntMatrix{{1}});

  // Column sums are rule lengths; letter counts transform by M.
  std::mt19937_64 rng(17);
  for (const auto& sub : {kFib, kTM, kTrib, Substitution1D::parse("a->abc; b->cab; c->bbca")}) {
    const auto m = abelianization(sub);
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < m.size(); ++i) s += m[i][j];
      CHECK(s == static_cast<std::int64_t>(sub.rules()[j].size()));
    }
    std::uniform_int_distribution<std::size_t> pick(0, sub.alphabet().size() - 1);
    for (int t = 0; t < 20; ++t) {
      std::string w;
      for (int i = 0; i < 50; ++i) w += sub.alphabet()[pick(rng)];
      const auto before = counts(sub, w), after = counts(sub, sub.apply(w));
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < m.size(); ++j) s += m[i][j] * before[j];
        CHECK(after[i] == s);
      }
    }
  }
}

TEST_CASE("Pisot predicates") {
  const auto fib = pisot_check(kFib);
  CHECK(fib.perron == doctest::Approx(static_cast<double>(oracle::phi())).epsilon(1e-14));
  CHECK(fib.is_pisot);
  CHECK(fib.is_irreducible);
  CHECK(fib.is_unimodular);
  CHECK(fib.conjecture_applies);
  REQUIRE(fib.conjugates.size() == 1);
  CHECK(fib.conjugates[0].real() == doctest::Approx(-static_cast<double>(oracle::golden())).epsilon(1e-14));

  const auto tm = pisot_check(kTM);
  CHECK(tm.char_poly == IntPolynomial({0, -2, 1}));
  CHECK(!tm.is_irreducible);
  CHECK(!tm.conjecture_applies);
  CHECK(!tm.is_unimodular);
  CHECK(tm.certificate.factor * tm.certificate.cofactor == tm.char_poly);

  Big lo = 1, hi = 2;
  for (int k = 0; k < 200; ++k) {
    const Big mid = (lo + hi) / 2;
    (mid * mid * mid - mid * mid - mid - 1 > 0 ? hi : lo) = mid;
  }
  const auto tri = pisot_check(kTrib);
  CHECK(tri.perron == doctest::Approx(static_cast<double>(lo)).epsilon(1e-14));
  CHECK(tri.is_pisot);
  CHECK(tri.is_irreducible);
  CHECK(tri.is_unimodular);
  CHECK(tri.conjecture_applies);
  CHECK(std::fabs(static_cast<double>(tri.char_poly.evaluate(static_cast<long double>(tri.perron)))) < 1e-12);

  // Relabeling the alphabet is a permutation similarity of M.
  const auto relabeled = pisot_check(Substitution1D::parse("x->y; y->yx"));
  CHECK(relabeled.char_poly == fib.char_poly);
  CHECK(relabeled.conjecture_applies == fib.conjecture_applies);
  const auto tri2 = pisot_check(Substitution1D::parse("c->a; b->ac; a->ab"));
  CHECK(tri2.char_poly == tri.char_poly);
  CHECK(tri2.conjecture_applies);

  // A non-Pisot Perron root: a -> abbb, b -> a has x^2 - x - 3, conjugate modulus above 1.
  const auto np = pisot_check(Substitution1D::parse("a->abbb; b->a"));
  CHECK(np.char_poly == IntPolynomial({-3, -1, 1}));
  CHECK(!np.is_pisot);
  CHECK(!np.conjecture_applies);
  CHECK_THROWS_AS(pisot_check(Substitution1D::parse("a->ab; b->b")), InputError);
}

TEST_CASE("fixed points") {
  CHECK(fixed_point(kFib, 'a', 8) == "abaababa");
  CHECK(fixed_point(Substitution1D::parse("a->a"), 'a', 3) == "aaa");
  CHECK(fixed_point(kTM, 'a', 8) == "abbabaab");
  const auto w = fixed_point(kFib, 'a', 1000);
  CHECK(kFib.apply(w).substr(0, 1000) == w);
  CHECK_THROWS_AS(fixed_point(kFib, 'b', 5), InputError);
  CHECK_THROWS_AS(fixed_point(kFib, 'a', 0), InputError);
}

TEST_CASE("natural tile points") {
  const double phi = static_cast<double>(oracle::phi());
  const auto fib = natural_tile_points(kFib, 5);
  CHECK(fib.types == "abaab");
  CHECK(fib.lengths[0] == doctest::Approx(phi).epsilon(1e-14));
  CHECK(fib.lengths[1] == 1.0);
  const std::vector<double> expect{0, phi, phi + 1, 2 * phi + 1, 3 * phi + 1};
  for (std::size_t i = 0; i < 5; ++i) CHECK(fib.endpoints[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  const auto unit = natural_tile_points(Substitution1D::parse("a->a"), 4);
  CHECK(unit.endpoints == std::vector<double>{0, 1, 2, 3});
  const auto tm = natural_tile_points(kTM, 4);
  CHECK(tm.lengths == std::vector<double>{1, 1});
  CHECK(tm.endpoints == std::vector<double>{0, 1, 2, 3});

  // Strictly increasing; mean tile length tends to the frequency-weighted length.
  const auto big = natural_tile_points(kFib, 20000);
  CHECK(std::is_sorted(big.endpoints.begin(), big.endpoints.end(), std::less_equal<double>()) == true);
  const double mean = (phi * phi + 1) / (phi + 1);  // frequencies phi : 1
  const double total = big.endpoints.back() + big.lengths[big.types.back() == 'a' ? 0 : 1];
  CHECK(total / 20000 == doctest::Approx(mean).epsilon(1e-3));
  CHECK_THROWS_AS(natural_tile_points(Substitution1D::parse("a->ab; b->b"), 5), InputError);
}
