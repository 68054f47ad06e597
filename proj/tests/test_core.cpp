#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "oracle.hpp"
#include "qclab/core/bandset.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/highprec.hpp"
#include "qclab/core/parallel.hpp"
#include "qclab/core/polynomial.hpp"
#include "qclab/core/tridiagonal.hpp"

using namespace qclab;
using oracle::Big;

TEST_CASE("high precision arithmetic stays within its error bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng), b = u(rng);
    const HighPrec x(a), y(b);
    const auto check = [](const HighPrec& got, const Big& exact) {
      CHECK(boost::multiprecision::abs(oracle::big(got) - exact) <= Big(got.error_bound()) + Big(1e-40));
    };
    check(x + y, Big(a) + Big(b));
    check(x - y, Big(a) - Big(b));
    check(x * y, Big(a) * Big(b));
    check(x / y, Big(a) / Big(b));
    check(sqrt(abs(x)), boost::multiprecision::sqrt(Big(std::fabs(a))));
    check((x * y + x) / (y - HighPrec(0.5)), (Big(a) * Big(b) + Big(a)) / (Big(b) - Big(0.5)));
  }
}

TEST_CASE("irrational literals parse to about 30 correct digits") {
  const auto err = [](const char* tok, const Big& exact) {
    const HighPrec v = parse_real(tok);
    const Big e = boost::multiprecision::abs(oracle::big(v) - exact);
    CHECK(e <= Big(v.error_bound()));
    CHECK(e < Big(1e-29));
  };
  err("golden", oracle::golden());
  err("phi", oracle::phi());
  err("sqrt2", boost::multiprecision::sqrt(Big(2)));
  err("sqrt(3)", boost::multiprecision::sqrt(Big(3)));
  err("(1+2*sqrt7)/3", (1 + 2 * boost::multiprecision::sqrt(Big(7))) / 3);
  err("(-4+1*sqrt(11))/5", (-4 + boost::multiprecision::sqrt(Big(11))) / 5);
  err("0.4142135623730950488016887242097", Big("0.4142135623730950488016887242097"));
  err("-1.5e-3", Big("-0.0015"));
  CHECK_THROWS_AS(parse_real("pi"), InputError);
  CHECK_THROWS_AS(parse_real("sqrt(-2)"), InputError);
  CHECK_THROWS_AS(parse_real("(1+sqrt5)/0"), InputError);
  CHECK_THROWS_AS(parse_real(""), InputError);
}

TEST_CASE("floor, frac and distance to integers") {
  const HighPrec g = parse_real("golden");
  CHECK(g.floor_int() == 0);
  CHECK((g * HighPrec(std::int64_t{1000})).floor_int() == 618);
  CHECK(HighPrec(-0.5).floor_int() == -1);
  const Big f = oracle::frac(oracle::golden() * 7);
  CHECK(boost::multiprecision::abs(oracle::big(frac(g * HighPrec(std::int64_t{7}))) - f) < Big(1e-29));
  CHECK(boost::multiprecision::abs(oracle::big(dist_to_int(g * HighPrec(std::int64_t{7}))) - oracle::dist_int(oracle::golden() * 7)) <
        Big(1e-29));
}

TEST_CASE("band set normalization") {
  CHECK(BandSet::normalize({}).empty());
  CHECK(BandSet::normalize({}).measure() == 0.0);
  CHECK(BandSet::normalize({{0, 1}, {0.5, 2}}).bands() == std::vector<Interval>{{0, 2}});
  CHECK(BandSet::normalize({{1, 2}, {0, 0.5}}).bands() == std::vector<Interval>{{0, 0.5}, {1, 2}});
  CHECK_THROWS_AS(BandSet::normalize({{2, 1}}), InputError);
  CHECK_THROWS_AS(BandSet::normalize({{NAN, 1}}), InputError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 100);
  for (int t = 0; t < 100; ++t) {
    std::vector<Interval> ivs;
    for (int i = 0; i < 20; ++i) {
      const double a = u(rng), b = u(rng);
      ivs.push_back({std::min(a, b), std::max(a, b)});
    }
    const auto once = BandSet::normalize(ivs);
    CHECK(BandSet::normalize(once.bands()) == once);
    for (std::size_t i = 0; i + 1 < once.size(); ++i) CHECK(once.bands()[i].hi < once.bands()[i + 1].lo);
  }
  // Disjoint inputs keep their measure.
  const auto d = BandSet::normalize({{5, 6}, {0, 1}, {2, 4}});
  CHECK(d.measure() == doctest::Approx(4.0));
  CHECK(d.contains(3.0));
  CHECK(!d.contains(1.5));
  CHECK(d.contains(1.0));
}

TEST_CASE("band set sums") {
  CHECK(minkowski_sum(BandSet::normalize({{-2, 2}}), BandSet::normalize({{-2, 2}})).bands() ==
        std::vector<Interval>{{-4, 4}});
  CHECK(minkowski_sum(BandSet::normalize({{0, 1}}), BandSet::normalize({{0, 0.1}, {0.9, 1}})).bands() ==
        std::vector<Interval>{{0, 2}});
  const auto s = minkowski_sum(BandSet::normalize({{0, 0.1}}), BandSet::normalize({{0, 0.1}, {1, 1.1}}));
  REQUIRE(s.size() == 2);
  CHECK(s.bands()[0].lo == 0.0);
  CHECK(s.bands()[0].hi == doctest::Approx(0.2));
  CHECK(s.bands()[1].lo == 1.0);
  CHECK(s.bands()[1].hi == doctest::Approx(1.2));
}

TEST_CASE("band set sum agrees with a sampled, dilated union") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_int_distribution<int> nb(1, 4);
  const double eps = 1e-3;
  for (int t = 0; t < 100; ++t) {
    auto random_set = [&] {
      std::vector<Interval> ivs;
      const int n = nb(rng);
      for (int i = 0; i < n; ++i) {
        const double a = u(rng);
        ivs.push_back({a, a + 0.3 * u(rng) / 10});
      }
      return BandSet::normalize(ivs);
    };
    const auto a = random_set(), b = random_set();
    auto samples = [&](const BandSet& s) {
      std::vector<double> xs;
      for (const auto& iv : s.bands()) {
        const int n = static_cast<int>(std::ceil(iv.length() / eps)) + 1;
        for (int i = 0; i < n; ++i) xs.push_back(std::min(iv.hi, iv.lo + i * eps));
        xs.push_back(iv.hi);
      }
      return xs;
    };
    std::vector<Interval> dilated;
    for (double x : samples(a))
      for (double y : samples(b)) dilated.push_back({x + y - eps, x + y + eps});
    const auto brute = BandSet::normalize(dilated, 0.0);
    const auto exact = minkowski_sum(a, b);
    CHECK(symmetric_difference_measure(exact, brute) <= 2 * eps * static_cast<double>(brute.size()) + 1e-9);
  }
}

TEST_CASE("tridiagonal eigenvalues") {
  const std::vector<double> one{5.0};
  const auto single = eig_sym_tridiagonal(one, {});
  REQUIRE(single.size() == 1);
  CHECK(std::fabs(single[0] - 5.0) <= 1e-12);

  for (int n : {1, 2, 5, 17, 64}) {
    std::vector<double> diag(static_cast<std::size_t>(n), 0.0), off(static_cast<std::size_t>(n - 1), 1.0);
    const auto ev = eig_sym_tridiagonal(diag, off);
    REQUIRE(ev.size() == static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
      CHECK(ev[static_cast<std::size_t>(n - j)] == doctest::Approx(2 * std::cos(j * std::numbers::pi / (n + 1))).epsilon(1e-11));
  }

  // 3x3 against the trigonometric solution of the characteristic cubic.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> d{u(rng), u(rng), u(rng)}, e{u(rng), u(rng)};
    const Big a = Big(d[0]), b = Big(d[1]), c = Big(d[2]), p = Big(e[0]), q = Big(e[1]);
    // x^3 + c2 x^2 + c1 x + c0
    const Big c2 = -(a + b + c);
    const Big c1 = a * b + b * c + a * c - p * p - q * q;
    const Big c0 = -(a * b * c - a * q * q - c * p * p);
    const Big shift = -c2 / 3;
    const Big pp = c1 - c2 * c2 / 3;
    const Big qq = 2 * c2 * c2 * c2 / 27 - c2 * c1 / 3 + c0;
    const Big r = 2 * boost::multiprecision::sqrt(-pp / 3);
    Big arg = 3 * qq / (pp * r);
    if (arg > 1) arg = 1;
    if (arg < -1) arg = -1;
    const Big ang = boost::multiprecision::acos(arg) / 3;
    std::vector<double> roots;
    for (int k = 0; k < 3; ++k)
      roots.push_back(static_cast<double>(shift + r * boost::multiprecision::cos(ang - 2 * boost::math::constants::pi<Big>() * k / 3)));
    std::sort(roots.begin(), roots.end());
    const auto ev = eig_sym_tridiagonal(d, e);
    for (int k = 0; k < 3; ++k) CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx(roots[static_cast<std::size_t>(k)]).epsilon(1e-10));
  }

  // Monotone output, right count, trace identity.
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 10 + static_cast<std::size_t>(t) * 13;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = u(rng);
    for (auto& x : e) x = u(rng);
    const double tol = 1e-12;
    const auto ev = eig_sym_tridiagonal(d, e, tol);
    REQUIRE(ev.size() == n);
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    double tr = 0, s = 0;
    for (double x : d) tr += x;
    for (double x : ev) s += x;
    CHECK(std::fabs(tr - s) <= static_cast<double>(n) * tol * 10);
    CHECK(sturm_count(d, e, ev.back() + 1e-6) == n);
    CHECK(sturm_count(d, e, ev.front() - 1e-6) == 0);
  }
  CHECK_THROWS_AS(eig_sym_tridiagonal(one, one), InputError);
  CHECK_THROWS_AS(eig_sym_tridiagonal(one, {}, 0.0), InputError);
}

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly({{1, 1}, {1, 0}}) == IntPolynomial({-1, -1, 1}));
  CHECK(char_poly({{1, 0}, {0, 1}}) == IntPolynomial({1, -2, 1}));
  CHECK(char_poly({{1, 1}, {1, 1}}) == IntPolynomial({0, -2, 1}));
  CHECK(char_poly({{1, 1, 0}, {1, 0, 1}, {1, 0, 0}}) == IntPolynomial({-1, -1, -1, 1}));
  CHECK_THROWS_AS(char_poly({{1, 2}}), InputError);

  // Cofactor expansion oracle on random 3x3 and 4x4 integer matrices.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-5, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<std::int64_t>> m(3, std::vector<std::int64_t>(3));
    for (auto& row : m)
      for (auto& x : row) x = u(rng);
    // det(xI - M) at integer points x determines the cubic.
    const auto p = char_poly(m);
    for (std::int64_t x = -3; x <= 3; ++x) {
      std::int64_t a[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? x : 0) - m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const std::int64_t det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
      CHECK(std::llround(p.evaluate(static_cast<long double>(x))) == det);
    }
  }
}

TEST_CASE("polynomial roots") {
  const auto fib = poly_roots(IntPolynomial({-1, -1, 1}));
  REQUIRE(fib.size() == 2);
  CHECK(static_cast<double>(fib[0].value.real()) == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-13));
  CHECK(static_cast<double>(fib[1].value.real()) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-13));
  CHECK(fib[0].value.imag() == 0);

  const auto i = poly_roots(IntPolynomial({1, 0, 1}));
  REQUIRE(i.size() == 2);
  CHECK(std::fabs(static_cast<double>(i[0].value.real())) < 1e-15);
  CHECK(std::fabs(static_cast<double>(i[1].value.imag())) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(i[0].value.imag() == -i[1].value.imag());

  // Tribonacci: real root by bisection in 50 digits; the product of the roots
  // is 1, so the complex pair has modulus 1/sqrt(root).
  Big lo = 1, hi = 2;
  for (int k = 0; k < 200; ++k) {
    const Big mid = (lo + hi) / 2;
    (mid * mid * mid - mid * mid - mid - 1 > 0 ? hi : lo) = mid;
  }
  const auto tri = poly_roots(IntPolynomial({-1, -1, -1, 1}));
  REQUIRE(tri.size() == 3);
  int real = 0;
  for (const auto& r : tri) {
    if (r.value.imag() == 0) {
      ++real;
      CHECK(static_cast<double>(r.value.real()) == doctest::Approx(static_cast<double>(lo)).epsilon(1e-13));
      CHECK(static_cast<double>(r.value.real()) == doctest::Approx(1.8393).epsilon(1e-4));
    } else {
      CHECK(static_cast<double>(std::abs(r.value)) == doctest::Approx(static_cast<double>(1 / boost::multiprecision::sqrt(lo))).epsilon(1e-12));
      CHECK(std::abs(r.value) < 1);
    }
  }
  CHECK(real == 1);
  CHECK_THROWS_AS(poly_roots(IntPolynomial({3})), InputError);

  // Residual at every root, for random characteristic polynomials.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-4, 4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    for (auto& row : m)
      for (auto& x : row) x = u(rng);
    const auto p = char_poly(m);
    const double tol = 1e-9;
    for (const auto& r : poly_roots(p, tol)) CHECK(std::abs(p.evaluate(r.value)) <= tol * p.evaluation_scale(r.value));
  }
}

TEST_CASE("irreducibility with certificates") {
  CHECK(poly_irreducible_over_Q(IntPolynomial({-1, -1, 1})).irreducible);
  CHECK(poly_irreducible_over_Q(IntPolynomial({-1, -1, -1, 1})).irreducible);
  CHECK(poly_irreducible_over_Q(IntPolynomial({1, 1, 1, 1, 1})).irreducible);

  const auto tm = poly_irreducible_over_Q(IntPolynomial({0, -2, 1}));
  CHECK(!tm.irreducible);
  CHECK(tm.factor * tm.cofactor == IntPolynomial({0, -2, 1}));
  CHECK((tm.factor == IntPolynomial({0, 1}) || tm.cofactor == IntPolynomial({0, 1})));

  // x^4 + 4 has no rational root but splits into two quadratics.
  const auto sg = poly_irreducible_over_Q(IntPolynomial({4, 0, 0, 0, 1}));
  CHECK(!sg.irreducible);
  CHECK(sg.factor.degree() == 2);
  CHECK(sg.factor * sg.cofactor == IntPolynomial({4, 0, 0, 0, 1}));

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> u(-3, 3), deg(1, 4);
  for (int t = 0; t < 60; ++t) {
    auto rnd = [&] {
      std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = u(rng);
      c.back() = 1;
      return IntPolynomial(c);
    };
    const auto p = rnd() * rnd();
    const auto cert = poly_irreducible_over_Q(p);
    CHECK(!cert.irreducible);
    CHECK(cert.factor * cert.cofactor == p);
    CHECK(cert.factor.degree() >= 1);
    CHECK(cert.factor.degree() <= cert.cofactor.degree());

    IntPolynomial prod({1});
    for (const auto& f : factor_over_Q(p)) {
      CHECK(poly_irreducible_over_Q(f).irreducible);
      prod = prod * f;
    }
    CHECK((prod == p || prod * IntPolynomial({-1}) == p));
  }
  CHECK_THROWS_AS(poly_irreducible_over_Q(IntPolynomial({5})), InputError);
  std::vector<std::int64_t> big(14, 1);
  CHECK_THROWS_AS(poly_irreducible_over_Q(IntPolynomial(big)), InputError);
}

TEST_CASE("parallel loops cover every index once and rethrow the first failure") {
  for (std::size_t threads : {1u, 3u, 8u}) {
    set_thread_count(threads);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(100, [](std::size_t b, std::size_t) {
                      if (b < 100) throw InputError("chunk " + std::to_string(b));
                    }),
                    InputError);
  }
  set_thread_count(0);
  CHECK(thread_count() >= 1);
}
