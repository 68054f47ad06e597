#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "oracle.hpp"
#include "qclab/core/error.hpp"
#include "qclab/tilings.hpp"

using namespace qclab;

namespace {

using C = std::complex<double>;

C to_c(Gauss z, double d) { return {static_cast<double>(z.re) / d, static_cast<double>(z.im) / d}; }

/// Barycentric containment with a small slack.
bool inside(C p, C a, C b, C c, double slack = 1e-12) {
  const auto cross = [](C u, C v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double area = cross(b - a, c - a);
  const double l1 = cross(b - p, c - p) / area, l2 = cross(c - p, a - p) / area, l3 = cross(a - p, b - p) / area;
  return l1 >= -slack && l2 >= -slack && l3 >= -slack;
}

bool strictly_inside(C p, C a, C b, C c) { return inside(p, a, b, c, -1e-9); }

Int128 abs128(Int128 x) { return x < 0 ? -x : x; }

Cyclo5 total_area(const PenrosePatch& p) {
  Cyclo5 s = Cyclo5::integer(0);
  for (const auto& t : p.tiles) s = s + doubled_area_i(t) * Cyclo5::integer(is_reflected(t) ? -1 : 1);
  return s;
}

}  // namespace

TEST_CASE("Gaussian and cyclotomic arithmetic") {
  CHECK(Gauss{2, 1} * Gauss{2, -1} == Gauss{5, 0});
  CHECK((Gauss{3, 4}).norm() == 25);
  for (int k = -12; k <= 12; ++k) {
    CHECK(std::abs(Cyclo5::zeta(k).value() - std::polar(1.0, 2 * M_PI * k / 5)) < 1e-12);
    CHECK(std::abs(Cyclo5::zeta10(k).value() - std::polar(1.0, M_PI * k / 5)) < 1e-12);
  }
  const double phi = static_cast<double>(oracle::phi());
  CHECK(std::abs(Cyclo5::phi().value() - C(phi, 0)) < 1e-12);
  CHECK(Cyclo5::phi() * Cyclo5::phi_inverse() == Cyclo5::integer(1));
  CHECK(Cyclo5::phi() * Cyclo5::phi() == Cyclo5::phi() + Cyclo5::integer(1));
  CHECK(Cyclo5::phi().is_real());
  CHECK(!Cyclo5::zeta(1).is_real());
  CHECK(Cyclo5::zeta(5) == Cyclo5::integer(1));
}

TEST_CASE("pinwheel rule") {
  const auto rule = pinwheel_rule();
  for (const auto& ch : rule.children) CHECK(ch.u.norm() == 5);  // modulus 1/sqrt(5) after dividing by 5
  std::size_t reflected = 0;
  for (const auto& ch : rule.children) reflected += ch.reflected;
  CHECK(reflected == 3);

  const auto g1 = substitute(pinwheel_seed(), 1);
  REQUIRE(g1.tiles.size() == 5);
  CHECK(g1.denominator() == 5);
  const C a = 0, b = 2, c = C(0, 1);
  for (const auto& t : g1.tiles) {
    CHECK(abs128(doubled_area_numerator(g1, t)) == 10);  // 2/5 of the parent's doubled area 2
    for (auto v : g1.vertices(t)) CHECK(inside(to_c(v, 5), a, b, c));
  }

  // Children interiors cover the parent exactly once.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int s = 0; s < 4000; ++s) {
    double x = u(rng), y = u(rng);
    if (x + y > 1) x = 1 - x, y = 1 - y;
    const C p = a + x * (b - a) + y * (c - a);
    int hits = 0, strict = 0;
    for (const auto& t : g1.tiles) {
      const auto v = g1.vertices(t);
      hits += inside(p, to_c(v[0], 5), to_c(v[1], 5), to_c(v[2], 5));
      strict += strictly_inside(p, to_c(v[0], 5), to_c(v[1], 5), to_c(v[2], 5));
    }
    CHECK(hits >= 1);
    CHECK(strict <= 1);
  }
}

TEST_CASE("pinwheel substitution") {
  CHECK(substitute(pinwheel_seed(), 0).tiles.size() == 1);
  CHECK(substitute(pinwheel_seed(), 3).tiles.size() == 125);
  // Two single steps equal one double step.
  const auto twice = substitute(substitute(pinwheel_seed(), 1), 1), direct = substitute(pinwheel_seed(), 2);
  REQUIRE(twice.tiles.size() == direct.tiles.size());
  for (std::size_t i = 0; i < direct.tiles.size(); ++i) {
    CHECK(twice.tiles[i].w == direct.tiles[i].w);
    CHECK(twice.tiles[i].t == direct.tiles[i].t);
    CHECK(twice.tiles[i].reflected == direct.tiles[i].reflected);
  }
  // Exact area conservation.
  for (int g = 0; g <= 6; ++g) {
    const auto p = substitute(pinwheel_seed(), g);
    Int128 sum = 0;
    Int128 each = 2;
    for (int i = 0; i < g; ++i) each *= 5;
    for (const auto& t : p.tiles) {
      const Int128 a = doubled_area_numerator(p, t);
      CHECK(abs128(a) == each);
      CHECK((a < 0) == t.reflected);
      sum += abs128(a);
    }
    Int128 expect = 2;
    for (int i = 0; i < 2 * g; ++i) expect *= 5;
    CHECK(sum == expect);
  }
  CHECK_THROWS_AS(substitute(pinwheel_seed(), -1), InputError);
  CHECK_THROWS_AS(substitute(pinwheel_seed(), 5, 100), ResourceError);
}

TEST_CASE("pinwheel reference points") {
  const auto seed = reference_points(pinwheel_seed());
  REQUIRE(seed.size() == 1);
  CHECK(seed.at(0, 0) == 0.5);
  CHECK(seed.at(0, 1) == 0.5);

  for (int g = 1; g <= 3; ++g) {
    const auto p = substitute(pinwheel_seed(), g);
    const auto ref = reference_points(p, false);
    REQUIRE(ref.size() == p.tiles.size());
    std::set<std::pair<double, double>> distinct;
    const double d = static_cast<double>(p.denominator());
    for (std::size_t i = 0; i < p.tiles.size(); ++i) {
      // A quarter of the long leg plus half of the short leg, from the right-angle corner.
      const auto v = p.vertices(p.tiles[i]);
      const C v0 = to_c(v[0], d), expect = v0 + 0.25 * (to_c(v[1], d) - v0) + 0.5 * (to_c(v[2], d) - v0);
      CHECK(std::abs(C(ref.at(i, 0), ref.at(i, 1)) - expect) < 1e-12);
      CHECK(strictly_inside(expect, to_c(v[0], d), to_c(v[1], d), to_c(v[2], d)));
      distinct.emplace(ref.at(i, 0), ref.at(i, 1));
    }
    CHECK(distinct.size() == p.tiles.size());
  }

  // Unit-area scaling gives density one away from the boundary.
  const auto p6 = substitute(pinwheel_seed(), 6);
  const auto pts = reference_points(p6);
  const double s = std::pow(5.0, 3);  // legs 2 s and s
  const double r_in = (3 * s - std::sqrt(5.0) * s) / 2;
  const double r = 0.85 * r_in;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::hypot(pts.at(i, 0) - r_in, pts.at(i, 1) - r_in) < r) ++count;
  CHECK(static_cast<double>(count) == doctest::Approx(M_PI * r * r).epsilon(0.03));
}

TEST_CASE("orientation census") {
  CHECK(orientation_census(pinwheel_seed()) == 1);
  std::size_t prev = 1;
  for (int g = 1; g <= 6; ++g) {
    const auto n = orientation_census(substitute(pinwheel_seed(), g));
    CHECK(n > prev);
    prev = n;
  }
  CHECK(orientation_census(penrose_seed()) == 10);
  for (int g = 1; g <= 6; ++g) CHECK(orientation_census(substitute(penrose_seed(), g)) <= 20);
}

TEST_CASE("Robinson rule") {
  const auto rule = robinson_penrose_rule();
  CHECK(rule.children[0].size() == 2);
  CHECK(rule.children[1].size() == 3);

  const auto seed = penrose_seed();
  CHECK(seed.tiles.size() == 10);
  std::size_t n0 = 10, n1 = 0;
  const Cyclo5 area = total_area(seed);
  const double phi = static_cast<double>(oracle::phi());
  for (int g = 1; g <= 7; ++g) {
    const auto p = substitute(seed, g);
    std::tie(n0, n1) = std::pair{n0 + n1, n0 + 2 * n1};
    std::size_t c0 = 0;
    for (const auto& t : p.tiles) c0 += t.type == 0;
    CHECK(c0 == n0);
    CHECK(p.tiles.size() - c0 == n1);
    CHECK(total_area(p) == area);
    if (g <= 4) {
      const double scale = std::pow(phi, g);
      for (const auto& t : p.tiles) {
        CHECK(std::abs((t.v[1] - t.v[0]).value()) * scale == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs((t.v[2] - t.v[0]).value()) * scale == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs((t.v[2] - t.v[1]).value()) * scale == doctest::Approx(t.type == 0 ? 1 / phi : phi).epsilon(1e-12));
      }
    }
  }

  // Five-fold rotation maps the vertex set to itself.
  const auto p = substitute(seed, 4);
  std::set<Cyclo5> verts, rotated;
  for (const auto& t : p.tiles)
    for (const auto& v : t.v) {
      verts.insert(v);
      rotated.insert(v * Cyclo5::zeta(1));
    }
  CHECK(verts == rotated);

  CHECK_THROWS_AS(substitute(seed, 40, 1000), ResourceError);
  CHECK_THROWS_AS(reference_points(seed), InputError);
}

TEST_CASE("tiling graphs") {
  const auto single = extract_graph(pinwheel_seed());
  CHECK(single.graph.vertex_count == 3);
  CHECK(single.graph.edges.size() == 3);
  CHECK(single.euler_characteristic() == 1);
  CHECK(single.midpoint_vertices == 0);

  // Disc-shaped patches have Euler characteristic one; vertex counts match a
  // direct set of exact corners.
  for (int g = 1; g <= 4; ++g) {
    const auto p = substitute(pinwheel_seed(), g);
    const auto tg = extract_graph(p);
    std::set<Gauss> corners;
    for (const auto& t : p.tiles)
      for (auto v : p.vertices(t)) corners.insert(v);
    CHECK(tg.graph.vertex_count == corners.size());
    CHECK(tg.faces == p.tiles.size());
    CHECK(tg.euler_characteristic() == 1);
    if (g >= 2) CHECK(tg.midpoint_vertices > 0);
  }
  for (int g = 0; g <= 5; ++g) {
    const auto p = substitute(penrose_seed(), g);
    std::set<Cyclo5> corners;
    for (const auto& t : p.tiles) corners.insert(t.v.begin(), t.v.end());
    const auto tri = extract_graph(p, PenroseGraphVariant::Triangles);
    CHECK(tri.graph.vertex_count == corners.size());
    CHECK(tri.euler_characteristic() == 1);
    const auto rh = extract_graph(p, PenroseGraphVariant::Rhombi);
    CHECK(rh.graph.vertex_count == corners.size());
    if (g > 0) CHECK(rh.faces < tri.faces);  // seed bases all lie on the boundary
    CHECK(rh.euler_characteristic() == 1);
    for (const auto& [i, j] : rh.graph.edges) CHECK(i < j);
  }

  // Vertex order and edges do not depend on tile order.
  auto p = substitute(pinwheel_seed(), 3);
  const auto before = extract_graph(p);
  std::mt19937_64 rng(9);
  std::shuffle(p.tiles.begin(), p.tiles.end(), rng);
  const auto after = extract_graph(p);
  CHECK(before.positions == after.positions);
  CHECK(before.graph.edges == after.graph.edges);
}

TEST_CASE("tile records") {
  const auto p = substitute(pinwheel_seed(), 2);
  const auto rec = tile_records(p);
  REQUIRE(rec.size() == p.tiles.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(rec[i].reflected == p.tiles[i].reflected);
    CHECK(rec[i].tx == doctest::Approx(static_cast<double>(p.tiles[i].t.re) / 25));
  }
  const auto pr = tile_records(substitute(penrose_seed(), 2));
  for (const auto& r : pr) CHECK(std::fabs(std::remainder(r.rotation_deg, 36.0)) < 1e-9);
}
