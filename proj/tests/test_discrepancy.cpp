#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "qclab/core/error.hpp"
#include "qclab/cutproject.hpp"
#include "qclab/discrepancy.hpp"

using namespace qclab;

namespace {

PointSet square(int side) {
  PointSet z;
  z.dim = 2;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double p[2] = {double(i), double(j)};
      z.push(p);
    }
  return z;
}

RegionSpec cube(double cx, double cy, double s) { return {RegionSpec::Kind::AlignedSquare, {cx, cy}, s}; }

std::size_t brute_count(const PointSet& p, const RegionSpec& r) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.at(i, 0), y = p.dim > 1 ? p.at(i, 1) : 0.0;
    if (r.kind == RegionSpec::Kind::AlignedSquare) {
      bool in = x >= r.center[0] - r.size / 2 && x < r.center[0] + r.size / 2;
      if (p.dim > 1) in = in && y >= r.center[1] - r.size / 2 && y < r.center[1] + r.size / 2;
      c += in;
    } else {
      const double d = p.dim > 1 ? std::hypot(x - r.center[0], y - r.center[1]) : std::fabs(x - r.center[0]);
      c += d < r.size;
    }
  }
  return c;
}

DiscrepancySample synthetic(double boundary, double d) {
  DiscrepancySample s;
  s.region = cube(0, 0, boundary / 4);
  s.boundary = boundary;
  s.D = d;
  return s;
}

}  // namespace

TEST_CASE("regions") {
  const auto sq = cube(0, 0, 3);
  CHECK(sq.volume() == 9);
  CHECK(sq.boundary_measure() == 12);
  const RegionSpec ball{RegionSpec::Kind::Ball, {0, 0}, 2};
  CHECK(ball.volume() == doctest::Approx(4 * M_PI));
  CHECK(ball.boundary_measure() == doctest::Approx(4 * M_PI));
  const RegionSpec seg{RegionSpec::Kind::Ball, {0}, 2};
  CHECK(seg.volume() == doctest::Approx(4.0));
  CHECK(seg.boundary_measure() == doctest::Approx(2.0));
  const double edge[2] = {1.5, 0}, beyond[2] = {-1.5, 0};
  CHECK(!sq.contains(edge));
  CHECK(sq.contains(beyond));
  CHECK_THROWS_AS(cube(0, 0, 0).validate(2), InputError);
  CHECK_THROWS_AS(sq.validate(3), InputError);
}

TEST_CASE("density estimates") {
  const auto z = square(200);
  CHECK(density_estimate(z, cube(100, 100, 50)) == 1.0);
  CHECK(density_estimate(z, {RegionSpec::Kind::Ball, {100, 100}, 60}) == doctest::Approx(1.0).epsilon(0.03));
  CHECK_THROWS_AS(density_estimate(z, cube(10, 10, 50)), InputError);
  PointSet empty;
  empty.dim = 2;
  CHECK_THROWS_AS(density_estimate(empty, cube(0, 0, 1)), InputError);

  // Fibonacci chain: density is the reciprocal mean gap, with frequencies phi : 1.
  const auto chain = generate_cps(line_scheme(parse_real("golden")), 3000);
  std::vector<double> x(chain.coords);
  std::sort(x.begin(), x.end());
  double small = 1e300, large = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    small = std::min(small, x[i + 1] - x[i]);
    large = std::max(large, x[i + 1] - x[i]);
  }
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double mean_gap = (phi * large + small) / (phi + 1);
  const RegionSpec mid{RegionSpec::Kind::Ball, {0}, 2000};
  CHECK(density_estimate(chain, mid) == doctest::Approx(1 / mean_gap).epsilon(1e-3));
}

TEST_CASE("discrepancy sweep") {
  const auto z = square(200);
  std::vector<RegionSpec> aligned, offset;
  for (int s = 4; s <= 120; s += 4) aligned.push_back(cube(100, 100, s));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> c(70, 130), sz(1, 120);
  for (int i = 0; i < 60; ++i) offset.push_back(cube(c(rng), c(rng), sz(rng)));
  for (int i = 0; i < 20; ++i) offset.push_back({RegionSpec::Kind::Ball, {c(rng), c(rng)}, sz(rng) / 2});

  for (const auto& s : discrepancy_sweep(z, 1.0, aligned)) CHECK(s.D == 0);
  for (const auto& s : discrepancy_sweep(z, 1.0, offset)) {
    CHECK(s.count == brute_count(z, s.region));
    CHECK(s.expected == doctest::Approx(s.region.volume()));
    CHECK(s.D == doctest::Approx(std::fabs(double(s.count) - s.expected)));
    CHECK(s.boundary == doctest::Approx(s.region.boundary_measure()));
    if (s.region.kind == RegionSpec::Kind::AlignedSquare) CHECK(s.D <= 4 * s.region.size + 4);
  }

  // Fibonacci chain: bounded discrepancy for intervals, translation covariant counts.
  const auto chain = generate_cps(line_scheme(parse_real("golden")), 5000);
  std::vector<double> x(chain.coords);
  std::sort(x.begin(), x.end());
  const double density = static_cast<double>(x.size() - 1) / (x.back() - x.front());
  std::vector<RegionSpec> intervals;
  std::uniform_real_distribution<double> cc(-3000, 3000), len(1, 1000);
  for (int i = 0; i < 300; ++i) intervals.push_back({RegionSpec::Kind::Ball, {cc(rng)}, len(rng)});
  const auto sw = discrepancy_sweep(chain, density, intervals);
  double worst = 0;
  for (const auto& s : sw) {
    CHECK(s.count == brute_count(chain, s.region));
    worst = std::max(worst, s.D);
  }
  CHECK(worst < 4);

  PointSet shifted = z;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    shifted.coords[2 * i] += 7;
    shifted.coords[2 * i + 1] -= 3;
  }
  std::vector<RegionSpec> moved;
  for (const auto& r : offset) moved.push_back({r.kind, {r.center[0] + 7, r.center[1] - 3}, r.size});
  const auto a = discrepancy_sweep(z, 1.0, offset), b = discrepancy_sweep(shifted, 1.0, moved);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].count == b[i].count);
  CHECK_THROWS_AS(discrepancy_sweep(z, 0.0, offset), InputError);
}

TEST_CASE("growth fit") {
  std::vector<DiscrepancySample> linear, logged;
  for (int i = 0; i < 12; ++i) {
    const double b = 10 * std::pow(10.0, i / 4.0);
    linear.push_back(synthetic(b, 0.5 * b));
    logged.push_back(synthetic(b, 0.5 * b * std::log(b)));
  }
  const auto f = growth_fit(linear);
  CHECK(f.exponent == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.intercept == doctest::Approx(std::log(0.5)));
  CHECK(!f.log_correction);
  CHECK(f.boundary.size() == 12);
  for (double r : f.residuals) CHECK(std::fabs(r) < 1e-9);

  const auto g = growth_fit(logged);
  CHECK(g.log_correction);
  CHECK(g.log_rss < 1e-18);
  CHECK(g.exponent > 1);

  // Duplicate boundary measures keep the maximum; zero bins are skipped.
  auto dup = linear;
  dup.push_back(synthetic(10, 100));
  dup.push_back(synthetic(20, 0));
  const auto h = growth_fit(dup);
  CHECK(h.max_d.front() == 100);
  CHECK(h.boundary.size() == 12);

  CHECK_THROWS_AS(growth_fit(std::vector<DiscrepancySample>(linear.begin(), linear.begin() + 7)), InputError);
  std::vector<DiscrepancySample> narrow;
  for (int i = 0; i < 10; ++i) narrow.push_back(synthetic(10 + i, 1));
  CHECK_THROWS_AS(growth_fit(narrow), InputError);
}
