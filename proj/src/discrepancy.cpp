#include "qclab/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {

void RegionSpec::validate(int dim) const {
  if (!(size > 0) || !std::isfinite(size)) throw InputError("region size must be positive and finite");
  if (static_cast<int>(center.size()) != dim) throw InputError("region center has the wrong dimension");
}

bool RegionSpec::contains(std::span<const double> x) const {
  if (kind == Kind::AlignedSquare) {
    for (std::size_t c = 0; c < center.size(); ++c) {
      const double lo = center[c] - size / 2;
      if (x[c] < lo || x[c] >= lo + size) return false;
    }
    return true;
  }
  double r2 = 0;
  for (std::size_t c = 0; c < center.size(); ++c) r2 += (x[c] - center[c]) * (x[c] - center[c]);
  return r2 < size * size;
}

namespace {

double unit_ball_volume(int d) { return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1); }

}  // namespace

double RegionSpec::volume() const {
  const int d = static_cast<int>(center.size());
  return kind == Kind::AlignedSquare ? std::pow(size, d) : unit_ball_volume(d) * std::pow(size, d);
}

double RegionSpec::boundary_measure() const {
  const int d = static_cast<int>(center.size());
  if (kind == Kind::AlignedSquare) return 2.0 * d * std::pow(size, d - 1);
  return d * unit_ball_volume(d) * std::pow(size, d - 1);
}

namespace {

// Points sorted by first coordinate; a region scans only its slab.
struct SlabIndex {
  const PointSet* points;
  std::vector<std::size_t> order;
  std::vector<double> key;

  explicit SlabIndex(const PointSet& p) : points(&p), order(p.size()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.at(a, 0) < p.at(b, 0); });
    for (auto i : order) key.push_back(p.at(i, 0));
  }

  std::size_t count(const RegionSpec& r) const {
    const double half = r.kind == RegionSpec::Kind::AlignedSquare ? r.size / 2 : r.size;
    auto lo = std::lower_bound(key.begin(), key.end(), r.center[0] - half);
    auto hi = std::upper_bound(key.begin(), key.end(), r.center[0] + half);
    std::size_t n = 0;
    for (auto it = lo; it != hi; ++it) {
      if (r.contains(points->point(order[static_cast<std::size_t>(it - key.begin())]))) ++n;
    }
    return n;
  }
};

}  // namespace

double density_estimate(const PointSet& points, const RegionSpec& region) {
  if (points.empty()) throw InputError("density_estimate: empty point set");
  region.validate(points.dim);
  const double half = region.kind == RegionSpec::Kind::AlignedSquare ? region.size / 2 : region.size;
  for (int c = 0; c < points.dim; ++c) {
    double lo = points.at(0, c), hi = lo;
    for (std::size_t i = 1; i < points.size(); ++i) {
      lo = std::min(lo, points.at(i, c));
      hi = std::max(hi, points.at(i, c));
    }
    const auto cc = static_cast<std::size_t>(c);
    if (region.center[cc] - half < lo || region.center[cc] + half > hi)
      throw InputError("density_estimate: region exceeds the point set's footprint");
  }
  return static_cast<double>(SlabIndex(points).count(region)) / region.volume();
}

std::vector<DiscrepancySample> discrepancy_sweep(const PointSet& points, double density,
                                                 const std::vector<RegionSpec>& regions) {
  if (!(density > 0)) throw InputError("discrepancy_sweep: density must be positive");
  for (const auto& r : regions) r.validate(points.dim);
  const SlabIndex index(points);
  std::vector<DiscrepancySample> out(regions.size());
  parallel_for(regions.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      auto& s = out[i];
      s.region = regions[i];
      s.count = index.count(regions[i]);
      s.expected = density * regions[i].volume();
      s.D = std::fabs(static_cast<double>(s.count) - s.expected);
      s.boundary = regions[i].boundary_measure();
    }
  });
  return out;
}

GrowthFit growth_fit(const std::vector<DiscrepancySample>& samples) {
  if (samples.size() < 8) throw InputError("growth_fit: at least 8 samples required");
  std::vector<std::pair<double, double>> bd;
  for (const auto& s : samples) bd.emplace_back(s.boundary, s.D);
  std::sort(bd.begin(), bd.end());
  if (!(bd.front().first > 0) || bd.back().first / bd.front().first < 100)
    throw InputError("growth_fit: boundary measures must span at least two decades");

  GrowthFit fit;
  for (std::size_t i = 0; i < bd.size();) {
    std::size_t j = i;
    double m = 0;
    while (j < bd.size() && bd[j].first <= bd[i].first * (1 + 1e-12)) m = std::max(m, bd[j++].second);
    if (m > 0) {
      fit.boundary.push_back(bd[i].first);
      fit.max_d.push_back(m);
    }
    i = j;
  }
  const std::size_t n = fit.boundary.size();
  if (n < 3) throw InputError("growth_fit: fewer than three bins with nonzero discrepancy");

  std::vector<double> x(n), y(n);
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(fit.boundary[i]);
    y[i] = std::log(fit.max_d[i]);
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = ym - fit.exponent * xm;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals.push_back(y[i] - fit.intercept - fit.exponent * x[i]);
    fit.power_rss += fit.residuals.back() * fit.residuals.back();
  }

  // log maxD = log c + log B + log log B, defined for B > 1.
  if (fit.boundary.front() > 1) {
    double cm = 0;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = y[i] - x[i] - std::log(x[i]);
      cm += z[i];
    }
    cm /= static_cast<double>(n);
    for (double v : z) fit.log_rss += (v - cm) * (v - cm);
    fit.log_correction = fit.log_rss < fit.power_rss;
  } else {
    fit.log_rss = std::numeric_limits<double>::infinity();
  }
  return fit;
}

}  // namespace qclab
