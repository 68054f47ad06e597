#include "qclab/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {

KGrid KGrid::cartesian(double extent, double step) {
  KGrid g;
  g.kind = Kind::Cartesian;
  g.extent = extent;
  g.step = step;
  g.validate();
  return g;
}

KGrid KGrid::polar(double extent, double dr, int angles) {
  KGrid g;
  g.kind = Kind::Polar;
  g.extent = extent;
  g.dr = dr;
  g.angles = angles;
  g.validate();
  return g;
}

void KGrid::validate() const {
  if (!(extent >= 0) || !std::isfinite(extent)) throw InputError("KGrid: extent must be finite and >= 0");
  if (kind == Kind::Cartesian && !(step > 0)) throw InputError("KGrid: step must be positive");
  if (kind == Kind::Polar && (!(dr > 0) || angles < 1)) throw InputError("KGrid: dr and angles must be positive");
  const double per_axis = kind == Kind::Cartesian ? extent / step : extent / dr;
  if (per_axis > 1e5) throw ResourceError("KGrid: more than 1e5 samples per axis");
}

std::size_t KGrid::radius_count() const { return static_cast<std::size_t>(std::floor(extent / dr + 1e-9)) + 1; }

std::vector<double> KGrid::nodes(int dim) const {
  validate();
  std::vector<double> out;
  if (kind == Kind::Polar) {
    if (dim != 2) throw InputError("KGrid: polar grids are two-dimensional");
    for (std::size_t i = 0; i < radius_count(); ++i) {
      const double r = static_cast<double>(i) * dr;
      for (int j = 0; j < angles; ++j) {
        const double t = 2 * std::numbers::pi * j / angles;
        out.push_back(r * std::cos(t));
        out.push_back(r * std::sin(t));
      }
    }
    return out;
  }
  if (dim < 1 || dim > 3) throw InputError("KGrid: cartesian grids support dimensions 1 to 3");
  const auto m = static_cast<std::int64_t>(std::floor(extent / step + 1e-9));
  const std::int64_t side = 2 * m + 1;
  std::int64_t total = 1;
  for (int c = 0; c < dim; ++c) total *= side;
  if (total > 50'000'000) throw ResourceError("KGrid: more than 5e7 grid nodes");
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    std::vector<double> node(static_cast<std::size_t>(dim));
    for (int c = dim - 1; c >= 0; --c) {
      node[static_cast<std::size_t>(c)] = static_cast<double>(rest % side - m) * step;
      rest /= side;
    }
    out.insert(out.end(), node.begin(), node.end());
  }
  return out;
}

std::vector<double> structure_factor(const PointSet& points, std::span<const double> kvectors, Taper taper) {
  if (points.empty()) throw InputError("structure_factor: empty point set");
  const auto dim = static_cast<std::size_t>(points.dim);
  if (kvectors.size() % dim != 0) throw InputError("structure_factor: k-vector length is not a multiple of the dimension");
  const std::size_t n = points.size();

  std::vector<double> w(n, 1.0);
  double norm = static_cast<double>(n);
  if (taper.kind == Taper::Kind::Gaussian) {
    if (!(taper.sigma > 0)) throw InputError("structure_factor: taper sigma must be positive");
    std::vector<double> c(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d) c[d] += points.coords[i * dim + d];
    for (auto& v : c) v /= static_cast<double>(n);
    norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r2 = 0;
      for (std::size_t d = 0; d < dim; ++d) r2 += std::pow(points.coords[i * dim + d] - c[d], 2);
      w[i] = std::exp(-r2 / (2 * taper.sigma * taper.sigma));
      norm += w[i] * w[i];
    }
  }

  const std::size_t nk = kvectors.size() / dim;
  std::vector<double> out(nk);
  parallel_for(nk, [&](std::size_t b, std::size_t e) {
    for (std::size_t q = b; q < e; ++q) {
      const double* k = kvectors.data() + q * dim;
      double re = 0, im = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double phase = 0;
        for (std::size_t d = 0; d < dim; ++d) phase += k[d] * points.coords[i * dim + d];
        phase -= std::round(phase);
        re += w[i] * std::cos(2 * std::numbers::pi * phase);
        im -= w[i] * std::sin(2 * std::numbers::pi * phase);
      }
      out[q] = (re * re + im * im) / norm;
    }
  });
  return out;
}

DiffractionMap structure_factor(const PointSet& points, const KGrid& grid, Taper taper) {
  DiffractionMap m;
  m.grid = grid;
  m.dim = points.dim;
  m.nodes = grid.nodes(points.dim);
  m.intensity = structure_factor(points, m.nodes, taper);
  return m;
}

RadialProfile radial_average(const DiffractionMap& map) {
  if (map.grid.kind != KGrid::Kind::Polar) throw InputError("radial_average: polar grid required");
  const std::size_t nr = map.grid.radius_count();
  const auto na = static_cast<std::size_t>(map.grid.angles);
  if (map.intensity.size() != nr * na) throw InputError("radial_average: intensity does not match the grid");
  RadialProfile p;
  for (std::size_t i = 0; i < nr; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < na; ++j) s += map.intensity[i * na + j];
    p.radii.push_back(static_cast<double>(i) * map.grid.dr);
    p.intensity.push_back(s / static_cast<double>(na));
    p.counts.push_back(na);
  }
  return p;
}

RadialProfile rotation_ensemble_profile(const PointSet& points, const KGrid& polar_grid, int rotations,
                                        std::uint64_t seed, Taper taper) {
  if (points.dim != 2) throw InputError("rotation_ensemble_profile: two-dimensional points required");
  if (rotations < 1) throw InputError("rotation_ensemble_profile: rotations must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  RadialProfile acc;
  for (int r = 0; r < rotations; ++r) {
    const double t = angle(rng);
    const double c = std::cos(t), s = std::sin(t);
    PointSet rotated;
    rotated.dim = 2;
    rotated.coords.resize(points.coords.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double x = points.at(i, 0), y = points.at(i, 1);
      rotated.coords[2 * i] = c * x - s * y;
      rotated.coords[2 * i + 1] = s * x + c * y;
    }
    const auto prof = radial_average(structure_factor(rotated, polar_grid, taper));
    if (r == 0) {
      acc = prof;
    } else {
      for (std::size_t i = 0; i < acc.intensity.size(); ++i) {
        acc.intensity[i] += prof.intensity[i];
        acc.counts[i] += prof.counts[i];
      }
    }
  }
  for (auto& v : acc.intensity) v /= rotations;
  return acc;
}

std::vector<Ring> ring_detect(const RadialProfile& profile, double prominence, int window) {
  const std::size_t n = profile.intensity.size();
  if (n == 0 || profile.radii.size() != n) throw InputError("ring_detect: empty or inconsistent profile");
  if (!(prominence > 0)) throw InputError("ring_detect: prominence must be positive");
  if (window < 1) throw InputError("ring_detect: window must be >= 1");
  const auto half = static_cast<std::size_t>(window / 2);
  std::vector<Ring> rings;
  const auto& y = profile.intensity;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 >= n || !(y[i] > y[j + 1])) continue;
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    std::vector<double> win(y.begin() + static_cast<std::ptrdiff_t>(lo), y.begin() + static_cast<std::ptrdiff_t>(hi));
    auto mid = win.begin() + static_cast<std::ptrdiff_t>(win.size() / 2);
    std::nth_element(win.begin(), mid, win.end());
    const double prom = y[i] - *mid;
    if (prom > prominence) rings.push_back({profile.radii[i], y[i], prom});
  }
  return rings;
}

std::vector<GrowthSlope> component_growth_probe(const std::vector<PointSet>& sets, std::span<const double> kvectors,
                                                Taper taper) {
  if (sets.size() < 3) throw InputError("component_growth_probe: at least three point sets required");
  std::vector<std::vector<double>> intens;
  std::vector<double> x;
  for (const auto& s : sets) {
    intens.push_back(structure_factor(s, kvectors, taper));
    x.push_back(std::log(static_cast<double>(s.size())));
  }
  const std::size_t m = sets.size();
  double xm = 0;
  for (double v : x) xm += v;
  xm /= static_cast<double>(m);
  double sxx = 0;
  for (double v : x) sxx += (v - xm) * (v - xm);
  if (!(sxx > 0)) throw InputError("component_growth_probe: point sets must differ in size");
  const boost::math::students_t dist(static_cast<double>(m - 2));
  const double tq = m > 2 ? boost::math::quantile(boost::math::complement(dist, 0.025)) : 0.0;

  std::vector<GrowthSlope> out(intens[0].size());
  for (std::size_t q = 0; q < out.size(); ++q) {
    std::vector<double> y(m);
    double ym = 0;
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = std::log(std::max(intens[i][q], 1e-12));
      ym += y[i];
    }
    ym /= static_cast<double>(m);
    double sxy = 0;
    for (std::size_t i = 0; i < m; ++i) sxy += (x[i] - xm) * (y[i] - ym);
    const double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < m; ++i) rss += std::pow(y[i] - ym - slope * (x[i] - xm), 2);
    const double se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
    out[q] = {slope, slope - tq * se, slope + tq * se};
  }
  return out;
}

}  // namespace qclab
