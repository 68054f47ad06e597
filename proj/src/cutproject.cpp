#include "qclab/cutproject.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {

Window Window::box(std::vector<Interval> bounds) {
  Window w;
  w.kind = Kind::Box;
  w.bounds = std::move(bounds);
  return w;
}

Window Window::polytope(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<Interval> bounds) {
  if (a.size() != b.size()) throw InputError("polytope window: A and b sizes differ");
  for (const auto& row : a)
    if (row.size() != bounds.size()) throw InputError("polytope window: row dimension mismatch");
  Window w;
  w.kind = Kind::Polytope;
  w.a = std::move(a);
  w.b = std::move(b);
  w.bounds = std::move(bounds);
  return w;
}

Window Window::from_predicate(std::function<bool(std::span<const std::int64_t>, std::span<const double>)> pred,
                              std::vector<Interval> bounds) {
  if (!pred) throw InputError("predicate window: empty predicate");
  Window w;
  w.kind = Kind::Predicate;
  w.predicate = std::move(pred);
  w.bounds = std::move(bounds);
  return w;
}

bool Window::contains(std::span<const std::int64_t> lattice, std::span<const double> internal) const {
  switch (kind) {
    case Kind::Box:
      for (std::size_t i = 0; i < bounds.size(); ++i)
        if (!(internal[i] >= bounds[i].lo && internal[i] < bounds[i].hi)) return false;
      return true;
    case Kind::Polytope:
      for (std::size_t r = 0; r < a.size(); ++r) {
        double s = 0;
        for (std::size_t i = 0; i < internal.size(); ++i) s += a[r][i] * internal[i];
        if (s > b[r]) return false;
      }
      return true;
    case Kind::Predicate:
      return predicate(lattice, internal);
  }
  return false;
}

bool Window::has_interior() const {
  if (kind == Kind::Predicate) return false;
  for (const auto& iv : bounds)
    if (!(iv.hi > iv.lo)) return false;
  if (kind == Kind::Polytope) {
    // Chebyshev-style check at the box centre is too weak in general; require
    // some bounding-box sample point strictly inside every halfspace.
    const std::size_t dim = bounds.size();
    const int per_axis = 9;
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= per_axis;
    std::vector<double> y(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t r = idx;
      for (std::size_t i = 0; i < dim; ++i) {
        const int s = static_cast<int>(r % per_axis) + 1;
        r /= per_axis;
        y[i] = bounds[i].lo + (bounds[i].hi - bounds[i].lo) * s / (per_axis + 1);
      }
      bool strict = true;
      for (std::size_t row = 0; row < a.size() && strict; ++row) {
        double s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += a[row][i] * y[i];
        strict = s < b[row];
      }
      if (strict) return true;
    }
    return false;
  }
  return true;
}

std::vector<std::vector<double>> CPSScheme::inverse_basis() const {
  if (d < 1 || k <= d) throw InputError("CPSScheme: need 1 <= d < k");
  if (static_cast<int>(physical_basis.size()) != d || static_cast<int>(internal_basis.size()) != k - d)
    throw InputError("CPSScheme: basis counts do not match (k, d)");
  Eigen::MatrixXd m(k, k);
  for (int j = 0; j < k; ++j) {
    const auto& v = j < d ? physical_basis[static_cast<std::size_t>(j)] : internal_basis[static_cast<std::size_t>(j - d)];
    if (static_cast<int>(v.size()) != k) throw InputError("CPSScheme: basis vector of wrong length");
    for (int i = 0; i < k; ++i) m(i, j) = v[static_cast<std::size_t>(i)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw InputError("CPSScheme: physical and internal bases do not span R^k");
  Eigen::MatrixXd inv = lu.inverse();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inv(i, j);
  return out;
}

std::vector<double> CPSScheme::split(std::span<const double> x) const {
  const auto inv = inverse_basis();
  std::vector<double> c(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(i)] += inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
  return c;
}

Window canonical_window(const CPSScheme& scheme) {
  const int k = scheme.k, d = scheme.d;
  const auto inv = scheme.inverse_basis();
  std::vector<Interval> bounds(static_cast<std::size_t>(k - d), Interval{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    for (int r = d; r < k; ++r) {
      double s = 0;
      for (int j = 0; j < k; ++j)
        if (mask & (1u << j)) s += inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      auto& iv = bounds[static_cast<std::size_t>(r - d)];
      iv.lo = std::min(iv.lo, s);
      iv.hi = std::max(iv.hi, s);
    }
  }
  if (k - d != 1) {
    throw InputError("canonical_window: the projected cube is a box only in codimension 1");
  }
  return Window::box(std::move(bounds));
}

CPSScheme canonical_scheme(const HighPrec& alpha, const HighPrec& beta) {
  const double a = alpha.to_double(), b = beta.to_double();
  CPSScheme s;
  s.k = 3;
  s.d = 2;
  s.physical_basis = {{1.0, 0.0, a}, {0.0, 1.0, b}};
  s.internal_basis = {{-a, -b, 1.0}};
  s.totally_irrational = true;
  s.window = canonical_window(s);
  return s;
}

CPSScheme line_scheme(const HighPrec& slope) {
  const double a = slope.to_double();
  CPSScheme s;
  s.k = 2;
  s.d = 1;
  s.physical_basis = {{1.0, a}};
  s.internal_basis = {{-a, 1.0}};
  s.totally_irrational = true;
  s.window = canonical_window(s);
  return s;
}

PointSet generate_cps(const CPSScheme& scheme, double radius) {
  if (!(radius > 0)) throw InputError("generate_cps: radius must be positive");
  const int k = scheme.k, d = scheme.d;
  const auto inv = scheme.inverse_basis();
  const Window& w = scheme.window;
  if (static_cast<int>(w.bounds.size()) != k - d) throw InputError("generate_cps: window dimension does not match k - d");
  if (w.kind != Window::Kind::Predicate && !w.has_interior())
    throw InputError("generate_cps: box or polytope window has empty interior");

  // Coordinate bounds of {sum a_i e_i + sum b_j f_j : |a| <= R, b in bounds}.
  std::vector<double> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    double l = 0, h = 0;
    for (int i = 0; i < d; ++i) {
      const double v = std::fabs(scheme.physical_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) * radius;
      l -= v;
      h += v;
    }
    for (int j = 0; j < k - d; ++j) {
      const double f = scheme.internal_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      const auto& iv = w.bounds[static_cast<std::size_t>(j)];
      l += std::min(f * iv.lo, f * iv.hi);
      h += std::max(f * iv.lo, f * iv.hi);
    }
    lo[static_cast<std::size_t>(c)] = std::ceil(l - 1e-9);
    hi[static_cast<std::size_t>(c)] = std::floor(h + 1e-9);
  }

  // Enumerate the first k-1 coordinates; the last is bounded analytically.
  std::vector<std::int64_t> first_lo(static_cast<std::size_t>(k - 1)), first_count(static_cast<std::size_t>(k - 1));
  std::size_t outer = 1;
  for (int c = 0; c < k - 1; ++c) {
    first_lo[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(lo[static_cast<std::size_t>(c)]);
    first_count[static_cast<std::size_t>(c)] =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(hi[static_cast<std::size_t>(c)] - lo[static_cast<std::size_t>(c)]) + 1);
    outer *= static_cast<std::size_t>(first_count[static_cast<std::size_t>(c)]);
  }
  if (outer > 200'000'000) throw ResourceError("generate_cps: enumeration box too large");

  struct Hit {
    std::vector<std::int64_t> n;
    std::vector<double> phys;
  };
  std::vector<std::vector<Hit>> chunks(outer);
  parallel_for(outer, [&](std::size_t b, std::size_t e) {
    std::vector<std::int64_t> n(static_cast<std::size_t>(k));
    std::vector<double> coef(static_cast<std::size_t>(k));
    for (std::size_t idx = b; idx < e; ++idx) {
      std::size_t r = idx;
      for (int c = k - 2; c >= 0; --c) {
        const auto cnt = static_cast<std::size_t>(first_count[static_cast<std::size_t>(c)]);
        n[static_cast<std::size_t>(c)] = first_lo[static_cast<std::size_t>(c)] + static_cast<std::int64_t>(r % cnt);
        r /= cnt;
      }
      // Linear constraints on the last coordinate t: base_r + slope_r t.
      double tl = lo[static_cast<std::size_t>(k - 1)], th = hi[static_cast<std::size_t>(k - 1)];
      for (int row = 0; row < k; ++row) {
        double base = 0;
        for (int c = 0; c < k - 1; ++c) base += inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] * static_cast<double>(n[static_cast<std::size_t>(c)]);
        const double slope = inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(k - 1)];
        double rl, rh;
        if (row < d) {
          rl = -radius;
          rh = radius;
        } else {
          rl = w.bounds[static_cast<std::size_t>(row - d)].lo;
          rh = w.bounds[static_cast<std::size_t>(row - d)].hi;
        }
        if (std::fabs(slope) < 1e-300) {
          if (base < rl - 1e-9 || base > rh + 1e-9) {
            tl = 1;
            th = 0;
          }
          continue;
        }
        double a = (rl - base) / slope, c2 = (rh - base) / slope;
        if (a > c2) std::swap(a, c2);
        tl = std::max(tl, std::ceil(a - 1e-9));
        th = std::min(th, std::floor(c2 + 1e-9));
      }
      for (double t = tl; t <= th; t += 1.0) {
        n[static_cast<std::size_t>(k - 1)] = static_cast<std::int64_t>(t);
        for (int row = 0; row < k; ++row) {
          double s = 0;
          for (int c = 0; c < k; ++c) s += inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] * static_cast<double>(n[static_cast<std::size_t>(c)]);
          coef[static_cast<std::size_t>(row)] = s;
        }
        double norm2 = 0;
        for (int i = 0; i < d; ++i) norm2 += coef[static_cast<std::size_t>(i)] * coef[static_cast<std::size_t>(i)];
        if (norm2 > radius * radius) continue;
        std::span<const double> internal(coef.data() + d, static_cast<std::size_t>(k - d));
        if (!w.contains(n, internal)) continue;
        chunks[idx].push_back({n, std::vector<double>(coef.begin(), coef.begin() + d)});
      }
    }
  });

  PointSet ps;
  ps.dim = d;
  ps.lattice_rank = k;
  for (const auto& ch : chunks)
    for (const auto& h : ch) {
      ps.push(h.phys);
      ps.lattice.insert(ps.lattice.end(), h.n.begin(), h.n.end());
    }
  return ps;
}

bool PatchShape::contains(std::span<const double> off) const {
  switch (kind) {
    case Kind::Ball: {
      double s = 0;
      for (double x : off) s += x * x;
      return s <= width * width;
    }
    case Kind::AlignedSquare:
      for (double x : off)
        if (!(x >= -width / 2 && x < width / 2)) return false;
      return true;
    case Kind::AlignedRectangle:
      if (!(off[0] >= -width / 2 && off[0] < width / 2)) return false;
      for (std::size_t i = 1; i < off.size(); ++i)
        if (!(off[i] >= -height / 2 && off[i] < height / 2)) return false;
      return true;
  }
  return false;
}

double PatchShape::extent() const {
  switch (kind) {
    case Kind::Ball: return width;
    case Kind::AlignedSquare: return width / 2;
    case Kind::AlignedRectangle: return std::max(width, height) / 2;
  }
  return width;
}

namespace {

bool near_boundary(const PatchShape& shape, std::span<const double> off, double tol) {
  switch (shape.kind) {
    case PatchShape::Kind::Ball: {
      double s = 0;
      for (double x : off) s += x * x;
      return std::fabs(std::sqrt(s) - shape.width) <= tol;
    }
    case PatchShape::Kind::AlignedSquare:
    case PatchShape::Kind::AlignedRectangle:
      for (std::size_t i = 0; i < off.size(); ++i) {
        const double half = (shape.kind == PatchShape::Kind::AlignedRectangle && i > 0 ? shape.height : shape.width) / 2;
        if (std::fabs(std::fabs(off[i]) - half) <= tol) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

PatchStatistics patch_statistics(const PointSet& points, const PatchShape& shape, const AnchorSpec& spec) {
  if (!(shape.width > 0) || (shape.kind == PatchShape::Kind::AlignedRectangle && !(shape.height > 0)))
    throw InputError("patch_statistics: shape dimensions must be positive");
  if (!(spec.tolerance > 0)) throw InputError("patch_statistics: tolerance must be positive");
  const int dim = points.dim;
  std::vector<double> center = spec.center;
  if (center.empty()) center.assign(static_cast<std::size_t>(dim), 0.0);
  if (static_cast<int>(center.size()) != dim) throw InputError("patch_statistics: centre dimension mismatch");
  const double ext = shape.extent();
  const double reach = shape.kind == PatchShape::Kind::Ball ? ext : ext * std::sqrt(static_cast<double>(dim));

  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double s = 0;
    for (int c = 0; c < dim; ++c) {
      const double v = points.at(i, c) - center[static_cast<std::size_t>(c)];
      s += v * v;
    }
    if (std::sqrt(s) + reach <= spec.region_radius) anchors.push_back(i);
  }
  if (anchors.empty()) throw InputError("patch_statistics: shape larger than the sampled region (no anchors)");
  if (spec.max_anchors > 0 && anchors.size() > spec.max_anchors) {
    std::vector<std::size_t> chosen;
    std::mt19937_64 rng(spec.seed);
    std::sample(anchors.begin(), anchors.end(), std::back_inserter(chosen), spec.max_anchors, rng);
    anchors = std::move(chosen);
  }

  const bool exact = points.has_lattice();
  const SpatialGrid grid(points, std::max(ext, 1e-6));
  std::vector<std::vector<std::int64_t>> keys(anchors.size());
  parallel_for(anchors.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> off(static_cast<std::size_t>(dim));
    for (std::size_t ai = b; ai < e; ++ai) {
      const std::size_t p = anchors[ai];
      const auto near = grid.box_query(points.point(p), ext);
      std::vector<std::vector<std::int64_t>> members;
      for (std::size_t q : near) {
        for (int c = 0; c < dim; ++c) off[static_cast<std::size_t>(c)] = points.at(q, c) - points.at(p, c);
        if (!shape.contains(off)) continue;
        if (!spec.include_boundary && near_boundary(shape, off, spec.tolerance)) continue;
        std::vector<std::int64_t> m;
        if (exact) {
          const auto lq = points.lattice_point(q), lp = points.lattice_point(p);
          for (int c = 0; c < points.lattice_rank; ++c) m.push_back(lq[static_cast<std::size_t>(c)] - lp[static_cast<std::size_t>(c)]);
        } else {
          for (double x : off) m.push_back(std::llround(x / spec.tolerance));
        }
        members.push_back(std::move(m));
      }
      std::sort(members.begin(), members.end());
      auto& key = keys[ai];
      key.push_back(static_cast<std::int64_t>(members.size()));
      for (const auto& m : members) key.insert(key.end(), m.begin(), m.end());
    }
  });

  std::map<std::vector<std::int64_t>, std::size_t> census;
  for (const auto& k : keys) ++census[k];
  PatchStatistics st;
  st.anchors = anchors.size();
  const double na = static_cast<double>(anchors.size());
  for (const auto& [k, c] : census) st.classes.push_back({c, static_cast<double>(c) / na, static_cast<std::size_t>(k[0])});
  std::stable_sort(st.classes.begin(), st.classes.end(), [](const PatchClass& a, const PatchClass& b) { return a.count > b.count; });

  // Cluster frequencies whose confidence intervals overlap.
  std::vector<double> freqs;
  for (const auto& c : st.classes) freqs.push_back(c.frequency);
  std::sort(freqs.begin(), freqs.end());
  auto half = [&](double f) { return spec.z * std::sqrt(std::max(f * (1 - f), 0.0) / na); };
  double cluster_hi = -1, sum = 0;
  std::size_t members = 0;
  for (double f : freqs) {
    if (members > 0 && f - half(f) > cluster_hi) {
      st.frequency_levels.push_back(sum / static_cast<double>(members));
      sum = 0;
      members = 0;
      cluster_hi = -1;
    }
    sum += f;
    ++members;
    cluster_hi = std::max(cluster_hi, f + half(f));
  }
  if (members > 0) st.frequency_levels.push_back(sum / static_cast<double>(members));
  st.distinct_frequencies = st.frequency_levels.size();
  return st;
}

std::vector<ComplexityPoint> patch_complexity(const PointSet& points, double r_max, double step, double region_radius,
                                              std::vector<double> center) {
  if (!(step > 0) || !(r_max >= step)) throw InputError("patch_complexity: need 0 < step <= nmax");
  std::vector<ComplexityPoint> out;
  const auto nsteps = static_cast<std::size_t>(std::floor(r_max / step + 1e-9));
  for (std::size_t i = 1; i <= nsteps; ++i) {
    const double r = step * static_cast<double>(i);
    PatchShape shape{PatchShape::Kind::Ball, r, r};
    AnchorSpec spec;
    spec.region_radius = region_radius;
    spec.center = center;
    const auto st = patch_statistics(points, shape, spec);
    out.push_back({r, st.classes.size(), std::pow(r, points.dim)});
  }
  return out;
}

double loglog_slope(const std::vector<ComplexityPoint>& s) {
  if (s.size() < 2) throw InputError("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : s) {
    const double x = std::log(p.radius), y = std::log(static_cast<double>(p.classes));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(s.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

WeissResult weiss_window(const HighPrec& alpha, const HighPrec& beta,
                         const std::function<bool(std::int64_t, std::int64_t)>& yprime, std::int64_t x_lo,
                         std::int64_t x_hi, std::int64_t y_lo, std::int64_t y_hi) {
  if (!yprime) throw InputError("weiss_window: empty predicate");
  if (x_lo > x_hi || y_lo > y_hi) throw InputError("weiss_window: empty evaluation region");
  auto slab_level = [alpha, beta](std::int64_t n1, std::int64_t n2) {
    const HighPrec v = HighPrec(n1) * alpha + HighPrec(n2) * beta;
    const HighPrec f = frac(v);
    if (f.hi() == 0.0 && f.lo() == 0.0) return std::pair{v.floor_int(), v};
    if (!(f.to_double() > f.error_bound()) || !((HighPrec(1.0) - f).to_double() > f.error_bound()))
      throw NumericError("weiss_window: slab membership ambiguous at (" + std::to_string(n1) + "," + std::to_string(n2) + ")");
    return std::pair{v.floor_int() + 1, v};
  };

  WeissResult r;
  r.window = Window::from_predicate(
      [slab_level, yprime](std::span<const std::int64_t> n, std::span<const double>) {
        if (n.size() != 3) return false;
        return slab_level(n[0], n[1]).first == n[2] && yprime(n[0], n[1]);
      },
      {Interval{0.0, 1.0}});
  r.points.dim = 2;
  r.points.lattice_rank = 3;
  for (std::int64_t n1 = x_lo; n1 < x_hi; ++n1)
    for (std::int64_t n2 = y_lo; n2 < y_hi; ++n2) {
      if (!yprime(n1, n2)) continue;
      const auto [n3, v] = slab_level(n1, n2);
      const std::array<std::int64_t, 3> n{n1, n2, n3};
      if (!r.window.contains(n, {})) throw NumericError("weiss_window: constructed point rejected by its window");
      r.lattice.push_back(n);
      const double xy[2] = {static_cast<double>(n1), static_cast<double>(n2)};
      r.points.push(xy);
      r.points.lattice.insert(r.points.lattice.end(), n.begin(), n.end());
      r.displacement.push_back((HighPrec(n3) - v).to_double());
    }
  return r;
}

}  // namespace qclab
