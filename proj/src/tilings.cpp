#include "qclab/tilings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {

// ---------------------------------------------------------------- Z[zeta5]

Cyclo5 Cyclo5::zeta(int power) {
  const int p = ((power % 5) + 5) % 5;
  if (p == 4) return {{-1, -1, -1, -1}};
  Cyclo5 c;
  c.a[static_cast<std::size_t>(p)] = 1;
  return c;
}

Cyclo5 Cyclo5::zeta10(int power) {
  // exp(i pi / 5) = -zeta^3.
  const int p = ((power % 10) + 10) % 10;
  Cyclo5 z = zeta(3 * p);
  return p % 2 ? integer(0) - z : z;
}

Cyclo5 Cyclo5::phi() { return {{0, 0, -1, -1}}; }
Cyclo5 Cyclo5::phi_inverse() { return {{-1, 0, -1, -1}}; }

Cyclo5 operator+(const Cyclo5& x, const Cyclo5& y) {
  Cyclo5 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

Cyclo5 operator-(const Cyclo5& x, const Cyclo5& y) {
  Cyclo5 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

Cyclo5 operator*(const Cyclo5& x, const Cyclo5& y) {
  std::int64_t c[7] = {0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) c[i + j] += x.a[i] * y.a[j];
  c[0] += c[5];
  c[1] += c[6];
  Cyclo5 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = c[i] - c[4];
  return r;
}

Cyclo5 Cyclo5::conj() const {
  // z -> z^4 = -1 - z - z^2 - z^3, z^2 <-> z^3.
  return {{a[0] - a[1], -a[1], a[3] - a[1], a[2] - a[1]}};
}

std::complex<double> Cyclo5::value() const {
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < 4; ++j)
    s += static_cast<double>(a[j]) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / 5);
  return s;
}

// ---------------------------------------------------------------- pinwheel

PinwheelRule pinwheel_rule() {
  PinwheelRule r;
  r.children = {PinwheelChild{true, Gauss{-1, -2}, Gauss{2, 4}}, PinwheelChild{true, Gauss{2, -1}, Gauss{6, 2}},
                PinwheelChild{false, Gauss{-2, 1}, Gauss{6, 2}}, PinwheelChild{false, Gauss{2, -1}, Gauss{1, 2}},
                PinwheelChild{true, Gauss{2, -1}, Gauss{1, 2}}};
  return r;
}

std::int64_t PinwheelPatch::denominator() const {
  std::int64_t d = 1;
  for (int i = 0; i < generation; ++i) d *= 5;
  return d;
}

std::array<Gauss, 3> PinwheelPatch::vertices(const PinwheelTile& tile) const {
  static const std::array<Gauss, 3> proto{Gauss{0, 0}, Gauss{2, 0}, Gauss{0, 1}};
  std::array<Gauss, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = tile.w * (tile.reflected ? proto[i].conj() : proto[i]) + tile.t;
  return out;
}

PinwheelPatch pinwheel_seed() { return {0, {PinwheelTile{false, Gauss{1, 0}, Gauss{0, 0}}}}; }

PinwheelPatch substitute(const PinwheelPatch& patch, int generations, std::size_t cap) {
  if (generations < 0) throw InputError("substitute: generations must be >= 0");
  const auto rule = pinwheel_rule();
  PinwheelPatch cur = patch;
  for (int g = 0; g < generations; ++g) {
    if (cur.tiles.size() * 5 > cap)
      throw ResourceError("substitute: tile count " + std::to_string(cur.tiles.size() * 5) + " exceeds cap " + std::to_string(cap));
    if (cur.generation >= 25) throw ResourceError("substitute: pinwheel generation limit 25 (64-bit coordinates)");
    PinwheelPatch next;
    next.generation = cur.generation + 1;
    next.tiles.resize(cur.tiles.size() * 5);
    parallel_for(cur.tiles.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto& f = cur.tiles[i];
        for (std::size_t c = 0; c < 5; ++c) {
          const auto& ch = rule.children[c];
          PinwheelTile t;
          t.reflected = f.reflected != ch.reflected;
          if (!f.reflected) {
            t.w = f.w * ch.u;
            t.t = f.w * ch.s + 5 * f.t;
          } else {
            t.w = f.w * ch.u.conj();
            t.t = f.w * ch.s.conj() + 5 * f.t;
          }
          next.tiles[5 * i + c] = t;
        }
      }
    });
    cur = std::move(next);
  }
  return cur;
}

Int128 doubled_area_numerator(const PinwheelPatch& patch, const PinwheelTile& tile) {
  const auto v = patch.vertices(tile);
  const Int128 x1 = v[1].re - v[0].re, y1 = v[1].im - v[0].im;
  const Int128 x2 = v[2].re - v[0].re, y2 = v[2].im - v[0].im;
  return x1 * y2 - x2 * y1;
}

PointSet reference_points(const PinwheelPatch& patch, bool unit_area) {
  PointSet ps;
  ps.dim = 2;
  const double scale = unit_area ? std::pow(5.0, -0.5 * patch.generation) : 1.0 / static_cast<double>(patch.denominator());
  for (const auto& t : patch.tiles) {
    const Gauss corner = t.reflected ? Gauss{1, -1} : Gauss{1, 1};
    const Gauss num = t.w * corner + 2 * t.t;
    const double xy[2] = {0.5 * static_cast<double>(num.re) * scale, 0.5 * static_cast<double>(num.im) * scale};
    ps.push(xy);
  }
  return ps;
}

std::size_t orientation_census(const PinwheelPatch& patch) {
  std::set<std::tuple<bool, std::int64_t, std::int64_t>> seen;
  for (const auto& t : patch.tiles) seen.emplace(t.reflected, t.w.re, t.w.im);
  return seen.size();
}

std::vector<TileRecord> tile_records(const PinwheelPatch& patch) {
  std::vector<TileRecord> out;
  const double d = static_cast<double>(patch.denominator());
  for (const auto& t : patch.tiles) {
    out.push_back({0, t.reflected, std::atan2(static_cast<double>(t.w.im), static_cast<double>(t.w.re)) * 180 / std::numbers::pi,
                   static_cast<double>(t.t.re) / d, static_cast<double>(t.t.im) / d});
  }
  return out;
}

// ---------------------------------------------------------------- Penrose

Cyclo5 doubled_area_i(const PenroseTile& tile) {
  const Cyclo5 u = tile.v[1] - tile.v[0], v = tile.v[2] - tile.v[0];
  return u.conj() * v - u * v.conj();
}

namespace {

constexpr int kApexPower[2] = {1, 3};

int chirality(const PenroseTile& tile) {
  const Cyclo5 u = tile.v[1] - tile.v[0], v = tile.v[2] - tile.v[0];
  const int s = kApexPower[tile.type];
  if (v == u * Cyclo5::zeta10(s)) return 1;
  if (v == u * Cyclo5::zeta10(-s)) return -1;
  return 0;
}

}  // namespace

bool is_reflected(const PenroseTile& tile) {
  const int c = chirality(tile);
  if (c == 0) throw NumericError("penrose tile is not a Robinson triangle");
  return c < 0;
}

RobinsonRule robinson_penrose_rule() {
  const Cyclo5 one = Cyclo5::integer(1), zero = Cyclo5::integer(0);
  const Cyclo5 g = Cyclo5::phi_inverse();           // 1/phi
  const Cyclo5 h = Cyclo5::integer(1) - g;          // 1 - 1/phi = 2 - phi
  const std::array<Cyclo5, 3> A{one, zero, zero}, B{zero, one, zero}, C{zero, zero, one};
  // P = A + (B - A)/phi; Q = B + (A - B)/phi; R = B + (C - B)/phi.
  const std::array<Cyclo5, 3> P{h, g, zero}, Q{g, h, zero}, R{zero, h, g};

  RobinsonRule rule;
  rule.prototiles[0] = {zero, one, Cyclo5::zeta10(1)};
  rule.prototiles[1] = {zero, one, Cyclo5::zeta10(3)};
  rule.children[0] = {RobinsonChild{0, {C, P, B}}, RobinsonChild{1, {P, C, A}}};
  rule.children[1] = {RobinsonChild{1, {R, C, A}}, RobinsonChild{1, {Q, R, B}}, RobinsonChild{0, {R, Q, A}}};

  // Verify: each child is a 1/phi copy of its prototile; areas add up.
  const Cyclo5 shrink = g * g;
  for (int t = 0; t < 2; ++t) {
    const PenroseTile parent{t, rule.prototiles[static_cast<std::size_t>(t)]};
    const Cyclo5 pu = parent.v[1] - parent.v[0];
    Cyclo5 area_sum = zero;
    for (const auto& ch : rule.children[static_cast<std::size_t>(t)]) {
      PenroseTile c{ch.type, {}};
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t j = 0; j < 3; ++j) c.v[r] = c.v[r] + ch.coeff[r][j] * parent.v[j];
      if (chirality(c) == 0) throw std::logic_error("robinson rule: child is not similar to its prototile");
      const Cyclo5 cu = c.v[1] - c.v[0];
      if (!(cu * cu.conj() == shrink * pu * pu.conj())) throw std::logic_error("robinson rule: child scale is not 1/phi");
      area_sum = area_sum + doubled_area_i(c) * Cyclo5::integer(is_reflected(c) ? -1 : 1);
    }
    if (!(area_sum == doubled_area_i(parent))) throw std::logic_error("robinson rule: child areas do not sum to the parent");
  }
  return rule;
}

PenrosePatch penrose_seed() {
  PenrosePatch p;
  for (int i = 0; i < 10; ++i) {
    Cyclo5 b = Cyclo5::zeta10(i), c = Cyclo5::zeta10(i + 1);
    if (i % 2 == 0) std::swap(b, c);
    p.tiles.push_back({0, {Cyclo5::integer(0), b, c}});
  }
  return p;
}

PenrosePatch substitute(const PenrosePatch& patch, int generations, std::size_t cap) {
  if (generations < 0) throw InputError("substitute: generations must be >= 0");
  const auto rule = robinson_penrose_rule();
  PenrosePatch cur = patch;
  for (int g = 0; g < generations; ++g) {
    std::vector<std::size_t> offset(cur.tiles.size() + 1, 0);
    for (std::size_t i = 0; i < cur.tiles.size(); ++i)
      offset[i + 1] = offset[i] + rule.children[static_cast<std::size_t>(cur.tiles[i].type)].size();
    if (offset.back() > cap)
      throw ResourceError("substitute: tile count " + std::to_string(offset.back()) + " exceeds cap " + std::to_string(cap));
    PenrosePatch next;
    next.generation = cur.generation + 1;
    next.tiles.resize(offset.back());
    parallel_for(cur.tiles.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto& f = cur.tiles[i];
        std::size_t o = offset[i];
        for (const auto& ch : rule.children[static_cast<std::size_t>(f.type)]) {
          PenroseTile t{ch.type, {}};
          for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t j = 0; j < 3; ++j) t.v[r] = t.v[r] + ch.coeff[r][j] * f.v[j];
          next.tiles[o++] = t;
        }
      }
    });
    cur = std::move(next);
  }
  return cur;
}

PointSet reference_points(const PenrosePatch&, bool) {
  throw InputError("reference_points: the Robinson triangle rule has no designated reference point");
}

std::size_t orientation_census(const PenrosePatch& patch) {
  std::set<std::pair<bool, Cyclo5>> seen;
  for (const auto& t : patch.tiles) seen.emplace(is_reflected(t), t.v[1] - t.v[0]);
  return seen.size();
}

std::vector<TileRecord> tile_records(const PenrosePatch& patch) {
  std::vector<TileRecord> out;
  for (const auto& t : patch.tiles) {
    const auto a = t.v[0].value(), u = (t.v[1] - t.v[0]).value();
    out.push_back({t.type, is_reflected(t), std::atan2(u.imag(), u.real()) * 180 / std::numbers::pi, a.real(), a.imag()});
  }
  return out;
}

// ---------------------------------------------------------------- graphs

namespace {

using Key = std::array<std::int64_t, 4>;

struct Face {
  std::array<Key, 3> corners;
  std::vector<std::pair<int, int>> sides;
};

template <class OnLine, class Position>
TilingGraph build_graph(const std::vector<Face>& faces, std::size_t face_count, OnLine on_line, Position position) {
  std::vector<Key> keys;
  keys.reserve(faces.size() * 3);
  for (const auto& f : faces) keys.insert(keys.end(), f.corners.begin(), f.corners.end());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  auto index_of = [&](const Key& k) {
    return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  };

  TilingGraph g;
  g.faces = face_count;
  g.graph.vertex_count = keys.size();
  PointSet ps;
  ps.dim = 2;
  for (const auto& k : keys) {
    const auto p = position(k);
    g.positions.push_back(p);
    ps.push(p);
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> segments;
  double total_len = 0;
  for (const auto& f : faces)
    for (auto [a, b] : f.sides) {
      auto i = index_of(f.corners[static_cast<std::size_t>(a)]), j = index_of(f.corners[static_cast<std::size_t>(b)]);
      if (i > j) std::swap(i, j);
      if (segments.emplace(i, j).second) {
        total_len += std::hypot(g.positions[i][0] - g.positions[j][0], g.positions[i][1] - g.positions[j][1]);
      }
    }
  const double cell = segments.empty() ? 1.0 : std::max(total_len / static_cast<double>(segments.size()), 1e-12);
  const SpatialGrid grid(ps, cell);

  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<bool> is_mid(keys.size(), false);
  for (auto [i, j] : segments) {
    const auto& pi = g.positions[i];
    const auto& pj = g.positions[j];
    const double dx = pj[0] - pi[0], dy = pj[1] - pi[1];
    const double len2 = dx * dx + dy * dy;
    const double center[2] = {0.5 * (pi[0] + pj[0]), 0.5 * (pi[1] + pj[1])};
    const double half = 0.5 * std::max(std::fabs(dx), std::fabs(dy)) + 1e-9 * std::sqrt(len2);
    std::vector<std::pair<double, std::uint32_t>> inner;
    for (std::size_t v : grid.box_query(center, half)) {
      if (v == i || v == j) continue;
      const double t = ((g.positions[v][0] - pi[0]) * dx + (g.positions[v][1] - pi[1]) * dy) / len2;
      if (t <= 0 || t >= 1) continue;
      if (!on_line(keys[i], keys[j], keys[v])) continue;
      inner.emplace_back(t, static_cast<std::uint32_t>(v));
      is_mid[v] = true;
    }
    std::sort(inner.begin(), inner.end());
    std::uint32_t prev = i;
    for (const auto& [t, v] : inner) {
      edges.emplace(std::min(prev, v), std::max(prev, v));
      prev = v;
    }
    edges.emplace(std::min(prev, j), std::max(prev, j));
  }
  g.graph.edges.assign(edges.begin(), edges.end());
  g.midpoint_vertices = static_cast<std::size_t>(std::count(is_mid.begin(), is_mid.end(), true));
  return g;
}

Key gauss_key(Gauss z) { return {z.re, z.im, 0, 0}; }
Key cyclo_key(const Cyclo5& z) { return z.a; }

}  // namespace

TilingGraph extract_graph(const PinwheelPatch& patch) {
  std::vector<Face> faces;
  faces.reserve(patch.tiles.size());
  for (const auto& t : patch.tiles) {
    const auto v = patch.vertices(t);
    faces.push_back({{gauss_key(v[0]), gauss_key(v[1]), gauss_key(v[2])}, {{0, 1}, {1, 2}, {2, 0}}});
  }
  const double d = static_cast<double>(patch.denominator());
  return build_graph(
      faces, faces.size(),
      [](const Key& a, const Key& b, const Key& v) {
        const Int128 cross = static_cast<Int128>(b[0] - a[0]) * (v[1] - a[1]) - static_cast<Int128>(b[1] - a[1]) * (v[0] - a[0]);
        return cross == 0;
      },
      [d](const Key& k) { return std::array<double, 2>{static_cast<double>(k[0]) / d, static_cast<double>(k[1]) / d}; });
}

TilingGraph extract_graph(const PenrosePatch& patch, PenroseGraphVariant variant) {
  std::vector<Face> faces;
  faces.reserve(patch.tiles.size());
  std::size_t face_count = patch.tiles.size();
  std::map<std::tuple<int, Key, Key>, int> base_count;
  auto base_key = [](const PenroseTile& t) {
    Key b = cyclo_key(t.v[1]), c = cyclo_key(t.v[2]);
    if (c < b) std::swap(b, c);
    return std::tuple<int, Key, Key>{t.type, b, c};
  };
  if (variant == PenroseGraphVariant::Rhombi) {
    for (const auto& t : patch.tiles) ++base_count[base_key(t)];
    for (const auto& [k, c] : base_count) {
      if (c > 2) throw NumericError("extract_graph: more than two triangles share a base");
      if (c == 2) --face_count;
    }
  }
  for (const auto& t : patch.tiles) {
    Face f{{cyclo_key(t.v[0]), cyclo_key(t.v[1]), cyclo_key(t.v[2])}, {{0, 1}, {2, 0}}};
    if (variant == PenroseGraphVariant::Triangles || base_count[base_key(t)] == 1) f.sides.emplace_back(1, 2);
    faces.push_back(std::move(f));
  }
  return build_graph(
      faces, face_count,
      [](const Key& a, const Key& b, const Key& v) {
        const Cyclo5 A{a}, B{b}, V{v};
        return ((B - A).conj() * (V - A)).is_real();
      },
      [](const Key& k) {
        const auto z = Cyclo5{k}.value();
        return std::array<double, 2>{z.real(), z.imag()};
      });
}

}  // namespace qclab
