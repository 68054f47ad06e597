#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qclab/core/int128.hpp"
#include "qclab/core/pointset.hpp"
#include "qclab/graph_spectrum.hpp"

namespace qclab {

/// Gaussian integer re + im i.
struct Gauss {
  std::int64_t re = 0, im = 0;

  friend Gauss operator+(Gauss a, Gauss b) { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator-(Gauss a, Gauss b) { return {a.re - b.re, a.im - b.im}; }
  friend Gauss operator*(Gauss a, Gauss b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Gauss operator*(std::int64_t s, Gauss a) { return {s * a.re, s * a.im}; }
  friend auto operator<=>(const Gauss&, const Gauss&) = default;
  Gauss conj() const { return {re, -im}; }
  std::int64_t norm() const { return re * re + im * im; }
};

/// Element a0 + a1 z + a2 z^2 + a3 z^3 of Z[z], z = exp(2 pi i / 5).
struct Cyclo5 {
  std::array<std::int64_t, 4> a{};

  static Cyclo5 integer(std::int64_t v) { return {{v, 0, 0, 0}}; }
  static Cyclo5 zeta(int power);      // z^power, any integer power
  static Cyclo5 zeta10(int power);    // exp(i pi power / 5)
  static Cyclo5 phi();                // -z^2 - z^3
  static Cyclo5 phi_inverse();        // phi - 1

  friend Cyclo5 operator+(const Cyclo5& x, const Cyclo5& y);
  friend Cyclo5 operator-(const Cyclo5& x, const Cyclo5& y);
  friend Cyclo5 operator*(const Cyclo5& x, const Cyclo5& y);
  friend auto operator<=>(const Cyclo5&, const Cyclo5&) = default;
  Cyclo5 conj() const;
  bool is_real() const { return *this == conj(); }
  std::complex<double> value() const;
};

// ---------------------------------------------------------------- pinwheel

/// z -> (u z + s) / 5, or (u conj(z) + s) / 5 when reflected.
struct PinwheelChild {
  bool reflected = false;
  Gauss u, s;
};

/// Right triangle with vertices 0 (right angle), 2 and i, split into five
/// copies scaled by 1/sqrt(5); the rotation-scale parts are unit multiples of 2 +- i.
struct PinwheelRule {
  std::array<PinwheelChild, 5> children;
  std::array<Gauss, 3> prototile{Gauss{0, 0}, Gauss{2, 0}, Gauss{0, 1}};
};

PinwheelRule pinwheel_rule();

/// Tile at generation g: z -> (w z' + t) / 5^g with z' = z or conj(z).
struct PinwheelTile {
  bool reflected = false;
  Gauss w, t;
};

struct PinwheelPatch {
  int generation = 0;
  std::vector<PinwheelTile> tiles;
  std::int64_t denominator() const;  // 5^generation
  std::array<Gauss, 3> vertices(const PinwheelTile& tile) const;  // numerators over denominator()
};

PinwheelPatch pinwheel_seed();

// ---------------------------------------------------------------- Penrose

/// Robinson triangles: type 0 has apex angle 36 degrees at A, type 1 has 108.
/// Prototiles are (0, 1, exp(i pi/5)) and (0, 1, exp(3 i pi/5)).
struct RobinsonChild {
  int type = 0;
  /// Child vertex r is sum_j coeff[r][j] * parent vertex j.
  std::array<std::array<Cyclo5, 3>, 3> coeff;
};

struct RobinsonRule {
  std::array<std::vector<RobinsonChild>, 2> children;
  std::array<std::array<Cyclo5, 3>, 2> prototiles;
};

/// Builds the rule and verifies every child is an exactly similar copy of
/// its prototile scaled by 1/phi, with areas summing to the parent's.
RobinsonRule robinson_penrose_rule();

struct PenroseTile {
  int type = 0;
  std::array<Cyclo5, 3> v;  // A (apex), B, C
};

struct PenrosePatch {
  int generation = 0;
  std::vector<PenroseTile> tiles;
};

/// Wheel of ten type-0 triangles around the origin.
PenrosePatch penrose_seed();

// ---------------------------------------------------------------- shared

inline constexpr std::size_t kTileCountCap = 1'000'000;

/// Throws InputError for negative generations, ResourceError when the tile
/// count would exceed `cap`.
PinwheelPatch substitute(const PinwheelPatch& patch, int generations, std::size_t cap = kTileCountCap);
PenrosePatch substitute(const PenrosePatch& patch, int generations, std::size_t cap = kTileCountCap);

/// Twice the signed area, in units of 1/25^g: integer shoelace of the numerators.
Int128 doubled_area_numerator(const PinwheelPatch& patch, const PinwheelTile& tile);
/// 4 i times the signed area, exactly: conj(B - A)(C - A) - (B - A)conj(C - A).
Cyclo5 doubled_area_i(const PenroseTile& tile);

bool is_reflected(const PenroseTile& tile);

/// Point (1/2, 1/2) in the tile frame (right-angle corner at the origin,
/// long leg along x). With unit_area, coordinates are scaled so every tile
/// has area 1.
PointSet reference_points(const PinwheelPatch& patch, bool unit_area = true);
/// Robinson triangles have no designated reference point: throws InputError.
PointSet reference_points(const PenrosePatch& patch, bool unit_area = true);

/// Distinct (chirality, rotation) pairs among the tiles.
std::size_t orientation_census(const PinwheelPatch& patch);
std::size_t orientation_census(const PenrosePatch& patch);

enum class PenroseGraphVariant { Rhombi, Triangles };

struct TilingGraph {
  Graph graph;
  std::vector<std::array<double, 2>> positions;
  std::size_t faces = 0;
  /// Vertices lying in the interior of some tile side (T-junctions).
  std::size_t midpoint_vertices = 0;

  std::int64_t euler_characteristic() const {
    return static_cast<std::int64_t>(graph.vertex_count) - static_cast<std::int64_t>(graph.edges.size()) +
           static_cast<std::int64_t>(faces);
  }
};

/// Vertices are exact-deduplicated tile corners in sorted exact order; edges
/// are tile sides split at every vertex lying on them.
TilingGraph extract_graph(const PinwheelPatch& patch);
/// The rhombus variant glues type-equal triangle pairs along their shared
/// base BC and drops that base; unpaired bases on the boundary are kept.
TilingGraph extract_graph(const PenrosePatch& patch, PenroseGraphVariant variant = PenroseGraphVariant::Rhombi);

struct TileRecord {
  int type = 0;
  bool reflected = false;
  double rotation_deg = 0;
  double tx = 0, ty = 0;
};

std::vector<TileRecord> tile_records(const PinwheelPatch& patch);
std::vector<TileRecord> tile_records(const PenrosePatch& patch);

}  // namespace qclab
