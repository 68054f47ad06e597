#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qclab/core/bandset.hpp"
#include "qclab/core/highprec.hpp"
#include "qclab/core/pointset.hpp"

namespace qclab {

/// Acceptance region in internal coordinates (coefficients with respect to
/// the scheme's internal basis). Boxes are half-open [lo, hi) per axis.
/// Polytopes are {y : A y <= b}, bounded by `bounds`. Predicate windows test
/// the lattice point itself and carry only an enumeration bounding box.
struct Window {
  enum class Kind { Box, Polytope, Predicate };
  Kind kind = Kind::Box;
  std::vector<Interval> bounds;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::function<bool(std::span<const std::int64_t>, std::span<const double>)> predicate;

  static Window box(std::vector<Interval> bounds);
  static Window polytope(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<Interval> bounds);
  static Window from_predicate(std::function<bool(std::span<const std::int64_t>, std::span<const double>)> pred,
                               std::vector<Interval> bounds);

  bool contains(std::span<const std::int64_t> lattice, std::span<const double> internal) const;
  bool has_interior() const;
};

/// Lattice Z^k split as E + F. Physical coordinates of a lattice point are
/// its coefficients along `physical_basis`, internal coordinates its
/// coefficients along `internal_basis`.
struct CPSScheme {
  int k = 0;
  int d = 0;
  std::vector<std::vector<double>> physical_basis;
  std::vector<std::vector<double>> internal_basis;
  Window window;
  bool totally_irrational = false;

  /// Coefficients (physical..., internal...) of a vector of R^k.
  std::vector<double> split(std::span<const double> x) const;
  std::vector<std::vector<double>> inverse_basis() const;
};

/// E(alpha, beta) = {(x, y, alpha x + beta y)} with internal direction
/// (-alpha, -beta, 1) and the projected half-open unit cube as window.
CPSScheme canonical_scheme(const HighPrec& alpha, const HighPrec& beta);

/// Line of the given slope in Z^2 with orthogonal internal direction and the
/// projected unit square as window. Slope golden gives the Fibonacci chain.
CPSScheme line_scheme(const HighPrec& slope);

/// Projected half-open unit cube for a scheme's current bases.
Window canonical_window(const CPSScheme& scheme);

/// All projections with |physical| <= radius (Euclidean norm of the
/// physical coefficients). Result carries lattice labels and is sorted by
/// them. Throws InputError for boxes or polytopes without interior, bad
/// bases or radius <= 0.
PointSet generate_cps(const CPSScheme& scheme, double radius);

struct PatchShape {
  enum class Kind { AlignedSquare, AlignedRectangle, Ball };
  Kind kind = Kind::Ball;
  double width = 1;   // side of square / rectangle, or ball radius
  double height = 1;  // rectangle only

  /// Anchor-centred membership; squares and rectangles are half-open.
  bool contains(std::span<const double> offset) const;
  double extent() const;  // half-width of a bounding cube
};

struct AnchorSpec {
  /// Anchors are points p whose shape (ball, or the square's circumscribed
  /// ball) around p stays within region_radius of the centre.
  double region_radius = 0;
  /// If positive and more anchors qualify, a seeded sample of this size is used.
  std::size_t max_anchors = 0;
  std::uint64_t seed = 1;
  /// Whether configurations touching the shape boundary (within tolerance) are kept.
  bool include_boundary = true;
  double tolerance = 1e-9;
  /// Confidence multiplier for frequency clustering.
  double z = 3.0;
  /// Region centre; empty means the origin.
  std::vector<double> center;
};

struct PatchClass {
  std::size_t count = 0;
  double frequency = 0;
  std::size_t points = 0;
};

struct PatchStatistics {
  std::size_t anchors = 0;
  std::vector<PatchClass> classes;   // sorted by decreasing count
  std::vector<double> frequency_levels;  // cluster means, ascending
  std::size_t distinct_frequencies = 0;  // estimator of #xi
};

/// Translation classes of anchor-centred patches. Exact (integer lattice
/// differences) when the point set carries lattice labels, otherwise
/// coordinates are matched on a `tolerance` grid. Frequencies whose
/// z-sigma binomial intervals overlap are merged.
/// Throws InputError when no anchor fits in the region.
PatchStatistics patch_statistics(const PointSet& points, const PatchShape& shape, const AnchorSpec& anchors);

struct ComplexityPoint {
  double radius = 0;
  std::size_t classes = 0;
  double reference = 0;  // r^d
};

/// p(r) for r = step, 2 step, ..., up to r_max, using ball patches anchored
/// at points with |p - center| + r <= region_radius.
std::vector<ComplexityPoint> patch_complexity(const PointSet& points, double r_max, double step, double region_radius,
                                              std::vector<double> center = {});

/// Log-log least squares slope of classes against radius.
double loglog_slope(const std::vector<ComplexityPoint>& series);

struct WeissResult {
  Window window;
  /// Lattice points n of Z^3 in the slab S' whose E-projection lies in Y'.
  std::vector<std::array<std::int64_t, 3>> lattice;
  /// E-coordinates (n1, n2) of each lattice point.
  PointSet points;
  /// n3 - alpha n1 - beta n2, the offset from the plane along e3.
  std::vector<double> displacement;
  double slab_height = 1.0;
};

/// Slab S' = {x : 0 <= x3 - alpha x1 - beta x2 < 1} with window membership
/// n in S' and (n1, n2) in Y'. Evaluates Y over [x_lo, x_hi) x [y_lo, y_hi).
WeissResult weiss_window(const HighPrec& alpha, const HighPrec& beta,
                         const std::function<bool(std::int64_t, std::int64_t)>& yprime, std::int64_t x_lo,
                         std::int64_t x_hi, std::int64_t y_lo, std::int64_t y_hi);

}  // namespace qclab
