#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qclab/core/pointset.hpp"

namespace qclab {

/// Wave-vector grid. Cartesian grids cover [-extent, extent]^dim with step
/// `step`; polar grids (dim 2) use radii 0, dr, 2 dr, ... <= extent and
/// `angles` equally spaced directions in [0, 2 pi).
struct KGrid {
  enum class Kind { Cartesian, Polar };
  Kind kind = Kind::Cartesian;
  double extent = 1.0;
  double step = 0.1;
  double dr = 0.02;
  int angles = 64;

  static KGrid cartesian(double extent, double step);
  static KGrid polar(double extent, double dr, int angles);

  void validate() const;
  /// Node coordinates, row-major with `dim` entries per node. Polar nodes are
  /// ordered radius-major.
  std::vector<double> nodes(int dim) const;
  std::size_t radius_count() const;
};

struct Taper {
  enum class Kind { None, Gaussian };
  Kind kind = Kind::None;
  double sigma = 0.0;
};

/// I(k) = |sum_j w_j exp(-2 pi i k.x_j)|^2 / sum_j w_j^2, with w_j = 1 unless
/// tapered (w_j = exp(-|x_j - c|^2 / 2 sigma^2), c the centroid). Without a
/// taper this is |sum_j exp(-2 pi i k.x_j)|^2 / N. Phases are reduced mod 1
/// before the trigonometric call, so integer k on integer points is exact.
/// Throws InputError on an empty set or a dimension mismatch.
std::vector<double> structure_factor(const PointSet& points, std::span<const double> kvectors, Taper taper = {});

struct DiffractionMap {
  KGrid grid;
  int dim = 2;
  std::vector<double> nodes;
  std::vector<double> intensity;
};

DiffractionMap structure_factor(const PointSet& points, const KGrid& grid, Taper taper = {});

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> intensity;
  std::vector<std::size_t> counts;
};

/// Mean over angles at each radius. Throws InputError for non-polar maps.
RadialProfile radial_average(const DiffractionMap& map);

/// Radial profile of I averaged over `rotations` uniformly random rotations
/// of the point set.
RadialProfile rotation_ensemble_profile(const PointSet& points, const KGrid& polar_grid, int rotations,
                                        std::uint64_t seed, Taper taper = {});

struct Ring {
  double radius = 0;
  double peak = 0;
  double prominence = 0;
};

/// Interior local maxima of the profile whose height above a centered moving
/// median (`window` samples, truncated at the ends) exceeds `prominence`.
/// Plateaus report their first sample. Sorted by radius.
std::vector<Ring> ring_detect(const RadialProfile& profile, double prominence, int window);

struct GrowthSlope {
  double slope = 0;
  double ci_lo = 0;
  double ci_hi = 0;
};

/// Per wave vector, least-squares slope of log I against log N across point
/// sets of increasing size, with a 95% Student-t interval. Intensities below
/// 1e-12 are floored there before taking logs.
/// Throws InputError for fewer than three point sets.
std::vector<GrowthSlope> component_growth_probe(const std::vector<PointSet>& sets, std::span<const double> kvectors,
                                                Taper taper = {});

}  // namespace qclab
