#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qclab/core/pointset.hpp"

namespace qclab {

/// Axis-aligned cube [c - s/2, c + s/2)^d or open ball |x - c| < s.
struct RegionSpec {
  enum class Kind { AlignedSquare, Ball };
  Kind kind = Kind::AlignedSquare;
  std::vector<double> center;
  double size = 1.0;

  void validate(int dim) const;
  bool contains(std::span<const double> x) const;
  double volume() const;
  /// Perimeter (cube faces) or sphere surface; 2 in dimension one.
  double boundary_measure() const;
};

struct DiscrepancySample {
  RegionSpec region;
  std::size_t count = 0;
  double expected = 0;
  double D = 0;
  double boundary = 0;
};

/// count / volume of `region`. Throws InputError for an empty set or when the
/// region's bounding box leaves the bounding box of the points.
double density_estimate(const PointSet& points, const RegionSpec& region);

/// Exact counts per region; D = |count - density * volume|.
/// Throws InputError unless density > 0.
std::vector<DiscrepancySample> discrepancy_sweep(const PointSet& points, double density,
                                                 const std::vector<RegionSpec>& regions);

struct GrowthFit {
  double exponent = 0;
  double intercept = 0;
  bool log_correction = false;
  double power_rss = 0;
  double log_rss = 0;
  /// Bins: boundary measure, max D, power-law residual in log space.
  std::vector<double> boundary;
  std::vector<double> max_d;
  std::vector<double> residuals;
};

/// Groups samples by equal boundary measure, keeps the maximal D per group
/// and fits log maxD = a + e log B. The log flag is set when the one-parameter
/// model maxD = c B log B leaves a smaller residual sum of squares in log space.
/// Bins with D = 0 carry no information on a log scale and are skipped.
/// Throws InputError for fewer than 8 samples or a boundary span under two decades.
GrowthFit growth_fit(const std::vector<DiscrepancySample>& samples);

}  // namespace qclab
