#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qclab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Gaps narrower than this are treated as touching and merged.
inline constexpr double kBandTouchTolerance = 1e-12;

/// Sorted, pairwise disjoint closed intervals separated by positive gaps.
/// Construct through `normalize`, which is the only way to obtain a
/// non-empty set, so the invariant always holds.
class BandSet {
 public:
  BandSet() = default;

  /// Sorts, merges overlapping or touching intervals (gap < merge_tol).
  /// Throws InputError if some interval has lo > hi or a NaN endpoint.
  static BandSet normalize(std::vector<Interval> intervals, double merge_tol = kBandTouchTolerance);

  const std::vector<Interval>& bands() const { return bands_; }
  std::size_t size() const { return bands_.size(); }
  bool empty() const { return bands_.empty(); }
  double measure() const;
  bool contains(double x) const;
  double lower() const { return bands_.front().lo; }
  double upper() const { return bands_.back().hi; }

  friend bool operator==(const BandSet&, const BandSet&) = default;

 private:
  std::vector<Interval> bands_;
};

/// Sumset {a + b}: all pairwise interval sums, normalized.
BandSet minkowski_sum(const BandSet& a, const BandSet& b);

/// Lebesgue measure of the symmetric difference of two band sets.
double symmetric_difference_measure(const BandSet& a, const BandSet& b);

}  // namespace qclab
