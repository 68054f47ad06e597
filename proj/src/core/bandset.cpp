#include "qclab/core/bandset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qclab/core/error.hpp"

namespace qclab {

BandSet BandSet::normalize(std::vector<Interval> intervals, double merge_tol) {
  for (const auto& iv : intervals) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) {
      throw InputError("malformed interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  BandSet out;
  for (const auto& iv : intervals) {
    if (!out.bands_.empty() && iv.lo <= out.bands_.back().hi + merge_tol) {
      out.bands_.back().hi = std::max(out.bands_.back().hi, iv.hi);
    } else {
      out.bands_.push_back(iv);
    }
  }
  return out;
}

double BandSet::measure() const {
  double m = 0.0;
  for (const auto& b : bands_) m += b.length();
  return m;
}

bool BandSet::contains(double x) const {
  auto it = std::upper_bound(bands_.begin(), bands_.end(), x,
                             [](double v, const Interval& b) { return v < b.lo; });
  if (it == bands_.begin()) return false;
  --it;
  return x <= it->hi;
}

BandSet minkowski_sum(const BandSet& a, const BandSet& b) {
  std::vector<Interval> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& x : a.bands())
    for (const auto& y : b.bands()) sums.push_back({x.lo + y.lo, x.hi + y.hi});
  return BandSet::normalize(std::move(sums));
}

double symmetric_difference_measure(const BandSet& a, const BandSet& b) {
  // Sweep over all endpoints; each elementary segment is in a, b, both or neither.
  std::vector<double> cuts;
  for (const auto& iv : a.bands()) cuts.insert(cuts.end(), {iv.lo, iv.hi});
  for (const auto& iv : b.bands()) cuts.insert(cuts.end(), {iv.lo, iv.hi});
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    if (w <= 0) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (a.contains(mid) != b.contains(mid)) total += w;
  }
  return total;
}

}  // namespace qclab
