#include "qclab/core/pointset.hpp"

#include <algorithm>
#include <cmath>

#include "qclab/core/error.hpp"

namespace qclab {

void PointSet::push(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }

namespace {
constexpr std::int64_t kCellSpan = 1 << 20;
}

SpatialGrid::SpatialGrid(const PointSet& points, double cell) : points_(&points), cell_(cell) {
  if (points.dim < 1 || points.dim > 3) throw InputError("SpatialGrid: dimension must be 1, 2 or 3");
  if (!(cell > 0)) throw InputError("SpatialGrid: cell size must be positive");
  std::int64_t c[3] = {0, 0, 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int d = 0; d < points.dim; ++d) c[d] = static_cast<std::int64_t>(std::floor(points.at(i, d) / cell_));
    buckets_[key(c)].push_back(i);
  }
}

std::int64_t SpatialGrid::key(const std::int64_t* cell) const {
  std::int64_t k = 0;
  for (int d = 0; d < points_->dim; ++d) k = k * kCellSpan + (cell[d] + kCellSpan / 2);
  return k;
}

std::vector<std::size_t> SpatialGrid::box_query(std::span<const double> center, double half) const {
  const int dim = points_->dim;
  std::int64_t lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
  for (int d = 0; d < dim; ++d) {
    lo[d] = static_cast<std::int64_t>(std::floor((center[d] - half) / cell_));
    hi[d] = static_cast<std::int64_t>(std::floor((center[d] + half) / cell_));
  }
  std::vector<std::size_t> out;
  std::int64_t c[3];
  for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0])
    for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
      for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2]) {
        auto it = buckets_.find(key(c));
        if (it == buckets_.end()) continue;
        for (std::size_t i : it->second) {
          bool inside = true;
          for (int d = 0; d < dim && inside; ++d) inside = std::fabs(points_->at(i, d) - center[d]) <= half;
          if (inside) out.push_back(i);
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qclab
