#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace qclab {

/// Finite point cloud in R^dim, stored row-major. Optional per-point type
/// labels and integer lattice labels (rank `lattice_rank`) ride along.
struct PointSet {
  int dim = 2;
  std::vector<double> coords;
  std::vector<int> types;
  int lattice_rank = 0;
  std::vector<std::int64_t> lattice;

  std::size_t size() const { return dim > 0 ? coords.size() / static_cast<std::size_t>(dim) : 0; }
  bool empty() const { return coords.empty(); }
  double at(std::size_t i, int c) const { return coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)]; }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  std::span<const std::int64_t> lattice_point(std::size_t i) const {
    return {lattice.data() + i * static_cast<std::size_t>(lattice_rank), static_cast<std::size_t>(lattice_rank)};
  }
  bool has_lattice() const { return lattice_rank > 0 && lattice.size() == size() * static_cast<std::size_t>(lattice_rank); }

  void push(std::span<const double> p);
};

/// Uniform bucket grid over a point set for fixed-radius queries.
/// Dimensions 1 to 3.
class SpatialGrid {
 public:
  SpatialGrid(const PointSet& points, double cell);

  /// Indices of points with every coordinate within `half` of `center`
  /// (a superset filter; callers apply the exact shape test). Sorted.
  std::vector<std::size_t> box_query(std::span<const double> center, double half) const;

 private:
  std::int64_t key(const std::int64_t* cell) const;

  const PointSet* points_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace qclab
