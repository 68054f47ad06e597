#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace qclab {

/// Simple undirected graph on vertices 0..vertex_count-1.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, no duplicates
};

enum class SpectrumMode { Dense, Iterative };

/// Dense mode refuses graphs above this many vertices.
inline constexpr std::size_t kDenseVertexBudget = 4096;

struct GraphSpectrumOptions {
  SpectrumMode mode = SpectrumMode::Dense;
  double tol = 1e-10;
  /// Integrated density of states N(E) = #{eigenvalues < E} / n is reported
  /// at `bins + 1` equally spaced energies on [ids_lo, ids_hi]. When the
  /// range is left empty it defaults to [-2 max_degree, 0] padded by 1e-3.
  std::size_t bins = 200;
  double ids_lo = 0;
  double ids_hi = 0;
};

struct GraphSpectrum {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  bool connected = true;
  std::vector<double> eigenvalues;  // dense mode only, ascending
  double min_eigenvalue = 0;
  double max_eigenvalue = 0;
  double eigenvalue_sum = 0;  // dense: sum of eigenvalues; iterative: trace
  std::vector<double> ids_energies;
  std::vector<double> ids;
  std::vector<std::size_t> histogram;  // eigenvalue counts per IDS bin
};

/// Spectrum of H = A - D (adjacency minus degree). Disconnected graphs are
/// flagged, not rejected. Throws InputError on malformed graphs and
/// ResourceError when dense mode exceeds kDenseVertexBudget.
GraphSpectrum graph_operator_spectrum(const Graph& graph, const GraphSpectrumOptions& options = {});

/// Mean absolute difference of two IDS curves sampled at the same energies.
double ids_l1_distance(const GraphSpectrum& a, const GraphSpectrum& b);

}  // namespace qclab
