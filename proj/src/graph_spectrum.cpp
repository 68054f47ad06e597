#include "qclab/graph_spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <queue>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"
#include "qclab/core/tridiagonal.hpp"

namespace qclab {
namespace {

bool is_connected(const Graph& g) {
  if (g.vertex_count <= 1) return true;
  std::vector<std::vector<std::uint32_t>> adj(g.vertex_count);
  for (auto [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(g.vertex_count, false);
  std::queue<std::uint32_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
  }
  return count == g.vertex_count;
}

Eigen::SparseMatrix<double> operator_matrix(const Graph& g, double shift) {
  std::vector<Eigen::Triplet<double>> t;
  std::vector<double> deg(g.vertex_count, 0.0);
  for (auto [i, j] : g.edges) {
    t.emplace_back(static_cast<int>(i), static_cast<int>(j), 1.0);
    t.emplace_back(static_cast<int>(j), static_cast<int>(i), 1.0);
    deg[i] += 1;
    deg[j] += 1;
  }
  for (std::size_t i = 0; i < g.vertex_count; ++i) t.emplace_back(static_cast<int>(i), static_cast<int>(i), -deg[i] - shift);
  Eigen::SparseMatrix<double> m(static_cast<int>(g.vertex_count), static_cast<int>(g.vertex_count));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Sylvester inertia: number of negative pivots of LDL^T(H - sigma I).
std::size_t count_below(const Graph& g, double sigma) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(operator_matrix(g, sigma));
    if (ldlt.info() == Eigen::Success) {
      const auto& d = ldlt.vectorD();
      bool singular = false;
      std::size_t neg = 0;
      for (int i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0 || !std::isfinite(d[i])) singular = true;
        if (d[i] < 0) ++neg;
      }
      if (!singular) return neg;
    }
    sigma += 1e-9 * (attempt + 1);
  }
  throw NumericError("graph_operator_spectrum: inertia count failed near E = " + std::to_string(sigma));
}

}  // namespace

GraphSpectrum graph_operator_spectrum(const Graph& g, const GraphSpectrumOptions& opt) {
  if (g.vertex_count == 0) throw InputError("graph_operator_spectrum: empty graph");
  if (!(opt.tol > 0)) throw InputError("graph_operator_spectrum: tol must be positive");
  if (opt.bins < 1) throw InputError("graph_operator_spectrum: need at least one IDS bin");
  std::vector<std::size_t> deg(g.vertex_count, 0);
  for (auto [i, j] : g.edges) {
    if (i >= g.vertex_count || j >= g.vertex_count || i == j) throw InputError("graph_operator_spectrum: malformed edge");
    ++deg[i];
    ++deg[j];
  }
  const std::size_t n = g.vertex_count;
  GraphSpectrum out;
  out.vertex_count = n;
  out.edge_count = g.edges.size();
  out.connected = is_connected(g);

  double lo = opt.ids_lo, hi = opt.ids_hi;
  if (!(hi > lo)) {
    const double maxdeg = static_cast<double>(*std::max_element(deg.begin(), deg.end()));
    lo = -2.0 * maxdeg - 1e-3;
    hi = 1e-3;
  }
  for (std::size_t b = 0; b <= opt.bins; ++b)
    out.ids_energies.push_back(lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(opt.bins));
  out.ids.assign(opt.bins + 1, 0.0);

  if (opt.mode == SpectrumMode::Dense) {
    if (n > kDenseVertexBudget)
      throw ResourceError("graph_operator_spectrum: dense mode is limited to " + std::to_string(kDenseVertexBudget) +
                          " vertices, graph has " + std::to_string(n));
    Eigen::MatrixXd h = Eigen::MatrixXd(operator_matrix(g, 0.0));
    Eigen::Tridiagonalization<Eigen::MatrixXd> tri(h);
    Eigen::VectorXd diag = tri.diagonal();
    Eigen::VectorXd sub = tri.subDiagonal();
    std::vector<double> d(diag.data(), diag.data() + diag.size());
    std::vector<double> e(sub.data(), sub.data() + sub.size());
    out.eigenvalues = eig_sym_tridiagonal(d, e, opt.tol);
    out.min_eigenvalue = out.eigenvalues.front();
    out.max_eigenvalue = out.eigenvalues.back();
    for (double v : out.eigenvalues) out.eigenvalue_sum += v;
    for (std::size_t b = 0; b <= opt.bins; ++b) {
      const auto c = std::lower_bound(out.eigenvalues.begin(), out.eigenvalues.end(), out.ids_energies[b]) -
                     out.eigenvalues.begin();
      out.ids[b] = static_cast<double>(c) / static_cast<double>(n);
    }
  } else {
    std::vector<std::size_t> counts(opt.bins + 1);
    parallel_for(opt.bins + 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) counts[i] = count_below(g, out.ids_energies[i]);
    });
    for (std::size_t b = 0; b <= opt.bins; ++b) out.ids[b] = static_cast<double>(counts[b]) / static_cast<double>(n);
    // Extremes by bisection on the inertia count inside the Gershgorin range.
    const double glo = -2.0 * static_cast<double>(*std::max_element(deg.begin(), deg.end())) - 1.0;
    double a = glo, c = 1.0;
    while (c - a > opt.tol) {
      const double mid = 0.5 * (a + c);
      if (mid <= a || mid >= c) break;
      if (count_below(g, mid) >= 1) c = mid;
      else a = mid;
    }
    out.min_eigenvalue = 0.5 * (a + c);
    a = glo;
    c = 1.0;
    while (c - a > opt.tol) {
      const double mid = 0.5 * (a + c);
      if (mid <= a || mid >= c) break;
      if (count_below(g, mid) >= n) c = mid;
      else a = mid;
    }
    out.max_eigenvalue = 0.5 * (a + c);
    for (auto d : deg) out.eigenvalue_sum -= static_cast<double>(d);
  }
  out.histogram.assign(opt.bins, 0);
  for (std::size_t b = 0; b < opt.bins; ++b) {
    const double diff = (out.ids[b + 1] - out.ids[b]) * static_cast<double>(n);
    out.histogram[b] = static_cast<std::size_t>(std::llround(diff));
  }
  return out;
}

double ids_l1_distance(const GraphSpectrum& a, const GraphSpectrum& b) {
  if (a.ids_energies != b.ids_energies) throw InputError("ids_l1_distance: IDS sampled at different energies");
  double s = 0;
  for (std::size_t i = 0; i < a.ids.size(); ++i) s += std::fabs(a.ids[i] - b.ids[i]);
  return s / static_cast<double>(a.ids.size());
}

}  // namespace qclab
