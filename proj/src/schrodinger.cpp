#include "qclab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qclab/core/error.hpp"
#include "qclab/core/int128.hpp"
#include "qclab/core/parallel.hpp"

#include <Eigen/Eigenvalues>

namespace qclab {

std::vector<std::pair<std::int64_t, std::int64_t>> convergents(const HighPrec& alpha, int levels) {
  if (levels < 1) throw InputError("convergents: levels must be >= 1");
  if (!(alpha > HighPrec(0.0)) || !(alpha < HighPrec(1.0))) throw InputError("convergents: alpha must lie in (0, 1)");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t p_prev = 1, q_prev = 0, p = 0, q = 1;
  HighPrec r = alpha;
  for (int k = 1; k <= levels; ++k) {
    if (!(r.to_double() > r.error_bound())) throw NumericError("convergents: remainder lost to rounding at level " + std::to_string(k));
    const HighPrec x = HighPrec(1.0) / r;
    const std::int64_t a = x.floor_int();
    if (dist_to_int(x).to_double() <= x.error_bound())
      throw NumericError("convergents: partial quotient ambiguous at level " + std::to_string(k));
    std::int64_t pn, qn;
    if (__builtin_mul_overflow(a, p, &pn) || __builtin_add_overflow(pn, p_prev, &pn) ||
        __builtin_mul_overflow(a, q, &qn) || __builtin_add_overflow(qn, q_prev, &qn))
      throw NumericError("convergents: denominator overflow at level " + std::to_string(k));
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    out.emplace_back(p, q);
    r = x - HighPrec(a);
  }
  return out;
}

PeriodicApproximant make_approximant(const SturmianParams& params, std::int64_t p, std::int64_t q) {
  if (q < 1 || p < 0 || p > q) throw InputError("make_approximant: need 0 <= p <= q, q >= 1");
  PeriodicApproximant a;
  a.p = p;
  a.q = q;
  a.potential.resize(static_cast<std::size_t>(q));
  const bool left = params.convention == Convention::LeftClosed;
  const bool exact = params.theta.hi() == 0.0 && params.theta.lo() == 0.0;
  if (exact) {
    for (std::int64_t m = 0; m < q; ++m) {
      const std::int64_t r = static_cast<std::int64_t>((static_cast<Int128>(m) * p) % q);
      a.potential[static_cast<std::size_t>(m)] = left ? (r >= q - p) : (r == 0 || r > q - p);
    }
    return a;
  }
  SturmianParams rational = params;
  rational.alpha = HighPrec(p) / HighPrec(q);
  if (p == q) {
    std::fill(a.potential.begin(), a.potential.end(), 1);
    return a;
  }
  if (p == 0) return a;
  const BinaryWord w = sturmian_sample(rational, 0, q);
  a.potential = w.symbols;
  return a;
}

namespace {

inline std::uint8_t periodic_at(const PeriodicApproximant& a, std::int64_t m) {
  std::int64_t r = m % a.q;
  if (r < 0) r += a.q;
  return a.potential[static_cast<std::size_t>(r)];
}

Mat2 multiply_steps(double energy, double coupling, const std::vector<std::uint8_t>& xs) {
  // Columns of the running product, each updated by one step, in double-double.
  const HighPrec e(energy), shifted = HighPrec(energy) - HighPrec(coupling);
  HighPrec a(1.0), b(0.0), c(0.0), d(1.0);  // [[a, c], [b, d]]
  for (auto x : xs) {
    const HighPrec& t = x ? shifted : e;
    HighPrec na = t * a - b, nc = t * c - d;
    b = a;
    d = c;
    a = na;
    c = nc;
  }
  return {a.to_double(), c.to_double(), b.to_double(), d.to_double()};
}

}  // namespace

Mat2 transfer_matrix(double energy, const SturmianPotential& pot, std::int64_t from, std::int64_t to) {
  if (from > to) throw InputError("transfer_matrix: need from <= to");
  if (from == to) return {1, 0, 0, 1};
  return multiply_steps(energy, pot.coupling, sturmian_sample(pot.params, from, to).symbols);
}

Mat2 transfer_matrix(double energy, double coupling, const PeriodicApproximant& approx, std::int64_t from,
                     std::int64_t to) {
  if (from > to) throw InputError("transfer_matrix: need from <= to");
  std::vector<std::uint8_t> xs;
  for (std::int64_t m = from; m < to; ++m) xs.push_back(periodic_at(approx, m));
  return multiply_steps(energy, coupling, xs);
}

double discriminant(double energy, double coupling, const PeriodicApproximant& approx) {
  const HighPrec e(energy), lam(coupling);
  const HighPrec shifted = e - lam;
  HighPrec a(1.0), b(0.0), c(0.0), d(1.0);
  for (auto x : approx.potential) {
    const HighPrec& t = x ? shifted : e;
    HighPrec na = t * a - b, nc = t * c - d;
    b = a;
    d = c;
    a = na;
    c = nc;
  }
  return (a + d).to_double();
}

namespace {

// Eigenvalues of one period with Bloch phase +1 (periodic) or -1 (antiperiodic).
std::vector<double> bloch_eigenvalues(double coupling, const PeriodicApproximant& approx, double phase) {
  const auto q = static_cast<Eigen::Index>(approx.q);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index m = 0; m < q; ++m) h(m, m) = coupling * approx.potential[static_cast<std::size_t>(m)];
  if (q == 1) {
    h(0, 0) += 2 * phase;
  } else {
    for (Eigen::Index m = 0; m + 1 < q; ++m) h(m, m + 1) = h(m + 1, m) = 1.0;
    h(0, q - 1) += phase;
    h(q - 1, 0) += phase;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("approximant_bands: eigenvalue solver failed");
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

ApproximantSpectrum approximant_bands(double coupling, const PeriodicApproximant& approx, double edge_tol) {
  if (!std::isfinite(coupling)) throw InputError("approximant_bands: coupling must be a finite real");
  if (!(edge_tol > 0)) throw InputError("approximant_bands: edgeTol must be positive");
  const std::int64_t q = approx.q;
  if (q < 1 || approx.potential.size() != static_cast<std::size_t>(q)) throw InputError("approximant_bands: malformed approximant");
  if (q > kMaxApproximantPeriod)
    throw ResourceError("approximant_bands: period " + std::to_string(q) + " exceeds " + std::to_string(kMaxApproximantPeriod));

  // Band edges are the energies with Delta = +-2, i.e. the periodic and
  // antiperiodic eigenvalues; sorted together they pair up band by band.
  std::vector<double> edges = bloch_eigenvalues(coupling, approx, 1.0);
  const auto anti = bloch_eigenvalues(coupling, approx, -1.0);
  edges.insert(edges.end(), anti.begin(), anti.end());
  std::sort(edges.begin(), edges.end());

  ApproximantSpectrum out;
  out.p = approx.p;
  out.q = q;
  for (std::size_t j = 0; j < static_cast<std::size_t>(q); ++j) out.bands.push_back({edges[2 * j], edges[2 * j + 1]});
  for (std::size_t j = 0; j + 1 < out.bands.size(); ++j) {
    auto& l = out.bands[j];
    auto& r = out.bands[j + 1];
    if (r.lo - l.hi <= 2 * edge_tol) {
      const double mid = 0.5 * (l.hi + r.lo);
      l.hi = std::max(l.lo, mid);
      r.lo = std::min(r.hi, mid);
    }
  }
  out.set = BandSet::normalize(out.bands, 0.0);
  out.measure = out.set.measure();
  return out;
}

std::vector<ApproximantSpectrum> spectrum_cascade(double coupling, const SturmianParams& params, int levels,
                                                  double edge_tol) {
  std::vector<ApproximantSpectrum> out;
  for (auto [p, q] : convergents(params.alpha, levels))
    out.push_back(approximant_bands(coupling, make_approximant(params, p, q), edge_tol));
  return out;
}

TraceEscape fibonacci_trace_escape(double coupling, double energy, int max_iter, double escape_radius) {
  if (max_iter < 1) throw InputError("fibonacci_trace_escape: maxIter must be >= 1");
  if (!(escape_radius > 1)) throw InputError("fibonacci_trace_escape: escapeRadius must exceed 1");
  HighPrec xm1(1.0), x0 = HighPrec(energy) / HighPrec(2.0), x1 = (HighPrec(energy) - HighPrec(coupling)) / HighPrec(2.0);
  auto fricke = [](const HighPrec& a, const HighPrec& b, const HighPrec& c) {
    return a * a + b * b + c * c - HighPrec(2.0) * a * b * c - HighPrec(1.0);
  };
  TraceEscape out;
  out.traces = {xm1.to_double(), x0.to_double(), x1.to_double()};
  const HighPrec i0 = fricke(x1, x0, xm1);
  out.invariant = i0.to_double();
  auto escaped = [&](const HighPrec& x) { return !std::isfinite(x.to_double()) || std::fabs(x.to_double()) > escape_radius; };
  if (escaped(x0) || escaped(x1)) {
    out.escaped = true;
    return out;
  }
  for (int k = 1; k <= max_iter; ++k) {
    HighPrec x2 = HighPrec(2.0) * x1 * x0 - xm1;
    xm1 = x0;
    x0 = x1;
    x1 = x2;
    out.traces.push_back(x1.to_double());
    out.iteration = k;
    if (!std::isfinite(x1.to_double())) {
      out.escaped = true;
      return out;
    }
    out.max_drift = std::max(out.max_drift, std::fabs((fricke(x1, x0, xm1) - i0).to_double()));
    if (escaped(x1)) {
      out.escaped = true;
      return out;
    }
  }
  return out;
}

BandSet spectrum_2d_separable(double lambda1, double lambda2, int level, double edge_tol) {
  if (level < 1) throw InputError("spectrum_2d_separable: level must be >= 1");
  SturmianParams params{parse_real("golden"), HighPrec(0.0), Convention::LeftClosed};
  const auto [p, q] = convergents(params.alpha, level).back();
  const auto approx = make_approximant(params, p, q);
  const auto s1 = approximant_bands(lambda1, approx, edge_tol);
  const auto s2 = approximant_bands(lambda2, approx, edge_tol);
  return minkowski_sum(s1.set, s2.set);
}

CantorvalReport cantorval_report(const BandSet& bands, double eps) {
  if (!(eps > 0)) throw InputError("cantorval_report: resolution must be positive");
  if (bands.empty()) throw InputError("cantorval_report: empty band set");
  struct Component {
    double lo, hi, measure;
  };
  std::vector<Component> comps;
  for (const auto& b : bands.bands()) {
    if (!comps.empty() && b.lo - comps.back().hi < eps) {
      comps.back().hi = b.hi;
      comps.back().measure += b.length();
    } else {
      comps.push_back({b.lo, b.hi, b.length()});
    }
  }
  CantorvalReport r;
  r.resolution = eps;
  r.component_count = comps.size();
  r.gap_count = comps.size() - 1;
  const double inf = std::numeric_limits<double>::infinity();
  double total = 0, interior = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    total += comps[i].measure;
    if (comps[i].hi - comps[i].lo > eps) interior += comps[i].measure;
    if (i + 1 < comps.size()) r.total_gap_measure += comps[i + 1].lo - comps[i].hi;
    const double gl = i > 0 ? comps[i].lo - comps[i - 1].hi : inf;
    const double gr = i + 1 < comps.size() ? comps[i + 1].lo - comps[i].hi : inf;
    if (comps[i].hi - comps[i].lo < eps && gl > eps && gr > eps) ++r.isolated_component_count;
  }
  r.interior_fraction = total > 0 ? interior / total : 0.0;
  return r;
}

}  // namespace qclab
