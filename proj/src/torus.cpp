#include "qclab/torus.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {
namespace {

std::string triple(const TorusPointExact& p) {
  return "(" + std::to_string(p.m) + "," + std::to_string(p.n) + "," + std::to_string(p.k) + ")";
}

void check_separated(const TorusPointExact& a, const TorusPointExact& b) {
  const double sep = (b.value - a.value).to_double();
  if (!(sep > a.value.error_bound() + b.value.error_bound() + HighPrec::kUnitRoundoff)) {
    throw NumericError("torus ordering ambiguous between points " + triple(a) + " and " + triple(b) +
                       "; rerun with higher-precision inputs");
  }
}

TorusPointExact make_point(const HighPrec& alpha, const HighPrec& beta, std::int64_t m, std::int64_t n) {
  HighPrec v = HighPrec(m) * alpha + HighPrec(n) * beta;
  const std::int64_t k = v.floor_int();
  HighPrec f = v - HighPrec(k);
  if (f.to_double() <= f.error_bound() && !(m == 0 && n == 0))
    throw NumericError("torus point (" + std::to_string(m) + "," + std::to_string(n) + ") indistinguishable from an integer");
  return {m, n, k, f};
}

std::array<std::int64_t, 3> gap_between(const TorusPointExact& a, const TorusPointExact& b) {
  // b.value - a.value = (b.m - a.m) alpha + (b.n - a.n) beta - (b.k - a.k)
  return {b.m - a.m, b.n - a.n, a.k - b.k};
}

std::array<std::int64_t, 3> wrap_gap(const TorusPointExact& last, const TorusPointExact& first) {
  auto g = gap_between(last, first);
  g[2] += 1;
  return g;
}

HighPrec gap_length(const HighPrec& alpha, const HighPrec& beta, const std::array<std::int64_t, 3>& c) {
  return HighPrec(c[0]) * alpha + HighPrec(c[1]) * beta + HighPrec(c[2]);
}

}  // namespace

std::vector<TorusPointExact> torus_points(const HighPrec& alpha, const HighPrec& beta, std::int64_t M, std::int64_t N) {
  if (M < 1 || N < 1) throw InputError("torus_points: M and N must be >= 1");
  const std::size_t total = static_cast<std::size_t>(M) * static_cast<std::size_t>(N);
  std::vector<TorusPointExact> pts(total);
  parallel_for(total, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto m = static_cast<std::int64_t>(i / static_cast<std::size_t>(N));
      const auto n = static_cast<std::int64_t>(i % static_cast<std::size_t>(N));
      pts[i] = make_point(alpha, beta, m, n);
    }
  });
  std::sort(pts.begin(), pts.end(), [](const TorusPointExact& a, const TorusPointExact& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::tie(a.m, a.n) < std::tie(b.m, b.n);
  });
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) check_separated(pts[i], pts[i + 1]);
  return pts;
}

GapReport gap_report(const HighPrec& alpha, const HighPrec& beta, std::int64_t M, std::int64_t N) {
  const auto pts = torus_points(alpha, beta, M, N);
  std::map<std::array<std::int64_t, 3>, std::int64_t> census;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) ++census[gap_between(pts[i], pts[i + 1])];
  ++census[wrap_gap(pts.back(), pts.front())];
  GapReport r;
  r.point_count = pts.size();
  for (const auto& [c, mult] : census) {
    HighPrec len = gap_length(alpha, beta, c);
    if (!(len.to_double() > len.error_bound())) throw NumericError("gap_report: non-positive gap length");
    r.classes.push_back({c, len, mult});
  }
  r.distinct = r.classes.size();
  return r;
}

std::vector<std::size_t> three_distance_sweep(const HighPrec& alpha, std::int64_t n_max) {
  if (n_max < 1) throw InputError("three_distance_sweep: n_max must be >= 1");
  auto less = [](const TorusPointExact& a, const TorusPointExact& b) { return a.value < b.value; };
  std::set<TorusPointExact, decltype(less)> pts(less);
  std::map<std::array<std::int64_t, 3>, std::int64_t> census;
  auto add = [&](const std::array<std::int64_t, 3>& g, std::int64_t d) {
    auto& c = census[g];
    c += d;
    if (c == 0) census.erase(g);
  };
  std::vector<std::size_t> out;
  const HighPrec zero(0.0);
  for (std::int64_t n = 0; n < n_max; ++n) {
    TorusPointExact p = make_point(alpha, zero, n, 0);
    p.n = 0;
    p.m = n;
    auto [it, inserted] = pts.insert(p);
    if (!inserted) throw NumericError("three_distance_sweep: coincident points at n = " + std::to_string(n));
    if (pts.size() == 1) {
      add({0, 0, 1}, 1);
    } else {
      auto prev = it == pts.begin() ? std::prev(pts.end()) : std::prev(it);
      auto next = std::next(it) == pts.end() ? pts.begin() : std::next(it);
      const bool wraps_before = it == pts.begin();
      const bool wraps_after = std::next(it) == pts.end();
      if (!wraps_before) check_separated(*prev, *it);
      if (!wraps_after) check_separated(*it, *next);
      // Remove the gap prev -> next, add prev -> p and p -> next.
      auto g_old = (wraps_before || wraps_after) ? wrap_gap(*prev, *next) : gap_between(*prev, *next);
      add(g_old, -1);
      add(wraps_before ? wrap_gap(*prev, *it) : gap_between(*prev, *it), 1);
      add(wraps_after ? wrap_gap(*it, *next) : gap_between(*it, *next), 1);
    }
    out.push_back(census.size());
  }
  return out;
}

LittlewoodScan littlewood_scan(const HighPrec& alpha, const HighPrec& beta, std::int64_t n_max) {
  if (n_max < 1) throw InputError("littlewood_scan: Nmax must be >= 1");
  const std::size_t count = static_cast<std::size_t>(n_max);
  std::vector<HighPrec> vals(count);
  parallel_for(count, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const HighPrec n(static_cast<std::int64_t>(i + 1));
      vals[i] = n * dist_to_int(n * alpha) * dist_to_int(n * beta);
    }
  });
  LittlewoodScan s;
  s.values.reserve(count);
  s.running_min.reserve(count);
  s.argmin.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0 || vals[i] < s.min_value) {
      s.min_value = vals[i];
      s.min_n = static_cast<std::int64_t>(i + 1);
    }
    s.values.push_back(vals[i].to_double());
    s.running_min.push_back(s.min_value.to_double());
    s.argmin.push_back(s.min_n);
  }
  return s;
}

}  // namespace qclab
