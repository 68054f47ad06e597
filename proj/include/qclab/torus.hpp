#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qclab/core/highprec.hpp"

namespace qclab {

/// m alpha + n beta - k, with k = floor(m alpha + n beta).
struct TorusPointExact {
  std::int64_t m = 0, n = 0, k = 0;
  HighPrec value;
};

/// Gap of length dm alpha + dn beta + dk.
struct GapClass {
  std::array<std::int64_t, 3> coeffs{};
  HighPrec length;
  std::int64_t multiplicity = 0;
};

struct GapReport {
  std::vector<GapClass> classes;  // sorted by coefficient triple
  std::size_t distinct = 0;       // G(M, N)
  std::size_t point_count = 0;
};

/// All M N points sorted by value. Throws InputError for M, N < 1 and
/// NumericError naming both triples when two values are not separated by
/// their combined error bounds.
std::vector<TorusPointExact> torus_points(const HighPrec& alpha, const HighPrec& beta, std::int64_t M, std::int64_t N);

/// Circular gaps of the sorted point set, classified by coefficient triple.
GapReport gap_report(const HighPrec& alpha, const HighPrec& beta, std::int64_t M, std::int64_t N);

/// G(1, N) for N = 1..n_max by incremental insertion of {n alpha}.
/// Same classification and ambiguity rules as gap_report.
std::vector<std::size_t> three_distance_sweep(const HighPrec& alpha, std::int64_t n_max);

struct LittlewoodScan {
  std::vector<double> values;       // n ||n alpha|| ||n beta||, n = 1..Nmax
  std::vector<double> running_min;  // non-increasing
  std::vector<std::int64_t> argmin; // n attaining running_min at each step
  HighPrec min_value;
  std::int64_t min_n = 0;
};

/// Throws InputError for n_max < 1.
LittlewoodScan littlewood_scan(const HighPrec& alpha, const HighPrec& beta, std::int64_t n_max);

}  // namespace qclab
