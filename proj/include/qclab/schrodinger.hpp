#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qclab/core/bandset.hpp"
#include "qclab/core/highprec.hpp"
#include "qclab/sequences.hpp"

namespace qclab {

struct SturmianPotential {
  double coupling = 0;
  SturmianParams params;
};

struct PeriodicApproximant {
  std::int64_t p = 0;
  std::int64_t q = 1;
  /// One period x_0 .. x_{q-1} of the coding with alpha replaced by p/q.
  std::vector<std::uint8_t> potential;
};

/// Convergents p_k/q_k, k = 1..levels, of the continued fraction of alpha in
/// (0, 1). For the golden mean q_k is the Fibonacci number F_{k+1}.
std::vector<std::pair<std::int64_t, std::int64_t>> convergents(const HighPrec& alpha, int levels);

PeriodicApproximant make_approximant(const SturmianParams& params, std::int64_t p, std::int64_t q);

/// Row-major 2x2 matrix.
using Mat2 = std::array<double, 4>;

/// T_{to-1} ... T_{from} with T_m = [[E - lambda x_m, -1], [1, 0]], accumulated
/// in double-double and rounded once.
Mat2 transfer_matrix(double energy, const SturmianPotential& pot, std::int64_t from, std::int64_t to);
Mat2 transfer_matrix(double energy, double coupling, const PeriodicApproximant& approx, std::int64_t from,
                     std::int64_t to);

/// Discriminant (trace of the period transfer matrix), in double-double.
double discriminant(double energy, double coupling, const PeriodicApproximant& approx);

struct ApproximantSpectrum {
  std::int64_t p = 0, q = 1;
  /// The q bands {|Delta| <= 2}, in order; adjacent touching bands share an endpoint.
  std::vector<Interval> bands;
  /// The same set with touching bands merged.
  BandSet set;
  double measure = 0;
};

inline constexpr std::int64_t kMaxApproximantPeriod = 6000;

/// Band edges are the eigenvalues of one period with periodic and
/// antiperiodic boundary conditions (Delta = 2 and Delta = -2); sorted
/// together, edges 2j and 2j+1 bound band j. Edges of adjacent bands closer
/// than 2 edgeTol are snapped to one touching point.
/// Throws InputError for non-finite coupling or edgeTol <= 0, ResourceError
/// for periods above kMaxApproximantPeriod.
ApproximantSpectrum approximant_bands(double coupling, const PeriodicApproximant& approx, double edge_tol = 1e-12);

/// Bands for the convergents of alpha at levels 1..levels.
std::vector<ApproximantSpectrum> spectrum_cascade(double coupling, const SturmianParams& params, int levels,
                                                  double edge_tol = 1e-12);

struct TraceEscape {
  bool escaped = false;
  int iteration = 0;  // escape iteration, or iterations performed when bounded
  double invariant = 0;  // I_0
  double max_drift = 0;  // max |I_k - I_0| over the computed orbit
  std::vector<double> traces;  // x_{-1}, x_0, x_1, ...
};

/// Fibonacci trace map x_{k+1} = 2 x_k x_{k-1} - x_{k-2} from
/// x_{-1} = 1, x_0 = E/2, x_1 = (E - lambda)/2, iterated in double-double.
/// Escape means |x_k| > escape_radius.
TraceEscape fibonacci_trace_escape(double coupling, double energy, int max_iter = 50, double escape_radius = 10.0);

/// Sumset of the two 1D approximant spectra at a golden-mean convergent level, theta = 0.
BandSet spectrum_2d_separable(double lambda1, double lambda2, int level, double edge_tol = 1e-12);

struct CantorvalReport {
  double resolution = 0;
  std::size_t component_count = 0;
  std::size_t gap_count = 0;
  double total_gap_measure = 0;
  double interior_fraction = 0;
  std::size_t isolated_component_count = 0;
};

/// Throws InputError for an empty band set or eps <= 0.
CantorvalReport cantorval_report(const BandSet& bands, double eps);

}  // namespace qclab
