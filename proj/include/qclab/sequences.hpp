#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qclab/core/highprec.hpp"

namespace qclab {

/// LeftClosed codes with [1 - alpha, 1) on the fractional part {x} in [0, 1).
/// RightClosed codes with (1 - alpha, 1] on the upper fractional part in (0, 1].
enum class Convention { LeftClosed, RightClosed };

struct SturmianParams {
  HighPrec alpha;
  HighPrec theta;
  Convention convention = Convention::LeftClosed;
};

struct BinaryWord {
  std::vector<std::uint8_t> symbols;
  std::int64_t offset = 0;

  std::size_t size() const { return symbols.size(); }
  std::string to_string() const;
};

BinaryWord binary_word_from_string(const std::string& s, std::int64_t offset = 0);

/// x_m for m in [from, to). Throws InputError if from >= to or alpha is not in
/// (0, 1); NumericError naming m when {m alpha + theta} cannot be placed
/// relative to an endpoint at the tracked precision.
BinaryWord sturmian_sample(const SturmianParams& params, std::int64_t from, std::int64_t to);

/// Distinct length-n blocks of the window for n = 1..nmax (index n-1).
std::vector<std::size_t> factor_complexity(const BinaryWord& word, int nmax);

/// Number of distinct patterns x_{m+tau_0} ... x_{m+tau_{n-1}} over every m
/// with m + tau_{n-1} inside the window. tau must start at 0 and increase.
std::size_t template_pattern_count(const BinaryWord& word, const std::vector<int>& tau);

struct PatternCount {
  std::size_t count = 0;
  std::vector<int> witness;  // first template (lexicographic) attaining count
};

/// Maximum of template_pattern_count over all templates
/// 0 = tau_0 < ... < tau_{n-1} <= template_bound. With stop_above set, the
/// search stops at the first template whose count exceeds it.
/// Throws InputError when template_bound < n - 1 or the window has at most
/// template_bound symbols.
PatternCount pattern_complexity_lb(const BinaryWord& word, int n, int template_bound,
                                   std::optional<std::size_t> stop_above = std::nullopt);

enum class PatternVerdict { Consistent, RefutedExcess, RefutedDeficient };

std::string to_string(PatternVerdict v);

struct PatternClassification {
  PatternVerdict verdict = PatternVerdict::Consistent;
  int nmax = 0;
  int template_bound = 0;
  std::size_t window = 0;
  /// Lower bounds for p*(1..nmax) (searched fully; index n-1).
  std::vector<std::size_t> lower_bounds;
  /// For refutations: the first n with lb != 2n, its count and witness.
  int refuted_n = 0;
  std::size_t refuted_count = 0;
  std::vector<int> witness;
};

/// Consistent means p*_lb(n) = 2n for every n <= nmax. RefutedExcess: some
/// template gives more than 2n patterns. RefutedDeficient: the best template
/// found gives fewer than 2n. Either refutation reports the smallest such n.
PatternClassification classify_pattern_sturmian(const BinaryWord& word, int nmax, int template_bound);

inline int default_template_bound(int n) { return 8 * n; }

}  // namespace qclab
