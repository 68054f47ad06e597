#include "qclab/sequences.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string_view>
#include <unordered_set>

#include "qclab/core/error.hpp"
#include "qclab/core/parallel.hpp"

namespace qclab {

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(symbols.size());
  for (auto b : symbols) s.push_back(b ? '1' : '0');
  return s;
}

BinaryWord binary_word_from_string(const std::string& s, std::int64_t offset) {
  BinaryWord w;
  w.offset = offset;
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError(std::string("binary word contains '") + c + "'");
    w.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (w.symbols.empty()) throw InputError("binary word is empty");
  return w;
}

BinaryWord sturmian_sample(const SturmianParams& params, std::int64_t from, std::int64_t to) {
  if (from >= to) throw InputError("sturmian_sample: need from < to");
  if (!(params.alpha > HighPrec(0.0)) || !(params.alpha < HighPrec(1.0)))
    throw InputError("sturmian_sample: alpha must lie in (0, 1)");
  const HighPrec one(1.0);
  const HighPrec cut = one - params.alpha;
  const bool left = params.convention == Convention::LeftClosed;

  BinaryWord w;
  w.offset = from;
  w.symbols.reserve(static_cast<std::size_t>(to - from));
  for (std::int64_t m = from; m < to; ++m) {
    const HighPrec v = HighPrec(m) * params.alpha + params.theta;
    HighPrec f = frac(v);
    if (!left && f.hi() == 0.0 && f.lo() == 0.0) f = HighPrec(1.0).with_extra_error(v.error_bound());
    const double err = f.error_bound();
    if (err > 0) {
      const double near = std::min({abs(f).to_double(), abs(f - cut).to_double(), abs(f - one).to_double()});
      if (near <= err + cut.error_bound()) {
        throw NumericError("sturmian_sample: endpoint-ambiguous membership at m = " + std::to_string(m) +
                           " (fractional part within the error bound of an interval endpoint)");
      }
    }
    const bool inside = left ? (f >= cut && f < one) : (f > cut && f <= one);
    w.symbols.push_back(inside ? 1 : 0);
  }
  return w;
}

std::vector<std::size_t> factor_complexity(const BinaryWord& word, int nmax) {
  if (nmax < 1) throw InputError("factor_complexity: nmax must be >= 1");
  const std::size_t len = word.size();
  if (static_cast<std::size_t>(nmax) > len)
    throw InputError("factor_complexity: nmax " + std::to_string(nmax) + " exceeds window length " + std::to_string(len));
  std::vector<std::size_t> out(static_cast<std::size_t>(nmax));
  const std::string text = word.to_string();
  for (int n = 1; n <= nmax; ++n) {
    const std::size_t positions = len - static_cast<std::size_t>(n) + 1;
    if (n <= 63) {
      std::unordered_set<std::uint64_t> seen;
      std::uint64_t code = 0;
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      for (std::size_t i = 0; i < len; ++i) {
        code = ((code << 1) | word.symbols[i]) & mask;
        if (i + 1 >= static_cast<std::size_t>(n)) seen.insert(code);
      }
      out[static_cast<std::size_t>(n - 1)] = seen.size();
    } else {
      std::unordered_set<std::string_view> seen;
      for (std::size_t i = 0; i < positions; ++i) seen.insert(std::string_view(text).substr(i, static_cast<std::size_t>(n)));
      out[static_cast<std::size_t>(n - 1)] = seen.size();
    }
  }
  return out;
}

std::size_t template_pattern_count(const BinaryWord& word, const std::vector<int>& tau) {
  if (tau.empty() || tau[0] != 0) throw InputError("template must start at 0");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (tau[i] <= tau[i - 1]) throw InputError("template must be strictly increasing");
  if (static_cast<std::size_t>(tau.back()) >= word.size()) throw InputError("template wider than the window");
  const std::size_t positions = word.size() - static_cast<std::size_t>(tau.back());
  std::unordered_set<std::string> seen;
  std::string key(tau.size(), '0');
  for (std::size_t m = 0; m < positions; ++m) {
    for (std::size_t j = 0; j < tau.size(); ++j) key[j] = static_cast<char>('0' + word.symbols[m + static_cast<std::size_t>(tau[j])]);
    seen.insert(key);
  }
  return seen.size();
}

namespace {

constexpr int kMaxPatternLength = 24;

// Depth-first search over templates sharing a fixed tau_1.
class TemplateSearch {
 public:
  TemplateSearch(const BinaryWord& word, int n, int bound, std::optional<std::size_t> stop_above)
      : w_(word.symbols), n_(n), bound_(bound), stop_(stop_above),
        codes_(static_cast<std::size_t>(n), std::vector<std::uint32_t>(word.size())),
        stamp_(std::size_t{1} << n, 0), tau_(static_cast<std::size_t>(n), 0) {
    for (std::size_t m = 0; m < w_.size(); ++m) codes_[0][m] = w_[m];
  }

  PatternCount run(int tau1) {
    best_ = {};
    done_ = false;
    extend(1, tau1);
    return best_;
  }

 private:
  void extend(int depth, int t) {
    tau_[static_cast<std::size_t>(depth)] = t;
    const std::size_t lim = w_.size() - static_cast<std::size_t>(t);
    const auto& prev = codes_[static_cast<std::size_t>(depth - 1)];
    auto& cur = codes_[static_cast<std::size_t>(depth)];
    for (std::size_t m = 0; m < lim; ++m) cur[m] = (prev[m] << 1) | w_[m + static_cast<std::size_t>(t)];
    if (depth == n_ - 1) {
      record(lim);
      return;
    }
    // Leave room for the remaining n-1-depth strictly increasing entries.
    const int last = bound_ - (n_ - 1 - depth - 1);
    for (int u = t + 1; u <= last && !done_; ++u) extend(depth + 1, u);
  }

  void record(std::size_t positions) {
    ++generation_;
    if (generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    const auto& cur = codes_[static_cast<std::size_t>(n_ - 1)];
    std::size_t count = 0;
    for (std::size_t m = 0; m < positions; ++m) {
      auto& s = stamp_[cur[m]];
      if (s != generation_) {
        s = generation_;
        ++count;
      }
    }
    if (count > best_.count) {
      best_.count = count;
      best_.witness = tau_;
      if (stop_ && count > *stop_) done_ = true;
    }
  }

  const std::vector<std::uint8_t>& w_;
  int n_, bound_;
  std::optional<std::size_t> stop_;
  std::vector<std::vector<std::uint32_t>> codes_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<int> tau_;
  PatternCount best_;
  bool done_ = false;
};

}  // namespace

PatternCount pattern_complexity_lb(const BinaryWord& word, int n, int template_bound,
                                   std::optional<std::size_t> stop_above) {
  if (n < 1) throw InputError("pattern_complexity_lb: n must be >= 1");
  if (n > kMaxPatternLength) throw InputError("pattern_complexity_lb: n above supported maximum 24");
  if (template_bound < n - 1) throw InputError("pattern_complexity_lb: templateBound must be >= n - 1");
  if (word.size() <= static_cast<std::size_t>(template_bound))
    throw InputError("pattern_complexity_lb: window of length " + std::to_string(word.size()) +
                     " is too short for templateBound " + std::to_string(template_bound));
  if (n == 1) return {template_pattern_count(word, {0}), {0}};

  const int first_max = template_bound - (n - 2);
  const std::size_t tasks = static_cast<std::size_t>(first_max);
  std::vector<PatternCount> per(tasks);
  std::atomic<std::size_t> stop_at{tasks};
  parallel_for(tasks, [&](std::size_t b, std::size_t e) {
    TemplateSearch search(word, n, template_bound, stop_above);
    for (std::size_t i = b; i < e; ++i) {
      if (i > stop_at.load()) break;
      per[i] = search.run(static_cast<int>(i) + 1);
      if (stop_above && per[i].count > *stop_above) {
        std::size_t cur = stop_at.load();
        while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
        }
      }
    }
  });
  PatternCount best;
  for (std::size_t i = 0; i < tasks; ++i) {
    if (per[i].witness.empty()) continue;
    if (stop_above && per[i].count > *stop_above) return per[i];
    if (per[i].count > best.count) best = per[i];
  }
  return best;
}

std::string to_string(PatternVerdict v) {
  switch (v) {
    case PatternVerdict::Consistent: return "CONSISTENT";
    case PatternVerdict::RefutedExcess: return "REFUTED_EXCESS";
    case PatternVerdict::RefutedDeficient: return "REFUTED_DEFICIENT";
  }
  return "?";
}

PatternClassification classify_pattern_sturmian(const BinaryWord& word, int nmax, int template_bound) {
  if (nmax < 1) throw InputError("classify_pattern_sturmian: nmax must be >= 1");
  PatternClassification out;
  out.nmax = nmax;
  out.template_bound = template_bound;
  out.window = word.size();
  for (int n = 1; n <= nmax; ++n) {
    const std::size_t target = 2 * static_cast<std::size_t>(n);
    PatternCount pc = pattern_complexity_lb(word, n, template_bound, target);
    out.lower_bounds.push_back(pc.count);
    if (pc.count != target) {
      out.verdict = pc.count > target ? PatternVerdict::RefutedExcess : PatternVerdict::RefutedDeficient;
      out.refuted_n = n;
      out.refuted_count = pc.count;
      out.witness = pc.witness;
      return out;
    }
  }
  return out;
}

}  // namespace qclab
