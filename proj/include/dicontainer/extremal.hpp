#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "dicontainer/canonical.hpp"
#include "dicontainer/density.hpp"
#include "dicontainer/pattern.hpp"
#include "dicontainer/weight.hpp"

namespace dicontainer {

enum class SearchMode { full, canonical };

inline constexpr int kFullModeMaxVertices = 5;       // 4^10 labelled digraphs
inline constexpr int kCanonicalModeMaxVertices = 7;

struct SearchOptions {
  int workers = 1;
  std::size_t witness_cap = 1000;
  std::size_t class_budget = 20'000'000;  // isomorphism classes held by the canonical walk
};

/// Weighted size as the exact pair (f2, f1).
struct PairCount {
  std::int64_t doubles = 0;
  std::int64_t singles = 0;
};

struct ExtremalResult {
  int n = 0;
  std::string weight;
  PairCount attained;                    // (f2, f1) of one extremal witness
  std::optional<Rational> value;         // exact value when a is rational
  double value_approx = 0;
  std::vector<std::string> witness_keys;  // sorted canonical keys, at most witness_cap
  std::size_t witness_classes = 0;        // classes attaining the maximum before capping
  bool witness_overflow = false;
  bool ambiguous = false;                 // some comparison was undecided by the weight interval
};

struct SupersatPoint {
  int n = 0;
  int k = 0;
  PairCount attained;
  std::optional<Rational> max_ea;
  double max_ea_approx = 0;
};

namespace detail {

inline int pair_slots(int n) { return n * (n - 1) / 2; }

// Pair slot p enumerates (i, j), i < j, lexicographically; its two code bits
// mean 1: i->j, 2: j->i, 3: both.
inline Digraph decode_state(int n, std::uint64_t code) {
  Digraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const unsigned s = code & 3U;
      code >>= 2;
      if (s & 1U) g.add_edge(i, j);
      if (s & 2U) g.add_edge(j, i);
    }
  return g;
}

struct Best {
  bool set = false;
  PairCount at;
};

struct ScanTotals {
  std::uint64_t free_count = 0;
  std::vector<Best> best_by_copies;           // exact copy count c = 0..k_max
  std::vector<std::uint64_t> witness_codes;   // H-free codes attaining best_by_copies[0]
  bool ambiguous = false;
};

// Folds (f2, f1) into `best`; returns +1 if it replaced, 0 on a tie, -1 if worse.
inline int offer(Best& best, PairCount pc, const Weight& w, bool& ambiguous) {
  if (!best.set) {
    best = {true, pc};
    return 1;
  }
  const auto c = w.compare(pc.doubles, pc.singles, best.at.doubles, best.at.singles);
  if (c == std::partial_ordering::greater) {
    best.at = pc;
    return 1;
  }
  if (c == std::partial_ordering::unordered) ambiguous = true;
  if (c == std::partial_ordering::less) return -1;
  return 0;
}

inline void merge_into(ScanTotals& into, ScanTotals&& part, const Weight& w) {
  into.free_count += part.free_count;
  into.ambiguous = into.ambiguous || part.ambiguous;
  for (std::size_t c = 0; c < part.best_by_copies.size(); ++c) {
    if (!part.best_by_copies[c].set) continue;
    const int r = offer(into.best_by_copies[c], part.best_by_copies[c].at, w, into.ambiguous);
    if (c != 0) continue;
    if (r > 0) into.witness_codes = std::move(part.witness_codes);
    else if (r == 0) into.witness_codes.insert(into.witness_codes.end(), part.witness_codes.begin(), part.witness_codes.end());
  }
}

// Visits all 4^(n(n-1)/2) labelled digraphs on [n], split into contiguous
// code ranges per worker and merged in range order.
inline ScanTotals full_scan(int n, const Pattern& h, const Weight& w, int k_max, bool collect_witnesses,
                            int workers) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n > kFullModeMaxVertices)
    throw BudgetError("full enumeration supports n <= " + std::to_string(kFullModeMaxVertices) + ", got n=" +
                      std::to_string(n));
  const std::uint64_t total = std::uint64_t{1} << (2 * pair_slots(n));
  workers = std::max(1, workers);
  auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) {
    ScanTotals t;
    t.best_by_copies.resize(static_cast<std::size_t>(k_max + 1));
    for (std::uint64_t code = lo; code < hi; ++code) {
      const Digraph g = decode_state(n, code);
      const std::uint64_t copies =
          k_max == 0 ? (h.occurs_in(g) ? 1 : 0) : h.count_copies(g);
      if (copies == 0) ++t.free_count;
      if (copies > static_cast<std::uint64_t>(k_max)) continue;
      const PairCount pc{g.double_pairs(), g.single_pairs()};
      const int r = offer(t.best_by_copies[copies], pc, w, t.ambiguous);
      if (copies == 0 && collect_witnesses) {
        if (r > 0) t.witness_codes.assign(1, code);
        else if (r == 0) t.witness_codes.push_back(code);
      }
    }
    return t;
  };
  std::vector<ScanTotals> parts(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    for (int k = 0; k < workers; ++k) {
      const std::uint64_t lo = total * static_cast<std::uint64_t>(k) / static_cast<std::uint64_t>(workers);
      const std::uint64_t hi = total * static_cast<std::uint64_t>(k + 1) / static_cast<std::uint64_t>(workers);
      pool.emplace_back([&, k, lo, hi] { parts[static_cast<std::size_t>(k)] = scan_range(lo, hi); });
    }
  }
  ScanTotals out;
  out.best_by_copies.resize(static_cast<std::size_t>(k_max + 1));
  for (auto& p : parts) merge_into(out, std::move(p), w);
  return out;
}

// Breadth-first walk over isomorphism classes of H-free digraphs on [n],
// level = number of directed edges. Children add one absent edge and are
// kept when still H-free, so every H-free class is reached (H-freeness is
// closed under edge deletion). Classes within a level are visited in key
// order. `visit(g, aut)` returns false to skip expanding a class.
template <class Visit>
std::size_t canonical_walk(int n, const Pattern& h, const SearchOptions& opt, Visit&& visit) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n > kCanonicalModeMaxVertices)
    throw BudgetError("canonical search supports n <= " + std::to_string(kCanonicalModeMaxVertices) + ", got n=" +
                      std::to_string(n));
  std::unordered_map<std::string, std::uint64_t> level;
  {
    const auto cf = canonicalize(Digraph(n));
    level.emplace(cf.key, cf.automorphisms);
  }
  std::size_t seen = 0;
  while (!level.empty()) {
    seen += level.size();
    if (seen > opt.class_budget)
      throw BudgetError("canonical search exceeded class budget of " + std::to_string(opt.class_budget));
    std::vector<std::pair<std::string, std::uint64_t>> sorted(level.begin(), level.end());
    std::sort(sorted.begin(), sorted.end());
    level.clear();
    for (const auto& [key, aut] : sorted) {
      const Digraph g = from_canonical_key(key);
      if (!visit(static_cast<const Digraph&>(g), aut)) continue;
      Digraph child = g;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          if (u == v || g.has_edge(u, v)) continue;
          child.add_edge(u, v);
          if (!h.occurs_in(child)) {
            auto cf = canonicalize(child);
            level.try_emplace(std::move(cf.key), cf.automorphisms);
          }
          child.remove_edge(u, v);
        }
    }
  }
  return seen;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

inline void finish(ExtremalResult& r, const Weight& w) {
  r.value = w.evaluate_exact(r.attained.doubles, r.attained.singles);
  r.value_approx = w.evaluate(r.attained.doubles, r.attained.singles);
}

}  // namespace detail

/// ex_a(n,H): the maximum weighted size over H-free digraphs on [n], with
/// the canonical keys of every extremal isomorphism class.
inline ExtremalResult ex_a(int n, const Pattern& h, const Weight& w, SearchMode mode,
                           const SearchOptions& opt = {}) {
  ExtremalResult r;
  r.n = n;
  r.weight = w.text();
  std::vector<std::string> keys;
  if (mode == SearchMode::full) {
    auto t = detail::full_scan(n, h, w, 0, true, opt.workers);
    r.attained = t.best_by_copies[0].at;
    r.ambiguous = t.ambiguous;
    for (auto code : t.witness_codes) keys.push_back(canonical_key(detail::decode_state(n, code)));
  } else {
    detail::Best best;
    bool ambiguous = false;
    detail::canonical_walk(n, h, opt, [&](const Digraph& g, std::uint64_t) {
      const int res = detail::offer(best, {g.double_pairs(), g.single_pairs()}, w, ambiguous);
      if (res > 0) keys.assign(1, canonical_key(g));
      else if (res == 0) keys.push_back(canonical_key(g));
      return true;
    });
    r.attained = best.at;
    r.ambiguous = ambiguous;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  r.witness_classes = keys.size();
  if (keys.size() > opt.witness_cap) {
    keys.resize(opt.witness_cap);
    r.witness_overflow = true;
  }
  r.witness_keys = std::move(keys);
  detail::finish(r, w);
  return r;
}

/// f*(n,H): labelled H-free digraphs on [n]. Full mode counts them directly;
/// canonical mode sums n!/|Aut(G)| over H-free isomorphism classes.
inline BigInt count_free(int n, const Pattern& h, SearchMode mode = SearchMode::full,
                         const SearchOptions& opt = {}) {
  if (mode == SearchMode::full) {
    const Weight two(Rational(2));
    return BigInt(detail::full_scan(n, h, two, 0, false, opt.workers).free_count);
  }
  BigInt total = 0;
  const std::uint64_t nf = detail::factorial(n);
  detail::canonical_walk(n, h, opt, [&](const Digraph&, std::uint64_t aut) {
    total += nf / aut;
    return true;
  });
  return total;
}

struct CountingRatio {
  int n = 0;
  BigInt free_count;
  double log2_count = 0;
  std::int64_t ex2 = 0;
  double ratio = 0;  // log2 f* / ex2; 0 when ex2 == 0
};

inline double log2_big(const BigInt& v) {
  if (v <= 0) return -INFINITY;
  const auto bits = static_cast<long>(boost::multiprecision::msb(v));
  if (bits < 53) return std::log2(v.convert_to<double>());
  const BigInt top = v >> static_cast<unsigned>(bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

/// log2 f*(n,H) against ex_2(n,H). Every subdigraph of an extremal witness is
/// H-free, so f* >= 2^ex2 must hold; a violation is reported as an error.
inline CountingRatio counting_ratio(int n, const Pattern& h, SearchMode mode = SearchMode::full,
                                    const SearchOptions& opt = {}) {
  CountingRatio r;
  r.n = n;
  r.free_count = count_free(n, h, mode, opt);
  const auto ex = ex_a(n, h, Weight(Rational(2)), mode, opt);
  r.ex2 = ex.value->numerator();
  r.log2_count = log2_big(r.free_count);
  r.ratio = r.ex2 == 0 ? 0.0 : r.log2_count / static_cast<double>(r.ex2);
  if (r.free_count < (BigInt(1) << static_cast<unsigned>(r.ex2)))
    throw VerificationError("f*(" + std::to_string(n) + ",H) = " + r.free_count.str() + " < 2^" +
                            std::to_string(r.ex2));
  return r;
}

/// For k = 0..k_max, the maximum weighted size over digraphs on [n] with at
/// most k copies of H.
inline std::vector<SupersatPoint> supersat_scan(int n, const Pattern& h, const Weight& w, int k_max,
                                                const SearchOptions& opt = {}) {
  if (k_max < 0) throw PreconditionError("k_max must be >= 0");
  const auto t = detail::full_scan(n, h, w, k_max, false, opt.workers);
  std::vector<SupersatPoint> pts;
  detail::Best running;
  bool ambiguous = false;
  for (int k = 0; k <= k_max; ++k) {
    if (t.best_by_copies[static_cast<std::size_t>(k)].set)
      detail::offer(running, t.best_by_copies[static_cast<std::size_t>(k)].at, w, ambiguous);
    SupersatPoint p;
    p.n = n;
    p.k = k;
    p.attained = running.at;
    p.max_ea = w.evaluate_exact(running.at.doubles, running.at.singles);
    p.max_ea_approx = w.evaluate(running.at.doubles, running.at.singles);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace dicontainer
