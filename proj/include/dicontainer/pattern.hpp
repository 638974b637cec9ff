#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "dicontainer/digraph.hpp"

namespace dicontainer {

/// Backtracking plan for counting injective edge-preserving maps of a small
/// digraph into a host. Pattern vertices are placed so that each one after
/// the first is adjacent to an earlier one whenever the pattern allows it;
/// candidate sets are then intersections of host adjacency masks.
class EmbeddingPlan {
 public:
  explicit EmbeddingPlan(const Digraph& pattern) : size_(pattern.order()) {
    const int h = pattern.order();
    std::vector<bool> placed(static_cast<std::size_t>(h), false);
    auto degree = [&](int v) {
      return std::popcount(pattern.out_mask(v) | pattern.in_mask(v));
    };
    for (int step = 0; step < h; ++step) {
      // prefer the vertex with most links to placed vertices, then largest degree
      int best = -1, best_links = -1, best_deg = -1;
      for (int v = 0; v < h; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        int links = 0;
        for (int p : order_) links += std::popcount((pattern.out_mask(v) | pattern.in_mask(v)) >> p & 1U);
        if (links > best_links || (links == best_links && degree(v) > best_deg)) {
          best = v;
          best_links = links;
          best_deg = degree(v);
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      Step s;
      for (int k = 0; k < step; ++k) {
        const int p = order_[static_cast<std::size_t>(k)];
        if (pattern.has_edge(p, best)) s.from_out.push_back(k);  // host needs phi(p) -> x
        if (pattern.has_edge(best, p)) s.from_in.push_back(k);   // host needs x -> phi(p)
      }
      order_.push_back(best);
      steps_.push_back(std::move(s));
    }
  }

  int size() const noexcept { return size_; }

  /// Number of injective edge-preserving maps, stopping once `limit` is reached.
  std::uint64_t count(const Digraph& host,
                      std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) const {
    if (size_ > host.order()) return 0;
    if (size_ == 0) return 1;
    const std::uint64_t all = host.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << host.order()) - 1;
    std::array<int, Digraph::kMaxVertices> image{};
    std::uint64_t found = 0;
    search(host, all, 0, 0, image, found, limit);
    return found;
  }

 private:
  struct Step {
    std::vector<int> from_out;
    std::vector<int> from_in;
  };

  void search(const Digraph& host, std::uint64_t all, int depth, std::uint64_t used,
              std::array<int, Digraph::kMaxVertices>& image, std::uint64_t& found,
              std::uint64_t limit) const {
    const Step& s = steps_[static_cast<std::size_t>(depth)];
    std::uint64_t cand = all & ~used;
    for (int k : s.from_out) cand &= host.out_mask(image[static_cast<std::size_t>(k)]);
    for (int k : s.from_in) cand &= host.in_mask(image[static_cast<std::size_t>(k)]);
    if (depth + 1 == size_) {
      found += static_cast<std::uint64_t>(std::popcount(cand));
      if (found > limit) found = limit;
      return;
    }
    for (; cand && found < limit; cand &= cand - 1) {
      const int x = std::countr_zero(cand);
      image[static_cast<std::size_t>(depth)] = x;
      search(host, all, depth + 1, used | (std::uint64_t{1} << x), image, found, limit);
    }
  }

  int size_;
  std::vector<int> order_;
  std::vector<Step> steps_;
};

/// The forbidden digraph H with its cached derived data.
///
/// Copies of H in a host are counted as distinct edge sets. Isolated vertices
/// of H only require the host to be large enough, so counting runs on the
/// core of H (isolated vertices removed): distinct copies equal injections of
/// the core divided by |Aut(core)|.
class Pattern {
 public:
  explicit Pattern(Digraph g) : graph_(std::move(g)), core_(make_core(graph_)), core_plan_(core_), full_plan_(graph_) {
    if (graph_.edge_count() < 2)
      throw PreconditionError("pattern needs at least 2 edges, got " + std::to_string(graph_.edge_count()));
    core_aut_ = core_plan_.count(core_);
    aut_ = full_plan_.count(graph_);
  }

  const Digraph& graph() const noexcept { return graph_; }
  const Digraph& core() const noexcept { return core_; }
  int edges() const noexcept { return static_cast<int>(graph_.edge_count()); }
  int vertices() const noexcept { return graph_.order(); }
  std::uint64_t automorphisms() const noexcept { return aut_; }
  std::uint64_t core_automorphisms() const noexcept { return core_aut_; }
  bool has_two_cycle() const noexcept { return graph_.double_pairs() > 0; }

  /// Distinct edge subsets of `host` forming a copy of H.
  std::uint64_t count_copies(const Digraph& host) const {
    if (host.order() < vertices()) return 0;
    return core_plan_.count(host) / core_aut_;
  }

  bool occurs_in(const Digraph& host) const {
    return host.order() >= vertices() && core_plan_.count(host, 1) > 0;
  }

  /// Injections V(H) -> V(host) carrying every edge of H onto an edge of host.
  std::uint64_t count_labelled(const Digraph& host) const { return full_plan_.count(host); }

 private:
  static Digraph make_core(const Digraph& g) {
    std::vector<int> relabel(static_cast<std::size_t>(g.order()), -1);
    const std::uint64_t span = g.spanned_mask();
    int next = 0;
    for (int v = 0; v < g.order(); ++v)
      if (span >> v & 1U) relabel[static_cast<std::size_t>(v)] = next++;
    Digraph core(next);
    for (auto [u, v] : g.edges()) core.add_edge(relabel[static_cast<std::size_t>(u)], relabel[static_cast<std::size_t>(v)]);
    return core;
  }

  Digraph graph_;
  Digraph core_;
  EmbeddingPlan core_plan_;
  EmbeddingPlan full_plan_;
  std::uint64_t aut_ = 1;
  std::uint64_t core_aut_ = 1;
};

inline std::uint64_t count_copies(const Digraph& g, const Pattern& h) { return h.count_copies(g); }

/// One edge subset H' of H with at least two edges.
struct Subpattern {
  std::uint64_t edge_subset;  // bit i selects H.graph().edges()[i]
  int vertices;               // endpoints spanned by the selected edges
  int edges;
};

inline constexpr int kMaxSubpatternEdges = 24;

/// Every edge subset of H with >= 2 edges, in increasing subset-mask order.
inline std::vector<Subpattern> enumerate_subpatterns(const Pattern& h) {
  const auto edges = h.graph().edges();
  const int r = static_cast<int>(edges.size());
  if (r > kMaxSubpatternEdges)
    throw BudgetError("subgraph scan over 2^" + std::to_string(r) + " edge subsets exceeds budget 2^24");
  std::vector<Subpattern> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    const int e = std::popcount(mask);
    if (e < 2) continue;
    std::uint64_t span = 0;
    for (int i = 0; i < r; ++i)
      if (mask >> i & 1U) span |= (std::uint64_t{1} << edges[static_cast<std::size_t>(i)].first) |
                                  (std::uint64_t{1} << edges[static_cast<std::size_t>(i)].second);
    out.push_back({mask, std::popcount(span), e});
  }
  return out;
}

}  // namespace dicontainer
