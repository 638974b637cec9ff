#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dicontainer/error.hpp"
#include "dicontainer/weight.hpp"

namespace dicontainer {

using Edge = std::pair<int, int>;

/// Labelled loopless digraph on vertices 0..n-1, n <= 64.
///
/// Stored as a dense bit matrix: out_[u] has bit v set iff u->v is an edge,
/// in_[v] mirrors it. Between two vertices there is no edge, one directed
/// edge, or a 2-cycle.
class Digraph {
 public:
  static constexpr int kMaxVertices = 64;

  Digraph() = default;

  explicit Digraph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
      throw PreconditionError("vertex count " + std::to_string(n) + " outside [0, 64]");
  }

  Digraph(int n, std::span<const Edge> edges) : Digraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int order() const noexcept { return n_; }

  bool has_edge(int u, int v) const noexcept { return (out_[u] >> v & 1U) != 0; }

  /// Returns false when the edge was already present.
  bool add_edge(int u, int v) {
    check_pair(u, v);
    if (has_edge(u, v)) return false;
    out_[u] |= bit(v);
    in_[v] |= bit(u);
    return true;
  }

  bool remove_edge(int u, int v) {
    check_pair(u, v);
    if (!has_edge(u, v)) return false;
    out_[u] &= ~bit(v);
    in_[v] &= ~bit(u);
    return true;
  }

  std::uint64_t out_mask(int u) const noexcept { return out_[u]; }
  std::uint64_t in_mask(int v) const noexcept { return in_[v]; }

  std::size_t edge_count() const noexcept {
    std::size_t c = 0;
    for (int u = 0; u < n_; ++u) c += static_cast<std::size_t>(std::popcount(out_[u]));
    return c;
  }

  /// f2: unordered pairs carrying both directions.
  std::int64_t double_pairs() const noexcept {
    std::int64_t c = 0;
    for (int u = 0; u < n_; ++u) c += std::popcount(out_[u] & in_[u]);
    return c / 2;
  }

  /// f1: unordered pairs carrying exactly one direction.
  std::int64_t single_pairs() const noexcept {
    std::int64_t c = 0;
    for (int u = 0; u < n_; ++u) c += std::popcount(out_[u] ^ in_[u]);
    return c / 2;
  }

  /// Vertices incident to at least one edge.
  std::uint64_t spanned_mask() const noexcept {
    std::uint64_t m = 0;
    for (int u = 0; u < n_; ++u)
      if (out_[u] | in_[u]) m |= bit(u);
    return m;
  }

  /// Edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
      for (std::uint64_t m = out_[u]; m; m &= m - 1) out.emplace_back(u, std::countr_zero(m));
    return out;
  }

  /// Image under the relabelling v -> perm[v].
  Digraph relabelled(std::span<const int> perm) const {
    Digraph g(n_);
    for (auto [u, v] : edges()) g.add_edge(perm[u], perm[v]);
    return g;
  }

  /// Subdigraph on [0, n) keeping only edges whose index in edges() is set in `subset`.
  Digraph edge_subgraph(std::uint64_t subset) const {
    Digraph g(n_);
    int i = 0;
    for (auto [u, v] : edges()) {
      if (subset >> i & 1U) g.add_edge(u, v);
      ++i;
    }
    return g;
  }

  bool operator==(const Digraph& o) const noexcept {
    if (n_ != o.n_) return false;
    for (int u = 0; u < n_; ++u)
      if (out_[u] != o.out_[u]) return false;
    return true;
  }

 private:
  static constexpr std::uint64_t bit(int v) noexcept { return std::uint64_t{1} << v; }

  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw PreconditionError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside [0," +
                              std::to_string(n_) + ")");
    if (u == v) throw PreconditionError("loop at vertex " + std::to_string(u));
  }

  int n_ = 0;
  std::array<std::uint64_t, kMaxVertices> out_{};
  std::array<std::uint64_t, kMaxVertices> in_{};
};

inline double weighted_size(const Digraph& g, const Weight& w) {
  return w.evaluate(g.double_pairs(), g.single_pairs());
}

inline std::optional<Rational> weighted_size_exact(const Digraph& g, const Weight& w) {
  return w.evaluate_exact(g.double_pairs(), g.single_pairs());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits off whitespace-separated non-negative integers; false on any junk.
inline bool read_ints(std::string_view s, std::vector<long long>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + j, v);
    if (ec != std::errc{} || p != s.data() + j || v < 0) return false;
    out.push_back(v);
    i = j;
  }
  return true;
}

}  // namespace detail

/// Reads the edge-list text format:
///
///     n=<int>
///     <u> <v>
///     ...
///
/// `#` starts a comment. Both newlines and `;` end a line; line numbers in
/// errors count these segments from 1.
inline Digraph parse_digraph(std::string_view text) {
  using Kind = ParseError::Kind;
  std::optional<Digraph> g;
  int line = 0;
  std::vector<long long> ints;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("\n;", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = detail::trim(raw);
    if (raw.empty()) continue;

    if (!g) {
      const auto eq = raw.find('=');
      if (eq == std::string_view::npos || detail::trim(raw.substr(0, eq)) != "n")
        throw ParseError(Kind::malformed, line, "expected header 'n=<int>'");
      if (!detail::read_ints(detail::trim(raw.substr(eq + 1)), ints) || ints.size() != 1)
        throw ParseError(Kind::malformed, line, "malformed vertex count");
      if (ints[0] > Digraph::kMaxVertices)
        throw ParseError(Kind::malformed, line, "vertex count exceeds 64");
      g.emplace(static_cast<int>(ints[0]));
      continue;
    }
    if (!detail::read_ints(raw, ints) || ints.size() != 2)
      throw ParseError(Kind::malformed, line, "expected '<u> <v>'");
    const long long u = ints[0], v = ints[1];
    if (u >= g->order() || v >= g->order())
      throw ParseError(Kind::vertex_range, line,
                       "vertex index " + std::to_string(std::max(u, v)) + " >= n=" + std::to_string(g->order()));
    if (u == v) throw ParseError(Kind::loop, line, "loop edge at vertex " + std::to_string(u));
    if (!g->add_edge(static_cast<int>(u), static_cast<int>(v)))
      throw ParseError(Kind::duplicate, line,
                       "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  if (!g) throw ParseError(Kind::malformed, line, "missing header 'n=<int>'");
  return *std::move(g);
}

inline std::string format_digraph(const Digraph& g) {
  std::string s = "n=" + std::to_string(g.order()) + "\n";
  for (auto [u, v] : g.edges()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

}  // namespace dicontainer
