// Naive reference computations used only by the test suites.
//
// Nothing in here includes the library: every routine works on a plain
// adjacency matrix and brute-forces its answer, so a disagreement with the
// library points at the library (or at this file), never at shared code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;
using EdgeList = std::vector<std::pair<int, int>>;

inline Matrix make_matrix(int n, const EdgeList& edges) {
  Matrix m(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) m[u][v] = true;
  return m;
}

inline Matrix complete(int n) {
  Matrix m(n, std::vector<bool>(n, true));
  for (int i = 0; i < n; ++i) m[i][i] = false;
  return m;
}

inline int edge_count(const Matrix& m) {
  int c = 0;
  for (const auto& row : m)
    for (bool b : row) c += b ? 1 : 0;
  return c;
}

// Visits every labelled digraph on n vertices, treating the n(n-1) ordered
// pairs (row-major, diagonal skipped) as bits of a counter.
template <class Fn>
void for_each_digraph(int n, Fn&& fn) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  Matrix m(n, std::vector<bool>(n, false));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t s = 0; s < slots.size(); ++s)
      m[slots[s].first][slots[s].second] = (mask >> s & 1U) != 0;
    fn(static_cast<const Matrix&>(m));
  }
}

// Distinct edge subsets of `host` that form a copy of `pattern`, found by
// trying every injection via next_permutation and collecting image edge sets.
inline std::size_t distinct_copies(const Matrix& host, const Matrix& pattern) {
  const int n = static_cast<int>(host.size());
  const int h = static_cast<int>(pattern.size());
  if (h > n) return 0;
  std::set<std::set<std::pair<int, int>>> images;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  // iterate over all permutations of [n], use the first h entries as the map;
  // duplicates are harmless because images is a set
  do {
    bool ok = true;
    std::set<std::pair<int, int>> img;
    for (int u = 0; u < h && ok; ++u)
      for (int v = 0; v < h && ok; ++v)
        if (pattern[u][v]) {
          if (!host[pick[u]][pick[v]]) ok = false;
          img.emplace(pick[u], pick[v]);
        }
    if (ok) images.insert(img);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return images.size();
}

inline std::size_t injections(const Matrix& host, const Matrix& pattern) {
  const int n = static_cast<int>(host.size());
  const int h = static_cast<int>(pattern.size());
  if (h > n) return 0;
  std::size_t count = 0;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::size_t tail = 1;
  for (int k = 1; k <= n - h; ++k) tail *= static_cast<std::size_t>(k);
  do {
    bool ok = true;
    for (int u = 0; u < h && ok; ++u)
      for (int v = 0; v < h && ok; ++v)
        if (pattern[u][v] && !host[pick[u]][pick[v]]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return count / tail;  // each injection appears (n-h)! times
}

inline bool isomorphic(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n || edge_count(a) != edge_count(b)) return false;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n && ok; ++v)
        if (a[u][v] != b[p[u]][p[v]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Smallest row-major bit vector over all relabellings.
inline std::vector<bool> brute_canonical(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> best;
  do {
    std::vector<bool> cur;
    cur.reserve(static_cast<std::size_t>(n * n));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) cur.push_back(a[p[u]][p[v]]);
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline int doubles(const Matrix& m) {
  int c = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) c += (m[i][j] && m[j][i]) ? 1 : 0;
  return c;
}

inline int singles(const Matrix& m) {
  int c = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) c += (m[i][j] != m[j][i]) ? 1 : 0;
  return c;
}

// ex_2(n,H) and f*(n,H) by exhaustive labelled enumeration.
struct FreeStats {
  int ex2 = 0;
  std::uint64_t free_count = 0;
  std::map<std::size_t, int> max_edges_by_copies;  // exact copy count -> max edges
};

inline FreeStats free_stats(int n, const Matrix& pattern) {
  FreeStats s;
  for_each_digraph(n, [&](const Matrix& g) {
    const std::size_t c = distinct_copies(g, pattern);
    const int e = edge_count(g);
    auto [it, inserted] = s.max_edges_by_copies.emplace(c, e);
    if (!inserted) it->second = std::max(it->second, e);
    if (c == 0) {
      ++s.free_count;
      s.ex2 = std::max(s.ex2, e);
    }
  });
  return s;
}

// max over edge subsets with >= 2 edges and >= 3 spanned vertices of
// (e-1)/(v-2), returned as a reduced (num, den); {-1,0} when no subset qualifies.
inline std::pair<long long, long long> naive_m(const EdgeList& edges) {
  const std::size_t r = edges.size();
  long long bn = -1, bd = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    std::set<int> verts;
    long long e = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1U) {
        ++e;
        verts.insert(edges[i].first);
        verts.insert(edges[i].second);
      }
    const long long v = static_cast<long long>(verts.size());
    if (e < 2 || v < 3) continue;
    const long long num = e - 1, den = v - 2;
    if (bd == 0 || num * bd > bn * den) {
      bn = num;
      bd = den;
    }
  }
  if (bd == 0) return {-1, 0};
  const long long g = std::gcd(bn, bd);
  return {bn / g, bd / g};
}

// Codegree quantities of an explicit hypergraph by scanning every j-subset
// of the vertex set and every edge; returns sum_v d^(j)(v) for j = 2..r.
inline std::vector<std::uint64_t> naive_codegree_sums(
    std::size_t universe, const std::vector<std::vector<std::size_t>>& edges, int r) {
  std::vector<std::uint64_t> sums;
  std::vector<std::vector<std::uint64_t>> best(static_cast<std::size_t>(r + 1),
                                               std::vector<std::uint64_t>(universe, 0));
  std::vector<std::set<std::size_t>> edge_sets;
  for (const auto& e : edges) edge_sets.emplace_back(e.begin(), e.end());
  for (int j = 2; j <= r; ++j) {
    // lexicographic j-combinations of [universe]
    std::vector<std::size_t> comb(static_cast<std::size_t>(j));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      std::uint64_t d = 0;
      for (const auto& es : edge_sets) {
        bool all = true;
        for (auto x : comb)
          if (!es.count(x)) { all = false; break; }
        if (all) ++d;
      }
      for (auto x : comb) best[static_cast<std::size_t>(j)][x] = std::max(best[static_cast<std::size_t>(j)][x], d);
      int k = j - 1;
      while (k >= 0 && comb[static_cast<std::size_t>(k)] == universe - static_cast<std::size_t>(j) + static_cast<std::size_t>(k)) --k;
      if (k < 0) break;
      ++comb[static_cast<std::size_t>(k)];
      for (int t = k + 1; t < j; ++t) comb[static_cast<std::size_t>(t)] = comb[static_cast<std::size_t>(t - 1)] + 1;
    }
    std::uint64_t total = 0;
    for (auto b : best[static_cast<std::size_t>(j)]) total += b;
    sums.push_back(total);
  }
  return sums;
}

}  // namespace oracle
