#pragma once

#include <random>
#include <string>
#include <vector>

#include "dicontainer/cli.hpp"
#include "oracle.hpp"

namespace support {

using namespace dicontainer;

inline Digraph make(int n, std::initializer_list<Edge> edges) {
  Digraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Pattern c3() { return Pattern(make(3, {{0, 1}, {1, 2}, {2, 0}})); }
inline Pattern t3() { return Pattern(make(3, {{0, 1}, {0, 2}, {1, 2}})); }
inline Pattern dk3() { return Pattern(make(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}})); }

inline oracle::Matrix to_matrix(const Digraph& g) {
  oracle::Matrix m(static_cast<std::size_t>(g.order()), std::vector<bool>(static_cast<std::size_t>(g.order()), false));
  for (auto [u, v] : g.edges()) m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
  return m;
}

inline Digraph from_matrix(const oracle::Matrix& m) {
  Digraph g(static_cast<int>(m.size()));
  for (std::size_t u = 0; u < m.size(); ++u)
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[u][v]) g.add_edge(static_cast<int>(u), static_cast<int>(v));
  return g;
}

inline oracle::EdgeList edge_list(const Digraph& g) {
  oracle::EdgeList out;
  for (auto [u, v] : g.edges()) out.emplace_back(u, v);
  return out;
}

inline Digraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) g.add_edge(u, v);
  return g;
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline std::string pattern_path(const std::string& name) { return std::string(DICONTAINER_PATTERN_DIR) + "/" + name; }

inline std::string temp_path(const std::string& name) { return std::string(DICONTAINER_TEMP_DIR) + "/" + name; }

inline cli::Json parse_doc(const cli::Outcome& o) { return cli::Json::parse(o.document); }

}  // namespace support
