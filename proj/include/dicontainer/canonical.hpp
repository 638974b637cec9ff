#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "dicontainer/digraph.hpp"

namespace dicontainer {

struct CanonicalForm {
  std::string key;                  // exact: equal keys iff isomorphic
  std::uint64_t automorphisms = 0;  // |Aut(G)|
  std::vector<int> labelling;       // position -> original vertex of one minimizing order
};

namespace detail {

// Stable colouring of the vertices by iterated refinement over the three
// relations out-only / in-only / double. Colours are ranks of sorted
// signatures, so they are invariant under relabelling.
inline std::vector<int> refine_colours(const Digraph& g) {
  const int n = g.order();
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  int classes = n == 0 ? 0 : 1;
  while (true) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.push_back(colour[static_cast<std::size_t>(v)]);
      std::vector<int> nb;
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        const bool out = g.has_edge(v, u), in = g.has_edge(u, v);
        if (!out && !in) continue;
        const int rel = out && in ? 3 : (out ? 1 : 2);
        nb.push_back(colour[static_cast<std::size_t>(u)] * 4 + rel);
      }
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
    }
    std::map<std::vector<int>, int> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    int r = 0;
    for (auto& [s, id] : rank) id = r++;
    for (int v = 0; v < n; ++v) colour[static_cast<std::size_t>(v)] = rank[sig[static_cast<std::size_t>(v)]];
    if (r == classes) break;
    classes = r;
  }
  return colour;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Digraph& g) : g_(g), n_(g.order()) {
    const auto colour = refine_colours(g);
    std::vector<int> verts(static_cast<std::size_t>(n_));
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return colour[static_cast<std::size_t>(a)] < colour[static_cast<std::size_t>(b)]; });
    // cell_of_position[k]: the colour every vertex placed at position k must have
    for (int v : verts) cell_of_position_.push_back(colour[static_cast<std::size_t>(v)]);
    colour_ = colour;
    bits_.assign(static_cast<std::size_t>(n_ * (n_ - 1 > 0 ? n_ - 1 : 0)), 0);
    order_.assign(static_cast<std::size_t>(n_), -1);
  }

  CanonicalForm run() {
    if (n_ <= 1) {
      std::vector<int> lab(static_cast<std::size_t>(n_));
      std::iota(lab.begin(), lab.end(), 0);
      return {encode({}), 1, lab};
    }
    extend(0, 0);
    return {encode(best_), aut_, best_order_};
  }

 private:
  // Bits contributed by position k: for each earlier position i, (i->k) then (k->i).
  void extend(int k, std::uint64_t used) {
    if (k == n_) {
      if (!have_best_ || bits_ < best_) {
        best_ = bits_;
        best_order_ = order_;
        have_best_ = true;
        aut_ = 1;
      } else if (bits_ == best_) {
        ++aut_;
      }
      return;
    }
    const std::size_t base = static_cast<std::size_t>(k * (k - 1));
    for (int v = 0; v < n_; ++v) {
      if ((used >> v & 1U) || colour_[static_cast<std::size_t>(v)] != cell_of_position_[static_cast<std::size_t>(k)]) continue;
      for (int i = 0; i < k; ++i) {
        const int u = order_[static_cast<std::size_t>(i)];
        bits_[base + static_cast<std::size_t>(2 * i)] = g_.has_edge(u, v) ? 1 : 0;
        bits_[base + static_cast<std::size_t>(2 * i + 1)] = g_.has_edge(v, u) ? 1 : 0;
      }
      const std::size_t len = base + static_cast<std::size_t>(2 * k);
      if (have_best_ && std::lexicographical_compare(best_.begin(), best_.begin() + static_cast<std::ptrdiff_t>(len),
                                                     bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(len)))
        continue;  // prefix already larger than the best leaf
      order_[static_cast<std::size_t>(k)] = v;
      extend(k + 1, used | (std::uint64_t{1} << v));
    }
  }

  std::string encode(const std::vector<std::uint8_t>& bits) const {
    std::string key(1, static_cast<char>(n_));
    std::uint8_t acc = 0;
    int filled = 0;
    for (auto b : bits) {
      acc = static_cast<std::uint8_t>(acc | (b << filled));
      if (++filled == 8) {
        key.push_back(static_cast<char>(acc));
        acc = 0;
        filled = 0;
      }
    }
    if (filled) key.push_back(static_cast<char>(acc));
    return key;
  }

  const Digraph& g_;
  int n_;
  std::vector<int> colour_;
  std::vector<int> cell_of_position_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::uint8_t> best_;
  std::vector<int> order_;
  std::vector<int> best_order_;
  bool have_best_ = false;
  std::uint64_t aut_ = 0;
};

}  // namespace detail

/// Exact canonical form by minimizing the adjacency bit string over all
/// vertex orders compatible with a refined colouring, pruning any partial
/// order whose prefix already exceeds the best complete one. The number of
/// minimizing orders is |Aut(G)|.
inline CanonicalForm canonicalize(const Digraph& g) { return detail::CanonicalSearch(g).run(); }

inline std::string canonical_key(const Digraph& g) { return canonicalize(g).key; }

/// The digraph in canonical labelling described by a key.
inline Digraph from_canonical_key(const std::string& key) {
  if (key.empty()) throw PreconditionError("empty canonical key");
  const int n = static_cast<unsigned char>(key[0]);
  Digraph g(n);
  std::size_t idx = 0;
  auto bit_at = [&](std::size_t i) {
    const std::size_t byte = 1 + i / 8;
    if (byte >= key.size()) throw PreconditionError("truncated canonical key");
    return (static_cast<unsigned char>(key[byte]) >> (i % 8) & 1U) != 0;
  };
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < k; ++i) {
      if (bit_at(idx++)) g.add_edge(i, k);
      if (bit_at(idx++)) g.add_edge(k, i);
    }
  return g;
}

inline std::string key_to_hex(const std::string& key) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  for (unsigned char c : key) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 15]);
  }
  return s;
}

}  // namespace dicontainer
