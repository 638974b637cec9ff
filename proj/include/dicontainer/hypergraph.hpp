#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dicontainer/density.hpp"
#include "dicontainer/pattern.hpp"

namespace dicontainer {

using UniverseSet = boost::dynamic_bitset<std::uint64_t>;

/// Ordered pairs (i, j), i != j, of [N], indexed by i*(N-1) + (j < i ? j : j-1).
class PairUniverse {
 public:
  explicit PairUniverse(int n) : n_(n) {
    if (n < 2 || n > Digraph::kMaxVertices) throw PreconditionError("pair universe needs 2 <= N <= 64");
  }

  int ground() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ - 1); }

  std::uint32_t index(int i, int j) const noexcept {
    return static_cast<std::uint32_t>(i * (n_ - 1) + (j < i ? j : j - 1));
  }

  Edge pair(std::uint32_t idx) const noexcept {
    const int i = static_cast<int>(idx) / (n_ - 1);
    const int rest = static_cast<int>(idx) % (n_ - 1);
    return {i, rest < i ? rest : rest + 1};
  }

  UniverseSet encode(const Digraph& g) const {
    if (g.order() != n_) throw PreconditionError("digraph order does not match universe ground set");
    UniverseSet s(size());
    for (auto [u, v] : g.edges()) s.set(index(u, v));
    return s;
  }

  Digraph decode(const UniverseSet& s) const {
    Digraph g(n_);
    for (auto i = s.find_first(); i != UniverseSet::npos; i = s.find_next(i))
      g.add_edge(pair(static_cast<std::uint32_t>(i)).first, pair(static_cast<std::uint32_t>(i)).second);
    return g;
  }

  Digraph decode(std::span<const std::uint32_t> elems) const {
    Digraph g(n_);
    for (auto e : elems) g.add_edge(pair(e).first, pair(e).second);
    return g;
  }

 private:
  int n_;
};

inline constexpr std::uint64_t kInjectionBudget = 50'000'000;
inline constexpr int kMaxUniformity = 16;

/// r-uniform hypergraph on the pair universe of [N]; each hyperedge is the
/// set of pairs of one copy of H. Hyperedges are sorted index arrays kept in
/// lexicographic order, with a per-element incidence list.
class PairHypergraph {
 public:
  /// D(N,H) from every injection V(H) -> [N].
  static PairHypergraph build(int n, const Pattern& h, std::uint64_t injection_budget = kInjectionBudget) {
    if (n < h.vertices())
      throw PreconditionError("N=" + std::to_string(n) + " smaller than v(H)=" + std::to_string(h.vertices()));
    if (h.edges() > kMaxUniformity) throw BudgetError("uniformity above 16 is not supported");
    std::uint64_t falling = 1;
    for (int k = 0; k < h.vertices(); ++k) {
      falling *= static_cast<std::uint64_t>(n - k);
      if (falling > injection_budget)
        throw BudgetError("(N)_h exceeds injection budget of " + std::to_string(injection_budget));
    }
    PairHypergraph d(n, h.edges());
    d.pattern_ = h;
    const auto pedges = h.graph().edges();
    std::vector<int> image(static_cast<std::size_t>(h.vertices()), -1);
    std::vector<std::uint32_t> raw;
    raw.reserve(falling * static_cast<std::uint64_t>(h.edges()));
    std::uint64_t used = 0;
    std::vector<std::uint32_t> e(static_cast<std::size_t>(h.edges()));
    auto rec = [&](auto&& self, int k) -> void {
      if (k == h.vertices()) {
        for (std::size_t t = 0; t < pedges.size(); ++t)
          e[t] = d.universe_.index(image[static_cast<std::size_t>(pedges[t].first)],
                                   image[static_cast<std::size_t>(pedges[t].second)]);
        std::sort(e.begin(), e.end());
        raw.insert(raw.end(), e.begin(), e.end());
        ++d.labelled_;
        return;
      }
      for (int x = 0; x < n; ++x) {
        if (used >> x & 1U) continue;
        used |= std::uint64_t{1} << x;
        image[static_cast<std::size_t>(k)] = x;
        self(self, k + 1);
        used &= ~(std::uint64_t{1} << x);
      }
    };
    rec(rec, 0);
    d.assign_edges(std::move(raw));
    d.self_check();
    return d;
  }

  /// An arbitrary r-uniform hypergraph on the pair universe of [N].
  static PairHypergraph from_edges(int n, int r, const std::vector<std::vector<std::uint32_t>>& edges) {
    if (r < 1 || r > kMaxUniformity) throw PreconditionError("uniformity must be in [1, 16]");
    PairHypergraph d(n, r);
    std::vector<std::uint32_t> raw;
    for (auto e : edges) {
      std::sort(e.begin(), e.end());
      if (static_cast<int>(e.size()) != r || std::adjacent_find(e.begin(), e.end()) != e.end())
        throw PreconditionError("hyperedge must have exactly r distinct elements");
      for (auto x : e)
        if (x >= d.universe_.size()) throw PreconditionError("hyperedge element outside universe");
      raw.insert(raw.end(), e.begin(), e.end());
    }
    d.labelled_ = edges.size();
    d.assign_edges(std::move(raw));
    return d;
  }

  const PairUniverse& universe() const noexcept { return universe_; }
  int uniformity() const noexcept { return r_; }
  std::size_t edge_count() const noexcept { return edges_.size() / static_cast<std::size_t>(r_); }
  std::uint64_t labelled_copy_count() const noexcept { return labelled_; }
  const std::optional<Pattern>& pattern() const noexcept { return pattern_; }

  std::span<const std::uint32_t> edge(std::size_t i) const {
    return {edges_.data() + i * static_cast<std::size_t>(r_), static_cast<std::size_t>(r_)};
  }

  const std::vector<std::uint32_t>& incident(std::uint32_t v) const { return incidence_[v]; }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& inc : incidence_) m = std::max(m, inc.size());
    return m;
  }

  bool contains_edge(std::size_t i, const UniverseSet& s) const {
    for (auto x : edge(i))
      if (!s.test(x)) return false;
    return true;
  }

  /// Hyperedges lying entirely inside `s`.
  std::size_t spanned_edges(const UniverseSet& s) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < edge_count(); ++i) c += contains_edge(i, s) ? 1 : 0;
    return c;
  }

  bool is_independent(const UniverseSet& s) const {
    for (std::size_t i = 0; i < edge_count(); ++i)
      if (contains_edge(i, s)) return false;
    return true;
  }

  /// Header "N=<int> r=<int> edges=<int>" and one line of pair indices per hyperedge.
  std::string export_text() const {
    std::ostringstream os;
    os << "N=" << universe_.ground() << " r=" << r_ << " edges=" << edge_count() << "\n";
    for (std::size_t i = 0; i < edge_count(); ++i) {
      const auto e = edge(i);
      for (std::size_t k = 0; k < e.size(); ++k) os << (k ? " " : "") << e[k];
      os << "\n";
    }
    return os.str();
  }

 private:
  PairHypergraph(int n, int r) : universe_(n), r_(r), incidence_(universe_.size()) {}

  void assign_edges(std::vector<std::uint32_t> raw) {
    const auto r = static_cast<std::size_t>(r_);
    const std::size_t m = raw.size() / r;
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(raw.begin() + static_cast<std::ptrdiff_t>(a * r),
                                          raw.begin() + static_cast<std::ptrdiff_t>((a + 1) * r),
                                          raw.begin() + static_cast<std::ptrdiff_t>(b * r),
                                          raw.begin() + static_cast<std::ptrdiff_t>((b + 1) * r));
    };
    std::sort(order.begin(), order.end(), less);
    edges_.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (k > 0 && !less(order[k - 1], order[k])) continue;  // duplicate edge set
      edges_.insert(edges_.end(), raw.begin() + static_cast<std::ptrdiff_t>(order[k] * r),
                    raw.begin() + static_cast<std::ptrdiff_t>((order[k] + 1) * r));
    }
    for (std::size_t i = 0; i < edge_count(); ++i)
      for (auto x : edge(i)) incidence_[x].push_back(static_cast<std::uint32_t>(i));
  }

  // Each hyperedge, read back as a digraph on [N], has r edges and exactly
  // one copy of H.
  void self_check() const {
    for (std::size_t i = 0; i < edge_count(); ++i) {
      const Digraph g = universe_.decode(edge(i));
      if (static_cast<int>(g.edge_count()) != r_ || pattern_->count_copies(g) != 1)
        throw VerificationError("hyperedge " + std::to_string(i) + " does not decode to a single copy of H");
    }
  }

  PairUniverse universe_;
  int r_;
  std::vector<std::uint32_t> edges_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::uint64_t labelled_ = 0;
  std::optional<Pattern> pattern_;
};

/// True iff the edge set of g contains no hyperedge of d.
inline bool independent_set_check(const PairHypergraph& d, const Digraph& g) {
  return d.is_independent(d.universe().encode(g));
}

enum class DegreeNormalization {
  average,  // d = r*e(D)/n_U
  maximum,  // Delta_1
};

struct CodegreeProfile {
  double tau = 0;
  std::size_t universe_size = 0;
  std::size_t edges = 0;
  DegreeNormalization normalization = DegreeNormalization::average;
  double degree = 0;                          // d_avg or Delta_1, per normalization
  double d_avg = 0;
  std::size_t max_degree = 0;
  std::vector<std::uint64_t> codegree_sums;   // sum_v d^(j)(v), j = 2..r
  std::vector<double> delta_j;                // j = 2..r
  double delta = 0;
};

/// sum over v of max{d(sigma) : v in sigma, |sigma| = j}, for j = 2..r.
///
/// Only j-sets inside some hyperedge through v can have d(sigma) > 0, so for
/// each v the (j-1)-subsets of the other elements of each incident hyperedge
/// are collected and the longest run of equal subsets is d^(j)(v).
inline std::vector<std::uint64_t> codegree_sums(const PairHypergraph& d) {
  const int r = d.uniformity();
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(std::max(0, r - 1)), 0);
  using Key = std::array<std::uint32_t, kMaxUniformity>;
  std::vector<Key> keys;
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v = 0; v < d.universe().size(); ++v) {
    const auto& inc = d.incident(v);
    if (inc.empty()) continue;
    for (int j = 2; j <= r; ++j) {
      const int pick = j - 1;
      keys.clear();
      for (auto ei : inc) {
        rest.clear();
        for (auto x : d.edge(ei))
          if (x != v) rest.push_back(x);
        // combinations of `pick` positions out of r-1, lexicographic
        std::array<int, kMaxUniformity> c{};
        for (int t = 0; t < pick; ++t) c[static_cast<std::size_t>(t)] = t;
        const int m = static_cast<int>(rest.size());
        while (true) {
          Key k{};
          for (int t = 0; t < pick; ++t) k[static_cast<std::size_t>(t)] = rest[static_cast<std::size_t>(c[static_cast<std::size_t>(t)])];
          keys.push_back(k);
          int t = pick - 1;
          while (t >= 0 && c[static_cast<std::size_t>(t)] == m - pick + t) --t;
          if (t < 0) break;
          ++c[static_cast<std::size_t>(t)];
          for (int u = t + 1; u < pick; ++u) c[static_cast<std::size_t>(u)] = c[static_cast<std::size_t>(u - 1)] + 1;
        }
      }
      std::sort(keys.begin(), keys.end());
      std::uint64_t best = 0, run = 0;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        run = (i > 0 && keys[i] == keys[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
      }
      sums[static_cast<std::size_t>(j - 2)] += best;
    }
  }
  return sums;
}

/// delta_j from delta_j * tau^(j-1) * n_U * d = sum_v d^(j)(v), and
/// delta(D,tau) = 2^(C(r,2)-1) * sum_{j=2..r} 2^-(j-1) * delta_j.
inline CodegreeProfile codegree_profile(const PairHypergraph& d, double tau,
                                        DegreeNormalization norm = DegreeNormalization::average) {
  if (!(tau > 0.0 && tau <= 1.0)) throw PreconditionError("tau must lie in (0, 1]");
  if (d.edge_count() == 0) throw PreconditionError("codegree profile of an empty hypergraph");
  CodegreeProfile p;
  p.tau = tau;
  p.universe_size = d.universe().size();
  p.edges = d.edge_count();
  p.normalization = norm;
  const int r = d.uniformity();
  p.d_avg = static_cast<double>(r) * static_cast<double>(p.edges) / static_cast<double>(p.universe_size);
  p.max_degree = d.max_degree();
  p.degree = norm == DegreeNormalization::average ? p.d_avg : static_cast<double>(p.max_degree);
  p.codegree_sums = codegree_sums(d);
  double weighted = 0;
  for (int j = 2; j <= r; ++j) {
    const double dj = static_cast<double>(p.codegree_sums[static_cast<std::size_t>(j - 2)]) /
                      (std::pow(tau, j - 1) * static_cast<double>(p.universe_size) * p.degree);
    p.delta_j.push_back(dj);
    weighted += std::ldexp(dj, -(j - 1));
  }
  p.delta = std::ldexp(weighted, r * (r - 1) / 2 - 1);
  return p;
}

struct LemmaRow {
  int n = 0;
  double tau = 0;
  CodegreeProfile profile;
  double bound = 0;  // C(H) * gamma
  bool pass = false;
};

struct LemmaReport {
  Rational gamma{1};
  MDensity m;
  BigInt c_of_h;
  std::string bound_exact;  // C(H) * gamma as p/q
  std::vector<LemmaRow> rows;
  bool all_pass = true;
};

/// m(H) as used for tau: refuses +infinity, and refuses a value that needed
/// to drop two-vertex subsets unless the caller accepts that policy.
inline double finite_m(const Pattern& h, bool accept_excluded_two_cycles, MDensity* out = nullptr) {
  const auto m = m_density(h);
  if (out) *out = m;
  if (m.infinite()) throw PreconditionError("m(H) is infinite; tau = N^(-1/m) is undefined");
  if (m.excluded_two_vertex && !accept_excluded_two_cycles)
    throw PreconditionError("m(H) flagged: H contains a 2-cycle, whose two-vertex subgraph has v(H')-2 = 0");
  return boost::rational_cast<double>(*m.value);
}

/// Checks delta(D(N,H), gamma^-1 N^(-1/m(H))) <= C(H) * gamma for every N.
inline LemmaReport verify_degree_lemma(const Pattern& h, const std::vector<int>& ns, Rational gamma,
                                       DegreeNormalization norm = DegreeNormalization::average,
                                       bool accept_excluded_two_cycles = false) {
  if (gamma <= 0 || gamma > 1) throw PreconditionError("gamma must lie in (0, 1], got " + to_string(gamma));
  LemmaReport rep;
  rep.gamma = gamma;
  const double m = finite_m(h, accept_excluded_two_cycles, &rep.m);
  rep.c_of_h = constant_c(h);
  const BigInt num = rep.c_of_h * gamma.numerator();
  const BigInt g = boost::multiprecision::gcd(num, BigInt(gamma.denominator()));
  rep.bound_exact = BigInt(num / g).str() + "/" + BigInt(gamma.denominator() / g).str();
  const double bound = rep.c_of_h.convert_to<double>() * boost::rational_cast<double>(gamma);
  for (int n : ns) {
    LemmaRow row;
    row.n = n;
    row.tau = std::pow(static_cast<double>(n), -1.0 / m) / boost::rational_cast<double>(gamma);
    const auto d = PairHypergraph::build(n, h);
    row.profile = codegree_profile(d, row.tau, norm);
    row.bound = bound;
    row.pass = row.profile.delta <= bound;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dicontainer
