#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dicontainer/extremal.hpp"
#include "dicontainer/hypergraph.hpp"

namespace dicontainer {

/// One branching decision: element `element` of the universe was the
/// highest-degree undecided element and was declared in or out of the
/// independent set.
struct Decision {
  std::uint32_t element = 0;
  bool member = false;
};

struct Fingerprint {
  std::vector<Decision> path;  // root-to-leaf decisions
  std::size_t container = 0;

  UniverseSet members(std::size_t universe_size) const {
    UniverseSet s(universe_size);
    for (const auto& d : path)
      if (d.member) s.set(d.element);
    return s;
  }
};

/// Containers over the pair universe plus the decision tree that routes an
/// independent set to the container built for its fingerprint.
class ContainerFamily {
 public:
  int n = 0;               // ground set [N]
  int r = 0;               // uniformity
  Rational eps{0};
  double tau = 0;
  std::size_t universe_size = 0;
  std::vector<UniverseSet> containers;
  std::vector<Fingerprint> fingerprints;  // one per leaf, depth-first order (out-branch first)

  std::size_t fingerprint_budget() const {
    return static_cast<std::size_t>(std::ceil(tau * static_cast<double>(universe_size)));
  }

  /// Index of the container the fingerprint of `independent` leads to.
  std::size_t route(const UniverseSet& independent) const {
    std::size_t node = 0;
    while (tree_[node].element >= 0) {
      const auto& t = tree_[node];
      node = independent.test(static_cast<std::size_t>(t.element)) ? t.in_child : t.out_child;
    }
    return tree_[node].leaf_container;
  }

  /// Rebuilds the routing tree from the fingerprint paths.
  void rebuild_tree() {
    tree_.assign(1, Node{});
    for (const auto& fp : fingerprints) {
      std::size_t node = 0;
      for (const auto& d : fp.path) {
        auto& t = tree_[node];
        if (t.element < 0 && t.in_child == 0 && t.out_child == 0) t.element = static_cast<std::int64_t>(d.element);
        if (t.element != static_cast<std::int64_t>(d.element))
          throw PreconditionError("fingerprint paths disagree on the branching element");
        std::size_t& child = d.member ? tree_[node].in_child : tree_[node].out_child;
        if (child == 0) {
          child = tree_.size();
          tree_.push_back(Node{});
        }
        node = d.member ? tree_[node].in_child : tree_[node].out_child;
      }
      if (tree_[node].element >= 0) throw PreconditionError("fingerprint path ends at an internal node");
      tree_[node].leaf_container = fp.container;
    }
    for (const auto& t : tree_)
      if (t.element >= 0 && (t.in_child == 0 || t.out_child == 0))
        throw PreconditionError("routing tree has a missing branch");
  }

 private:
  struct Node {
    std::int64_t element = -1;  // -1 for a leaf
    std::size_t in_child = 0;
    std::size_t out_child = 0;
    std::size_t leaf_container = 0;
  };
  std::vector<Node> tree_{Node{}};
};

/// Observed state change at one branching step, for soundness checks.
struct BranchStep {
  const UniverseSet& available_before;
  const UniverseSet& members_before;
  std::uint32_t element;
  bool member;
  const UniverseSet& available_after;
  const UniverseSet& members_after;
};

struct NoObserver {
  void operator()(const BranchStep&) const {}
};

inline std::size_t round_cap(int r, const Rational& eps) {
  // 4 * r * ceil(1/eps)
  const Rational inv = Rational(1) / eps;
  const std::int64_t c = inv.numerator() / inv.denominator() + (inv.denominator() == 1 ? 0 : 1);
  return static_cast<std::size_t>(4 * r) * static_cast<std::size_t>(c);
}

namespace detail {

struct Leaf {
  UniverseSet container;
  std::vector<Decision> path;
};

struct PendingBranch {
  UniverseSet available;
  UniverseSet members;
  std::vector<Decision> path;
};

// Depth-first expansion of one branch of the fingerprint tree. Leaves reach
// `on_leaf` out-branch first; a branch whose path reaches `stop_depth` is
// handed to `on_stop` unexpanded.
class BranchWalker {
 public:
  BranchWalker(const PairHypergraph& d, const Rational& eps)
      : d_(d), eps_(eps), total_(d.edge_count()), cap_(round_cap(d.uniformity(), eps)), degree_(d.universe().size()) {}

  // spanned <= eps * e(D), exactly
  bool sparse(std::size_t spanned) const {
    return static_cast<std::int64_t>(spanned) * eps_.denominator() <= eps_.numerator() * static_cast<std::int64_t>(total_);
  }

  template <class OnLeaf, class OnStop, class Observer>
  void walk(const UniverseSet& avail, const UniverseSet& members, std::vector<Decision>& path, std::size_t stop_depth,
            OnLeaf& on_leaf, OnStop& on_stop, Observer& observe) {
    std::fill(degree_.begin(), degree_.end(), 0U);
    std::size_t spanned = 0;
    for (std::size_t i = 0; i < total_; ++i) {
      if (!d_.contains_edge(i, avail)) continue;
      ++spanned;
      for (auto x : d_.edge(i)) ++degree_[x];
    }
    if (sparse(spanned)) {
      on_leaf(avail, path);
      return;
    }
    if (path.size() >= stop_depth) {
      on_stop(avail, members, path);
      return;
    }
    if (path.size() >= cap_)
      throw BudgetError("container branch exceeded round cap " + std::to_string(cap_) + " with " +
                        std::to_string(spanned) + " spanned hyperedges");
    std::int64_t pick = -1;
    for (auto x = avail.find_first(); x != UniverseSet::npos; x = avail.find_next(x)) {
      if (members.test(x)) continue;
      if (pick < 0 || degree_[x] > degree_[static_cast<std::size_t>(pick)]) pick = static_cast<std::int64_t>(x);
    }
    const auto x = static_cast<std::uint32_t>(pick);

    UniverseSet out_avail = avail;
    out_avail.reset(x);
    observe(BranchStep{avail, members, x, false, out_avail, members});
    path.push_back({x, false});
    walk(out_avail, members, path, stop_depth, on_leaf, on_stop, observe);
    path.pop_back();

    UniverseSet in_members = members;
    in_members.set(x);
    UniverseSet in_avail = avail;
    for (std::size_t i = 0; i < total_; ++i) {
      if (!d_.contains_edge(i, avail)) continue;
      std::int64_t missing = -1;
      int outside = 0;
      for (auto y : d_.edge(i))
        if (!in_members.test(y)) {
          ++outside;
          missing = y;
        }
      if (outside == 1) in_avail.reset(static_cast<std::size_t>(missing));
    }
    observe(BranchStep{avail, members, x, true, in_avail, in_members});
    path.push_back({x, true});
    walk(in_avail, in_members, path, stop_depth, on_leaf, on_stop, observe);
    path.pop_back();
  }

 private:
  const PairHypergraph& d_;
  Rational eps_;
  std::size_t total_;
  std::size_t cap_;
  std::vector<std::uint32_t> degree_;
};

inline ContainerFamily empty_family(const PairHypergraph& d, double tau, const Rational& eps) {
  if (!(eps > 0 && eps < Rational(1, 2))) throw PreconditionError("eps must lie in (0, 1/2), got " + to_string(eps));
  if (!(tau > 0.0 && tau <= 1.0)) throw PreconditionError("tau must lie in (0, 1]");
  ContainerFamily fam;
  fam.n = d.universe().ground();
  fam.r = d.uniformity();
  fam.eps = eps;
  fam.tau = tau;
  fam.universe_size = d.universe().size();
  return fam;
}

// Appends leaves in the order given; equal containers share one index.
class FamilyCollector {
 public:
  explicit FamilyCollector(ContainerFamily& fam) : fam_(fam) {}

  void add(const UniverseSet& container, const std::vector<Decision>& path) {
    auto [it, fresh] = index_of_.try_emplace(container, fam_.containers.size());
    if (fresh) fam_.containers.push_back(container);
    fam_.fingerprints.push_back({path, it->second});
  }

 private:
  ContainerFamily& fam_;
  std::map<UniverseSet, std::size_t> index_of_;
};

inline void finish_family(ContainerFamily& fam, const PairHypergraph& d) {
  fam.rebuild_tree();
  const BranchWalker check(d, fam.eps);
  for (const auto& c : fam.containers)
    if (!check.sparse(d.spanned_edges(c))) throw VerificationError("constructed container violates sparsity");
}

}  // namespace detail

/// Deterministic max-degree fingerprint construction.
///
/// A branch carries the available set A (initially the universe) and the
/// fingerprint members F. While A spans more than eps*e(D) hyperedges, the
/// undecided element x of A \ F with the highest degree in D[A] (lowest index
/// on ties) is branched on:
///   out: x leaves A;
///   in:  x joins F, and every y in A completing a hyperedge of D[A] with
///        elements of F leaves A.
/// Both steps keep every independent set I with F <= I <= A in exactly one
/// branch, so the leaves cover all independent sets and each leaf is sparse.
template <class Observer = NoObserver>
ContainerFamily build_containers(const PairHypergraph& d, double tau, const Rational& eps,
                                 Observer&& observe = Observer{}) {
  ContainerFamily fam = detail::empty_family(d, tau, eps);
  detail::FamilyCollector collect(fam);
  auto on_leaf = [&](const UniverseSet& c, const std::vector<Decision>& path) { collect.add(c, path); };
  auto never = [](const UniverseSet&, const UniverseSet&, const std::vector<Decision>&) {};
  detail::BranchWalker walker(d, eps);
  std::vector<Decision> path;
  UniverseSet all(fam.universe_size);
  all.set();
  walker.walk(all, UniverseSet(fam.universe_size), path, SIZE_MAX, on_leaf, never, observe);
  detail::finish_family(fam, d);
  return fam;
}

/// Same family as build_containers, byte for byte. The top of the branch
/// tree is expanded serially, the remaining subtrees are spread over
/// `workers` threads, and their leaves are merged back in depth-first order.
inline ContainerFamily build_containers_parallel(const PairHypergraph& d, double tau, const Rational& eps,
                                                 int workers) {
  if (workers <= 1) return build_containers(d, tau, eps);
  ContainerFamily fam = detail::empty_family(d, tau, eps);
  const std::size_t split_depth = static_cast<std::size_t>(std::bit_width(8U * static_cast<unsigned>(workers)));

  // leaves above the split come first in their DFS slot, pending subtrees get a slot each
  struct Slot {
    std::optional<detail::Leaf> leaf;
    std::optional<detail::PendingBranch> pending;
  };
  std::vector<Slot> slots;
  {
    auto on_leaf = [&](const UniverseSet& c, const std::vector<Decision>& path) {
      slots.push_back({detail::Leaf{c, path}, std::nullopt});
    };
    auto on_stop = [&](const UniverseSet& a, const UniverseSet& m, const std::vector<Decision>& path) {
      slots.push_back({std::nullopt, detail::PendingBranch{a, m, path}});
    };
    NoObserver none;
    detail::BranchWalker walker(d, eps);
    std::vector<Decision> path;
    UniverseSet all(fam.universe_size);
    all.set();
    walker.walk(all, UniverseSet(fam.universe_size), path, split_depth, on_leaf, on_stop, none);
  }

  std::vector<std::vector<detail::Leaf>> results(slots.size());
  std::vector<std::exception_ptr> errors(slots.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        detail::BranchWalker walker(d, eps);
        NoObserver none;
        auto never = [](const UniverseSet&, const UniverseSet&, const std::vector<Decision>&) {};
        for (std::size_t i = next++; i < slots.size(); i = next++) {
          if (!slots[i].pending) continue;
          auto& out = results[i];
          auto on_leaf = [&](const UniverseSet& c, const std::vector<Decision>& path) { out.push_back({c, path}); };
          try {
            auto& p = *slots[i].pending;
            walker.walk(p.available, p.members, p.path, SIZE_MAX, on_leaf, never, none);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::FamilyCollector collect(fam);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].leaf) collect.add(slots[i].leaf->container, slots[i].leaf->path);
    for (const auto& leaf : results[i]) collect.add(leaf.container, leaf.path);
  }
  detail::finish_family(fam, d);
  return fam;
}

namespace detail {

inline std::string to_hex(const UniverseSet& s) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out((s.size() + 3) / 4, '0');
  for (std::size_t k = 0; k < out.size(); ++k) {
    unsigned nib = 0;
    for (unsigned b = 0; b < 4; ++b)
      if (4 * k + b < s.size() && s.test(4 * k + b)) nib |= 1U << b;
    out[k] = digits[nib];
  }
  return out;
}

inline UniverseSet from_hex(const std::string& hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) throw PreconditionError("bitset '" + hex + "' has the wrong length");
  UniverseSet s(size);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[k];
    unsigned nib;
    if (c >= '0' && c <= '9') nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') nib = static_cast<unsigned>(c - 'a' + 10);
    else throw PreconditionError("bad hex digit in '" + hex + "'");
    for (unsigned b = 0; b < 4; ++b)
      if (nib >> b & 1U) {
        if (4 * k + b >= size) throw PreconditionError("bitset '" + hex + "' sets bits past the universe");
        s.set(4 * k + b);
      }
  }
  return s;
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// Text export:
///
///     <N> <r> <eps p/q> <tau> <count>
///     <hex bitset>                                  (count lines)
///     fingerprints <k>
///     <members hex> <container index> <path>        (k lines)
///
/// Bitset hex digit k holds universe elements 4k..4k+3, least significant
/// bit first. A path lists decisions as +x (member) or -x, comma separated,
/// or "." when empty.
inline std::string export_family(const ContainerFamily& fam) {
  std::ostringstream os;
  os << fam.n << " " << fam.r << " " << to_string(fam.eps) << " " << detail::format_double(fam.tau) << " "
     << fam.containers.size() << "\n";
  for (const auto& c : fam.containers) os << detail::to_hex(c) << "\n";
  os << "fingerprints " << fam.fingerprints.size() << "\n";
  for (const auto& fp : fam.fingerprints) {
    os << detail::to_hex(fp.members(fam.universe_size)) << " " << fp.container << " ";
    if (fp.path.empty()) os << ".";
    for (std::size_t i = 0; i < fp.path.size(); ++i)
      os << (i ? "," : "") << (fp.path[i].member ? '+' : '-') << fp.path[i].element;
    os << "\n";
  }
  return os.str();
}

inline ContainerFamily import_family(const std::string& text) {
  std::istringstream is(text);
  ContainerFamily fam;
  std::string eps_text, tau_text;
  std::size_t count = 0;
  if (!(is >> fam.n >> fam.r >> eps_text >> tau_text >> count))
    throw PreconditionError("container family: malformed header");
  fam.eps = parse_rational(eps_text);
  fam.tau = std::stod(tau_text);
  fam.universe_size = PairUniverse(fam.n).size();
  for (std::size_t i = 0; i < count; ++i) {
    std::string hex;
    if (!(is >> hex)) throw PreconditionError("container family: missing container line");
    fam.containers.push_back(detail::from_hex(hex, fam.universe_size));
  }
  std::string tag;
  std::size_t k = 0;
  if (!(is >> tag >> k) || tag != "fingerprints") throw PreconditionError("container family: missing fingerprints");
  for (std::size_t i = 0; i < k; ++i) {
    std::string hex, path;
    Fingerprint fp;
    if (!(is >> hex >> fp.container >> path)) throw PreconditionError("container family: malformed fingerprint");
    if (fp.container >= fam.containers.size()) throw PreconditionError("fingerprint points past the family");
    if (path != ".") {
      std::istringstream ps(path);
      std::string tok;
      while (std::getline(ps, tok, ',')) {
        if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
          throw PreconditionError("malformed decision '" + tok + "'");
        const unsigned long e = std::stoul(tok.substr(1));
        if (e >= fam.universe_size) throw PreconditionError("decision element outside universe");
        fp.path.push_back({static_cast<std::uint32_t>(e), tok[0] == '+'});
      }
    }
    if (fp.members(fam.universe_size) != detail::from_hex(hex, fam.universe_size))
      throw PreconditionError("fingerprint members disagree with its path");
    fam.fingerprints.push_back(std::move(fp));
  }
  fam.rebuild_tree();
  return fam;
}

enum class VerifyMode { exhaustive, sampled };

inline constexpr int kExhaustiveMaxN = 5;

struct FamilyCheck {
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t checked = 0;         // independent sets examined
  std::uint64_t sample_attempts = 0;  // sampled mode: draws before acceptance
  std::uint64_t routed_misses = 0;   // I not inside containers[route(I)]
  std::uint64_t uncovered = 0;       // I inside no container at all
  std::optional<Digraph> witness;    // first failing independent set
  std::vector<std::size_t> container_copies;  // copies of H spanned by each container
  std::vector<std::size_t> sparsity_violations;
  std::size_t sparsity_limit_num = 0;  // eps * e(D) as num/den
  std::size_t sparsity_limit_den = 1;
  bool pass() const { return routed_misses == 0 && uncovered == 0 && sparsity_violations.empty(); }
};

/// Checks that every H-free digraph on [N] (exhaustive) or every sampled one
/// lies in the container its fingerprint selects, and re-counts the copies
/// of H inside each container.
inline FamilyCheck verify_family(const PairHypergraph& d, const ContainerFamily& fam, VerifyMode mode,
                                 std::uint64_t samples = 10'000, std::uint64_t seed = 0,
                                 std::uint64_t max_attempts = 2'000'000'000ULL) {
  if (fam.n != d.universe().ground() || fam.universe_size != d.universe().size())
    throw PreconditionError("family and hypergraph have different ground sets");
  const int n = fam.n;
  FamilyCheck chk;
  chk.mode = mode;
  const std::size_t total = d.edge_count();
  chk.sparsity_limit_num = static_cast<std::size_t>(fam.eps.numerator()) * total;
  chk.sparsity_limit_den = static_cast<std::size_t>(fam.eps.denominator());
  for (std::size_t i = 0; i < fam.containers.size(); ++i) {
    const std::size_t copies = d.pattern() ? d.pattern()->count_copies(d.universe().decode(fam.containers[i]))
                                           : d.spanned_edges(fam.containers[i]);
    chk.container_copies.push_back(copies);
    if (copies * chk.sparsity_limit_den > chk.sparsity_limit_num) chk.sparsity_violations.push_back(i);
  }
  auto is_free = [&](const Digraph& g) {
    return d.pattern() ? !d.pattern()->occurs_in(g) : independent_set_check(d, g);
  };
  auto check_one = [&](const Digraph& g) {
    const UniverseSet s = d.universe().encode(g);
    ++chk.checked;
    if (s.is_subset_of(fam.containers[fam.route(s)])) return;
    ++chk.routed_misses;
    if (!chk.witness) chk.witness = g;
    const bool somewhere = std::any_of(fam.containers.begin(), fam.containers.end(),
                                       [&](const UniverseSet& c) { return s.is_subset_of(c); });
    if (!somewhere) ++chk.uncovered;
  };
  if (mode == VerifyMode::exhaustive) {
    if (n > kExhaustiveMaxN)
      throw BudgetError("exhaustive coverage check supports N <= " + std::to_string(kExhaustiveMaxN));
    const std::uint64_t states = std::uint64_t{1} << (2 * detail::pair_slots(n));
    for (std::uint64_t code = 0; code < states; ++code) {
      const Digraph g = detail::decode_state(n, code);
      if (is_free(g)) check_one(g);
    }
  } else {
    if (n > 8) throw BudgetError("sampled coverage check supports N <= 8");
    std::mt19937_64 rng(seed);
    const int slots = detail::pair_slots(n);
    const std::uint64_t mask = slots == 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * slots)) - 1;
    while (chk.checked < samples) {
      if (++chk.sample_attempts > max_attempts)
        throw BudgetError("rejection sampling exceeded " + std::to_string(max_attempts) + " attempts");
      // two uniform bits per unordered pair
      const Digraph g = detail::decode_state(n, rng() & mask);
      if (is_free(g)) check_one(g);
    }
  }
  return chk;
}

struct ContainerReport {
  std::size_t index = 0;
  std::size_t copies = 0;  // re-counted on the decoded digraph
  PairCount weight;
  std::optional<Rational> ea;
  double ea_approx = 0;
  std::optional<double> slack;  // ex_a(N,H) + eps*N^2 - e_a(G_C)
  bool within_ex_bound = false;
};

struct PipelineReport {
  MDensity m;
  ConditionA condition;
  double tau = 0;
  std::size_t hyperedges = 0;
  std::uint64_t labelled_copies = 0;
  std::optional<ExtremalResult> ex;  // empty: bound unavailable within budget
  std::string ex_unavailable_reason;
  std::vector<ContainerReport> containers;
  std::size_t max_copies = 0;
  double max_copies_over_edges = 0;      // max copies / e(D)
  double max_copies_over_labelled = 0;   // max copies / (N)_h-style labelled count
  double max_copies_over_nh = 0;         // max copies / N^h
  bool copies_within_eps_nh = false;     // max copies <= eps * N^h
  bool ex_bound_all = false;
  double log2_family = 0;
  double reference = 0;  // N^(2-1/m) * log2 N
  double fitted_c = 0;   // log2|C| / reference
  std::size_t fingerprint_budget = 0;
  std::size_t fingerprints_over_budget = 0;
  std::size_t max_fingerprint = 0;
  FamilyCheck coverage;
  ContainerFamily family;
};

struct PipelineOptions {
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  bool accept_excluded_two_cycles = false;
  SearchOptions search;
};

/// Builds D(N,H), takes tau = N^(-1/m(H)), builds containers and checks the
/// three container properties on the decoded digraphs G_C.
inline PipelineReport container_pipeline(const Pattern& h, const Weight& w, int n, const Rational& eps,
                                         const PipelineOptions& opt = {}) {
  PipelineReport rep;
  rep.condition = condition_a(h, w);
  if (!rep.condition.holds) {
    const auto viol = h.graph().edge_subgraph(*rep.condition.violation);
    throw PreconditionError("condition A fails for a=" + w.text() + ": subgraph with e/v = " +
                            std::to_string(viol.edge_count()) + "/" + std::to_string(std::popcount(viol.spanned_mask())) +
                            " > a/2");
  }
  const double m = finite_m(h, opt.accept_excluded_two_cycles, &rep.m);
  rep.tau = std::pow(static_cast<double>(n), -1.0 / m);
  const auto d = PairHypergraph::build(n, h);
  rep.hyperedges = d.edge_count();
  rep.labelled_copies = d.labelled_copy_count();
  rep.family = build_containers_parallel(d, rep.tau, eps, opt.search.workers);
  rep.coverage = verify_family(d, rep.family, n <= kExhaustiveMaxN ? VerifyMode::exhaustive : VerifyMode::sampled,
                               opt.samples, opt.seed);
  try {
    rep.ex = ex_a(n, h, w, n <= kFullModeMaxVertices ? SearchMode::full : SearchMode::canonical, opt.search);
  } catch (const BudgetError& e) {
    rep.ex_unavailable_reason = e.what();
  }
  const double eps_d = boost::rational_cast<double>(eps);
  const double eps_n2 = eps_d * static_cast<double>(n) * static_cast<double>(n);
  rep.ex_bound_all = rep.ex.has_value();
  for (std::size_t i = 0; i < rep.family.containers.size(); ++i) {
    const Digraph g = d.universe().decode(rep.family.containers[i]);
    ContainerReport c;
    c.index = i;
    c.copies = h.count_copies(g);
    c.weight = {g.double_pairs(), g.single_pairs()};
    c.ea = w.evaluate_exact(c.weight.doubles, c.weight.singles);
    c.ea_approx = w.evaluate(c.weight.doubles, c.weight.singles);
    if (rep.ex) {
      if (c.ea && rep.ex->value) {
        // exact: e_a(G) <= ex + eps*N^2
        const Rational limit = *rep.ex->value + eps * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
        c.slack = boost::rational_cast<double>(limit - *c.ea);
        c.within_ex_bound = *c.ea <= limit;
      } else {
        c.slack = rep.ex->value_approx + eps_n2 - c.ea_approx;
        c.within_ex_bound = *c.slack >= 0;
      }
      rep.ex_bound_all = rep.ex_bound_all && c.within_ex_bound;
    }
    rep.max_copies = std::max(rep.max_copies, c.copies);
    rep.containers.push_back(c);
  }
  const double nh = std::pow(static_cast<double>(n), h.vertices());
  rep.max_copies_over_edges = static_cast<double>(rep.max_copies) / static_cast<double>(rep.hyperedges);
  rep.max_copies_over_labelled = static_cast<double>(rep.max_copies) / static_cast<double>(rep.labelled_copies);
  rep.max_copies_over_nh = static_cast<double>(rep.max_copies) / nh;
  rep.copies_within_eps_nh = static_cast<double>(rep.max_copies) <= eps_d * nh;
  rep.log2_family = std::log2(static_cast<double>(rep.family.containers.size()));
  rep.reference = std::pow(static_cast<double>(n), 2.0 - 1.0 / m) * std::log2(static_cast<double>(n));
  rep.fitted_c = rep.log2_family / rep.reference;
  rep.fingerprint_budget = rep.family.fingerprint_budget();
  for (const auto& fp : rep.family.fingerprints) {
    const std::size_t size = fp.members(rep.family.universe_size).count();
    rep.max_fingerprint = std::max(rep.max_fingerprint, size);
    if (size > rep.fingerprint_budget) ++rep.fingerprints_over_budget;
  }
  return rep;
}

}  // namespace dicontainer
