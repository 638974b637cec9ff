#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicontainer/pattern.hpp"
#include "dicontainer/weight.hpp"

namespace dicontainer {

using BigInt = boost::multiprecision::cpp_int;

/// m(H) = max (e(H')-1)/(v(H')-2) over edge subsets with e(H') >= 2 and
/// v(H') >= 3. Subsets spanning exactly two vertices (a bare 2-cycle) make
/// the denominator vanish; they are left out of the maximum and recorded in
/// `excluded_two_vertex`.
struct MDensity {
  std::optional<Rational> value;  // empty means +infinity
  std::uint64_t witness = 0;      // edge subset attaining the maximum
  bool excluded_two_vertex = false;

  bool infinite() const noexcept { return !value.has_value(); }
  std::string text() const { return value ? to_string(*value) : std::string("inf"); }
};

inline MDensity m_density(const Pattern& h) {
  MDensity out;
  for (const auto& s : enumerate_subpatterns(h)) {
    if (s.vertices == 2) {
      out.excluded_two_vertex = true;
      continue;
    }
    const Rational q(s.edges - 1, s.vertices - 2);
    if (!out.value || q > *out.value) {
      out.value = q;
      out.witness = s.edge_subset;
    }
  }
  return out;
}

/// Verdict of the sparsity condition e(H')/v(H') <= a/2 over every edge
/// subset with e(H') >= 2.
struct ConditionA {
  bool holds = true;
  Rational max_density{0};       // densest e/v over all scanned subsets
  std::uint64_t densest = 0;     // subset attaining max_density
  std::optional<std::uint64_t> violation;  // set iff !holds; equals `densest`
};

inline ConditionA condition_a(const Pattern& h, const Weight& w) {
  ConditionA out;
  bool first = true;
  for (const auto& s : enumerate_subpatterns(h)) {
    const Rational d(s.edges, s.vertices);
    if (first || d > out.max_density) {
      out.max_density = d;
      out.densest = s.edge_subset;
      first = false;
    }
  }
  // The condition holds iff the densest subset satisfies it.
  const auto cmp = w.compare_half(out.max_density.numerator(), out.max_density.denominator());
  if (cmp == std::partial_ordering::unordered)
    throw PreconditionError("condition A undecided: density " + to_string(out.max_density) +
                            " within interval width of a/2 for a=" + w.text());
  out.holds = cmp != std::partial_ordering::less;
  if (!out.holds) out.violation = out.densest;
  return out;
}

/// C(H) = r * 2^(r^2) * (h!)^2.
inline BigInt constant_c(const Pattern& h) {
  const int r = h.edges();
  BigInt fact = 1;
  for (int k = 2; k <= h.vertices(); ++k) fact *= k;
  BigInt c = r;
  c <<= static_cast<unsigned>(r * r);
  return c * fact * fact;
}

/// Edge-subset of H as a digraph on V(H).
inline Digraph subpattern_graph(const Pattern& h, std::uint64_t subset) { return h.graph().edge_subgraph(subset); }

struct DensityReport {
  MDensity m;
  ConditionA condition;
  BigInt c_of_h;
};

inline DensityReport density_report(const Pattern& h, const Weight& w) {
  return {m_density(h), condition_a(h, w), constant_c(h)};
}

}  // namespace dicontainer
