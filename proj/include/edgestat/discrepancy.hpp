#pragma once

// Signed-sum discrepancy Q_s(G) over ordered 2s-tuples of distinct vertices,
// and heavy disjoint index blocks among the coupling coefficients.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/slice_coupling.hpp"

namespace edgestat {

/// A 2s-tuple (x_1(-1), x_1(1), ..., x_s(-1), x_s(1)) and its weight
/// a(x) = |sum over edges W meeting each pair once of (-1)^{|W ∩ minus slots|}|.
struct SequenceWeight {
  std::vector<Vertex> sequence;
  std::uint64_t weight = 0;

  bool operator==(const SequenceWeight&) const = default;
};

struct DiscrepancyOptions {
  /// Largest n^{2s} * C(n, r-s) accepted.
  Integer cap = 1'000'000'000;
  std::size_t top = 10;
};

struct DiscrepancyReport {
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  Integer q;                          // Q_s(G)
  std::uint64_t sequences = 0;        // ordered tuples enumerated
  std::uint64_t max_weight = 0;
  Integer weight_bound;               // 2^s n^{r-s}
  std::uint64_t bound_violations = 0; // tuples with a(x) above weight_bound
  std::vector<SequenceWeight> heaviest;  // weight descending, then sequence ascending

  /// Q_s / n^{r+s}.
  Rational normalized() const;
};

/// Parallel over the first tuple entry; sums over whichever of G and its
/// complement has fewer edges (the two give the same weights for s >= 1).
DiscrepancyReport q_discrepancy(const Hypergraph& g, std::uint32_t s, const DiscrepancyOptions& options = {});

/// Serial reference: literal definition over all r-subsets of [n].
DiscrepancyReport q_discrepancy_reference(const Hypergraph& g, std::uint32_t s,
                                          const DiscrepancyOptions& options = {});

struct HeavySets {
  std::vector<VertexSet> sets;  // disjoint blocks {s(j-1)+1, ..., sj} that qualified
  std::vector<Rational> values; // |A_v(I_j)| for each
  Rational min_value;           // smallest |A_v(I_j)| among them (0 when none)
  std::size_t t() const { return sets.size(); }
};

/// Blocks I_j = {s(j-1)+1, ..., sj}, j = 1..floor(k/s), kept when A_v(I_j) != 0
/// and |A_v(I_j)| >= threshold.
HeavySets heavy_disjoint_sets(const MultilinearPoly& lambda, const PairSequence& pairs, std::uint32_t s,
                              const Rational& threshold);

/// Draws m disjoint uniform f-tuples from {1..vertices} per trial and counts
/// how many lie in `family`; returns the fraction of trials where that count
/// is below `floor_count`. Trial i uses stream_seed(seed, i).
double disjoint_tuple_shortfall(std::uint32_t vertices, std::uint32_t f, std::uint32_t m,
                                const std::function<bool(std::span<const Vertex>)>& family,
                                double floor_count, std::uint32_t trials, std::uint64_t seed);

}  // namespace edgestat
