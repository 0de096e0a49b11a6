#pragma once

// Greedy cover: grow Z from the empty set until no Z-relevant set is bad,
// then check that every residual hypergraph of the result has a large
// matching in its top uniformity.
//
// For S ⊆ Z, Gamma_Z(S) = {e \ S : e ∩ Z = S}. S is Z-relevant when Gamma_Z(S)
// is nonempty but Gamma_Z(S') is empty for every proper subset S', and bad
// when Gamma_Z(S) has no matching of size m. Relevant sets of size r are never
// treated as bad: their Gamma is {∅}, which adds no vertices.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"

namespace edgestat {

/// Gamma_Y(S), sorted and deduplicated.
std::vector<Edge> gamma(const Hypergraph& g, const VertexSet& y, const VertexSet& s);

/// Y-relevant sets ordered by size, then lexicographically.
std::vector<VertexSet> relevant_sets(const Hypergraph& g, const VertexSet& y);

/// N_0..N_r: number of Y-relevant sets of each size.
std::vector<std::uint64_t> relevant_counts(const Hypergraph& g, const VertexSet& y);

struct Residual {
  std::vector<Edge> edges;                  // sorted, deduplicated, all nonempty
  std::map<std::uint32_t, std::vector<Edge>> by_size;  // the uniformity classes G_Y^{(d)}(X)
};

/// {e \ X : e ∈ G, e ∩ (Y \ X) = ∅, e \ X ≠ ∅}.
Residual residual(const Hypergraph& g, const VertexSet& y, const VertexSet& x);

struct CoverStep {
  VertexSet z;                 // before the step
  VertexSet s;                 // the bad relevant set used
  std::vector<Edge> matching;  // lexicographically least maximum matching of Gamma_Z(S)
  VertexSet w;                 // its vertex set, added to Z
  std::vector<std::uint64_t> counts_before;
  std::vector<std::uint64_t> counts_after;
};

struct CoverCertificate {
  VertexSet y;
  std::vector<CoverStep> steps;
  bool terminated = false;
  bool step_cap_hit = false;
  std::uint64_t step_cap = 0;
};

/// 10 (r m)^(r+2), saturated at UINT64_MAX.
std::uint64_t default_step_cap(std::uint32_t r, std::uint64_t m);

/// Iterates the greedy map from Z = ∅. step_cap = 0 selects the default.
CoverCertificate greedy_cover(const Hypergraph& g, std::uint64_t m, std::uint64_t step_cap = 0);

/// True when some d has N_d(after) < N_d(before) and N_f(after) <= N_f(before) for all f < d.
bool counts_decrease(const std::vector<std::uint64_t>& before, const std::vector<std::uint64_t>& after);

struct CoverVerdict {
  bool passed = true;
  std::optional<VertexSet> witness;        // failing X with the smallest mask (bit i: i-th smallest vertex of Y)
  std::optional<std::uint32_t> witness_size;  // its top uniformity
  std::optional<std::uint64_t> witness_matching;
  std::optional<Edge> uncovered_edge;      // an edge missing Y when Y is nonempty
};

inline constexpr std::size_t kMaxCoverSize = 24;

/// For every X ⊆ Y with nonempty residual, the top uniformity class must have
/// a matching of size m; and if Y ≠ ∅ every edge must meet Y. Parallel over X.
CoverVerdict verify_cover(const Hypergraph& g, const VertexSet& y, std::uint64_t m);

}  // namespace edgestat
