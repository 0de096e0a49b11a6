#pragma once

// Distribution of e(G[U]) for a uniformly random k-subset U: exact
// enumeration, Monte-Carlo point estimates, and the conditional expectation
// of e(G[U]) given U ∩ Y.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"

namespace edgestat {

/// Exact counts of k-subsets U by e(G[U]). Levels with zero count are absent.
struct EdgeProfile {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::map<std::uint64_t, Integer> counts;
  Integer total;  // C(n, k)

  Rational probability(std::uint64_t level) const;
  Rational mean() const;

  bool operator==(const EdgeProfile&) const = default;
};

struct ProfileOptions {
  /// Largest C(n, k) that will be enumerated.
  Integer cap = 100'000'000;
};

/// Full enumeration of k-subsets, parallel over the smallest vertex.
EdgeProfile exact_profile(const Hypergraph& g, std::uint32_t k, const ProfileOptions& options = {});

/// Serial reference: lexicographic enumeration with a fresh induced count per subset.
EdgeProfile exact_profile_reference(const Hypergraph& g, std::uint32_t k,
                                    const ProfileOptions& options = {});

struct PointEstimate {
  Rational estimate;         // hits / samples
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double half_width = 0.0;   // 1.96 * sqrt(est (1 - est) / samples)
  std::uint64_t seed = 0;

  bool operator==(const PointEstimate&) const = default;
};

/// Samples per independent RNG stream in estimate_point.
inline constexpr std::uint64_t kSampleBlock = 4096;

/// Fraction of `samples` uniform k-subsets with exactly `level` induced edges.
/// Block b of kSampleBlock samples draws from stream_seed(seed, b), so the
/// result does not depend on the number of threads.
PointEstimate estimate_point(const Hypergraph& g, std::uint32_t k, std::uint64_t level,
                             std::uint64_t samples, std::uint64_t seed);

/// Serial reference for estimate_point (same streams, one thread).
PointEstimate estimate_point_reference(const Hypergraph& g, std::uint32_t k, std::uint64_t level,
                                       std::uint64_t samples, std::uint64_t seed);

/// E[e(G[U]) | U ∩ Y = T] for every T ⊆ Y. Index i of `values` is the subset
/// whose bit j selects the j-th smallest vertex of Y; infeasible subsets
/// (Pr[U ∩ Y = T] = 0) hold nullopt.
struct JuntaTable {
  VertexSet y;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::optional<Rational>> values;
  std::vector<Rational> subset_probability;  // Pr[U ∩ Y = T]

  std::uint64_t mask_of(const VertexSet& t) const;
  const std::optional<Rational>& at(const VertexSet& t) const { return values.at(mask_of(t)); }
  bool all_feasible() const;
};

inline constexpr std::size_t kMaxJuntaSize = 20;

JuntaTable conditional_junta(const Hypergraph& g, std::uint32_t k, const VertexSet& y);

/// The table as a multilinear polynomial in the variables of Y (Möbius
/// inversion over subsets). Requires every subset to be feasible.
MultilinearPoly junta_polynomial(const JuntaTable& table);

}  // namespace edgestat
