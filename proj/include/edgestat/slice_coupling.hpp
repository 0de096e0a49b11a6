#pragma once

// Realizing Slice(n, k) with k disjoint vertex pairs and k Rademacher signs:
// pair i contributes its plus vertex when xi_i = +1 and its minus vertex
// otherwise. Under this coupling a polynomial in sigma becomes a polynomial
// in the signs, whose coefficients A_v(I) are computed here exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"

namespace edgestat {

/// (minus vertex, plus vertex) for each pair, in order.
using PairSequence = std::vector<std::pair<Vertex, Vertex>>;

/// Throws InputError unless the 2k vertices are distinct, lie in [1, n] and 2k <= n.
void validate_pairs(std::uint32_t n, const PairSequence& pairs);

struct Coupling {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  PairSequence pairs;
  std::vector<int> signs;  // each +1 or -1

  /// V_v: the 2k paired vertices.
  VertexSet support() const;
  /// U: the vertex picked from each pair.
  VertexSet chosen() const;
  /// 0/1 indicator of U, index i is vertex i+1.
  std::vector<int> sigma() const;

  bool operator==(const Coupling&) const = default;
};

/// Uniform sequence of 2k distinct vertices split into consecutive pairs, plus i.i.d. signs.
Coupling sample_coupling(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

/// U for the sign vector encoded by `negative_mask` (bit i set: xi_{i+1} = -1).
VertexSet chosen_vertices(const PairSequence& pairs, std::uint64_t negative_mask);

/// Nonzero A_v(I), keyed by the bitmask of I (bit i is pair i+1). Requires k <= 64.
using CoefficientTable = std::map<std::uint64_t, Rational>;

/// A_v(I) by direct evaluation of the defining sum for a single I (1-based pair indices).
Rational coefficient_A(const MultilinearPoly& lambda, const PairSequence& pairs, const VertexSet& index_set);

/// All nonzero A_v(I) at once: each monomial inside V_v spreads over the
/// subsets of the pairs it meets.
CoefficientTable coefficient_table(const MultilinearPoly& lambda, const PairSequence& pairs);

struct IdentityReport {
  std::uint32_t k = 0;
  std::uint64_t sign_vectors = 0;
  Rational max_discrepancy;
  std::optional<std::uint64_t> first_mismatch;  // negative_mask of the first failing sign vector
  CoefficientTable table;

  bool exact() const { return max_discrepancy == 0; }
};

inline constexpr std::uint32_t kMaxIdentityPairs = 20;

/// Compares lambda(sigma) with sum_I A_v(I) xi^I for all 2^k sign vectors, in parallel.
IdentityReport identity_check(const MultilinearPoly& lambda, const PairSequence& pairs);

/// Serial reference for identity_check.
IdentityReport identity_check_reference(const MultilinearPoly& lambda, const PairSequence& pairs);

struct Thresholds {
  std::vector<Rational> b;  // b_g = q 2^g n^(d-g), g = 0..d
  Rational a;               // t b_{f+1} + t^2 b_{f+2} + ... + t^(d-f) b_d
};

Thresholds lo_thresholds(const Rational& q, std::uint32_t d, std::uint32_t n, std::uint32_t f,
                         const Rational& t);

/// Coefficient bounds: |A_v(I)| <= q 2^|I| n^(d-|I|) and A_v(I) = 0 when |I| > d,
/// with q the largest |coefficient| and d the degree of lambda.
struct BoundCheck {
  std::size_t checked = 0;
  std::vector<std::uint64_t> violations;  // masks of failing I
};
BoundCheck check_coefficient_bounds(const MultilinearPoly& lambda, const CoefficientTable& table);

struct DenseCore {
  VertexSet core;
  Integer count;      // B(core)
  Rational required;  // (n/M)^(d - |core|)
};

/// B(W): size-d sets Z with W ⊆ Z ⊆ V and a nonzero coefficient.
Integer dense_count(const MultilinearPoly& lambda, std::uint32_t d, const VertexSet& w, const VertexSet& v);

/// Smallest (then lexicographically least) F ⊆ E with B(F) >= (n/M)^(d-|F|), d = |E|.
DenseCore minimal_dense_core(const MultilinearPoly& lambda, const VertexSet& e, const Rational& m,
                             const VertexSet& v);

/// Fraction of `trials` uniform k-subsets U for which G[U] has a matching of
/// size at least `need`. Trial i uses stream_seed(seed, i).
double matching_retention(const Hypergraph& g, std::uint32_t k, std::uint64_t need, std::uint32_t trials,
                          std::uint64_t seed);

}  // namespace edgestat
