#pragma once

// r-uniform hypergraphs on [n] = {1..n}, induced edge counts, matchings and
// the two extremal constructions (lift of a sparse random base, split by a
// distinguished vertex set).

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgestat/exact.hpp"

namespace edgestat {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

/// A finite set of vertex ids, stored sorted and duplicate-free.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}
  explicit VertexSet(std::vector<Vertex> members);

  /// {lo, lo+1, ..., hi}; empty when hi < lo.
  static VertexSet interval(Vertex lo, Vertex hi);

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Throws InputError unless every member lies in [1, n].
  void require_within(std::uint32_t n, std::string_view what) const;

  auto operator<=>(const VertexSet&) const = default;

 private:
  std::vector<Vertex> members_;
};

class Hypergraph {
 public:
  /// Validated construction: every edge must have exactly r distinct vertices
  /// in [1, n]; edges are sorted internally and duplicates are rejected.
  static Hypergraph from_edges(std::uint32_t n, std::uint32_t r, std::vector<Edge> edges);

  /// Canonicalizing construction for generated edge lists: `flat` holds
  /// edge_count * r vertex ids (each edge already validated by the caller);
  /// duplicates are merged.
  static Hypergraph from_flat_merging(std::uint32_t n, std::uint32_t r, std::vector<Vertex> flat);

  static Hypergraph empty(std::uint32_t n, std::uint32_t r);
  static Hypergraph complete(std::uint32_t n, std::uint32_t r);

  std::uint32_t n() const { return n_; }
  std::uint32_t r() const { return r_; }
  std::size_t edge_count() const { return r_ == 0 ? 0 : flat_.size() / r_; }
  bool empty() const { return flat_.empty(); }

  /// i-th edge in lexicographic order, sorted ascending.
  std::span<const Vertex> edge(std::size_t i) const {
    return std::span<const Vertex>(flat_).subspan(i * r_, r_);
  }
  std::vector<Edge> edge_list() const;

  /// Membership test for a sorted r-set.
  bool contains(std::span<const Vertex> sorted_edge) const;

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && r_ == other.r_ && flat_ == other.flat_;
  }

 private:
  Hypergraph(std::uint32_t n, std::uint32_t r) : n_(n), r_(r) {}
  void build_keys();
  std::uint64_t pack(std::span<const Vertex> sorted_edge) const;

  std::uint32_t n_ = 0;
  std::uint32_t r_ = 0;
  std::vector<Vertex> flat_;
  // Order-preserving packed edge keys; empty when r * bit_width(n) > 64.
  std::vector<std::uint64_t> keys_;
  unsigned key_bits_ = 0;
};

/// e(G[U]): number of edges of G contained in U.
std::uint64_t induced_edge_count(const Hypergraph& g, const VertexSet& u);

/// Maximum matching size (exact branch and bound).
std::uint64_t matching_number(const Hypergraph& g);

/// Maximum matching size of an arbitrary set system (edges may have
/// different sizes, duplicates are ignored; empty edges are rejected).
std::uint64_t matching_number(std::span<const Edge> edges);

/// Among all maximum matchings, the one whose sorted edge list is
/// lexicographically smallest. Returned sorted.
std::vector<Edge> lex_least_maximum_matching(std::span<const Edge> edges);

/// All r-subsets of [n] that are not edges of g.
Hypergraph complement(const Hypergraph& g);

struct LiftConstruction {
  Hypergraph base;      // s-uniform F
  Hypergraph graph;     // r-uniform G: r-sets containing an edge of F
  Integer target_level; // C(k - s, r - s)
};

/// Random s-uniform F with edge probability 1/C(k,s) (seeded), lifted to the
/// r-uniform hypergraph of all r-sets containing an edge of F.
LiftConstruction construct_lift(std::uint32_t n, std::uint32_t k, std::uint32_t s, std::uint32_t r,
                                std::uint64_t seed);

/// Each r-subset of [n] independently with probability num/den (seeded).
Hypergraph random_hypergraph(std::uint32_t n, std::uint32_t r, std::uint64_t num, std::uint64_t den,
                             std::uint64_t seed);

/// The r-sets containing at least one edge of `base`.
Hypergraph lift_from_base(const Hypergraph& base, std::uint32_t r);

/// All r-sets W with |W ∩ part| = 1.
Hypergraph construct_split(std::uint32_t n, const VertexSet& part, std::uint32_t r);

/// Level j * C(k - j, r - 1) hit by a k-set meeting the split part in j vertices.
Integer split_target_level(std::uint32_t k, std::uint32_t j, std::uint32_t r);

// ---- .hg text format -------------------------------------------------------
// line 1: "<n> <r>"; then one edge per line as r ascending 1-based ids;
// lines starting with '#' and blank lines are ignored.

Hypergraph parse_hypergraph(std::string_view text);
Hypergraph read_hypergraph_file(const std::filesystem::path& path);
std::string format_hypergraph(const Hypergraph& g);
void write_hypergraph_file(const std::filesystem::path& path, const Hypergraph& g);

}  // namespace edgestat
