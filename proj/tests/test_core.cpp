#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "edgestat/combinatorics.hpp"
#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/rng.hpp"

using namespace edgestat;

namespace {

bool disjoint_family(const std::vector<Edge>& family) {
  std::set<Vertex> used;
  for (const auto& e : family) {
    for (Vertex v : e) {
      if (!used.insert(v).second) return false;
    }
  }
  return true;
}

// Largest disjoint subfamily by subset enumeration; also the smallest sorted
// edge list among the maximum ones.
std::pair<std::size_t, std::vector<Edge>> brute_matching(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::size_t best = 0;
  std::vector<Edge> best_family;
  for (std::uint64_t mask = 0; mask < (1ULL << edges.size()); ++mask) {
    std::vector<Edge> family;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((mask >> i) & 1U) family.push_back(edges[i]);
    }
    if (!disjoint_family(family)) continue;
    std::sort(family.begin(), family.end());
    if (family.size() > best || (family.size() == best && family < best_family)) {
      best = family.size();
      best_family = family;
    }
  }
  return {best, best_family};
}

std::uint64_t brute_induced(const Hypergraph& g, const VertexSet& u) {
  std::uint64_t c = 0;
  for (const auto& e : g.edge_list()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return u.contains(v); })) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("binomials and falling factorials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(60, 30).get_str() == "118264581564861424");
  CHECK(binomial_u64(10, 3) == 120);
  CHECK_THROWS_AS(binomial_u64(100, 50), CapExceeded);
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(falling_factorial(7, 0) == 1);
  CHECK(pow_rat(make_rational(1, 2), 3) == make_rational(1, 8));
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational(" 1/3 ") == make_rational(1, 3));
  CHECK(to_fraction_string(make_rational(6, 4)) == "3/2");
  CHECK(to_fraction_string(0) == "0/1");
  CHECK(to_fraction_string(5) == "5/1");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("mt19937_64 outputs are the standard ones") {
  // The standard fixes the 10000th output for the default seed.
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("bounded draws stay in range and cover it") {
  Rng rng(1);
  std::map<std::uint64_t, int> seen;
  for (int i = 0; i < 6000; ++i) {
    const auto v = rng.below(6);
    REQUIRE(v < 6);
    ++seen[v];
  }
  CHECK(seen.size() == 6);
  for (const auto& [v, c] : seen) CHECK(c > 850);  // expected 1000 each
}

TEST_CASE("k_subset is sorted, distinct and roughly uniform") {
  Rng rng(2);
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int i = 0; i < 20000; ++i) {
    auto s = rng.k_subset(5, 2);
    REQUIRE(s.size() == 2);
    REQUIRE(s[0] < s[1]);
    REQUIRE(s[1] <= 5);
    ++counts[s];
  }
  CHECK(counts.size() == 10);
  for (const auto& [s, c] : counts) CHECK(std::abs(c - 2000) < 250);
  // large k goes through the bitmap path
  auto big = rng.k_subset(200, 150);
  CHECK(big.size() == 150);
  CHECK(std::adjacent_find(big.begin(), big.end()) == big.end());
  CHECK(rng.k_subset(4, 0).empty());
  CHECK(rng.k_subset(4, 4) == std::vector<std::uint32_t>{1, 2, 3, 4});
}

TEST_CASE("distinct_sequence has distinct entries and a deterministic stream") {
  Rng a(9), b(9);
  const auto s = a.distinct_sequence(10, 10);
  CHECK(s == b.distinct_sequence(10, 10));
  std::set<std::uint32_t> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 10);
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
}

TEST_CASE("combinations in lexicographic order") {
  auto c = first_combination(2);
  std::vector<std::vector<std::uint32_t>> all;
  do all.push_back(c);
  while (next_combination(c, 1, 4));
  CHECK(all == std::vector<std::vector<std::uint32_t>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(masks_by_size_then_lex(2) == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(masks_by_size_then_lex(3) == std::vector<std::uint64_t>{0, 1, 2, 4, 3, 5, 6, 7});
}

TEST_CASE("from_edges examples") {
  const auto k3 = Hypergraph::from_edges(3, 2, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(k3.edge_count() == 3);
  CHECK(k3 == Hypergraph::complete(3, 2));
  CHECK_THROWS_WITH_AS(Hypergraph::from_edges(4, 2, {{1, 2}, {1, 2}}), doctest::Contains("duplicate edge"), InputError);
  CHECK(Hypergraph::from_edges(5, 3, {{1, 2, 3}, {1, 4, 5}, {3, 4, 5}}).edge_count() == 3);
  CHECK_THROWS_AS(Hypergraph::from_edges(4, 2, {{1, 2, 3}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_edges(4, 2, {{1, 5}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_edges(4, 2, {{2, 2}}), InputError);
  // edges are normalized to ascending order
  CHECK(Hypergraph::from_edges(4, 2, {{3, 1}}).edge_list() == std::vector<Edge>{{1, 3}});
}

TEST_CASE(".hg parsing") {
  const auto k3 = parse_hypergraph("3 2\n1 2\n2 3\n1 3\n");
  CHECK(k3 == Hypergraph::complete(3, 2));
  CHECK(parse_hypergraph("5 3\n# comment\n1 2 3\n").edge_count() == 1);
  CHECK_THROWS_WITH_AS(parse_hypergraph("4 2\n1 2\n1 2\n"), doctest::Contains("line 3"), InputError);
  CHECK_THROWS_WITH_AS(parse_hypergraph("4 2\n2 1\n"), doctest::Contains("line 2"), InputError);
  CHECK_THROWS_WITH_AS(parse_hypergraph("4 2\n1 9\n"), doctest::Contains("line 2"), InputError);
  CHECK_THROWS_AS(parse_hypergraph("4\n"), InputError);
  CHECK_THROWS_AS(parse_hypergraph(""), InputError);

  const auto g = random_hypergraph(9, 3, 1, 3, 11);
  CHECK(parse_hypergraph(format_hypergraph(g)) == g);
}

TEST_CASE("induced_edge_count") {
  const auto k4 = Hypergraph::complete(4, 2);
  CHECK(induced_edge_count(k4, {1, 2, 3}) == 3);
  const auto c5 = Hypergraph::from_edges(5, 2, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
  CHECK(induced_edge_count(c5, {1, 2, 4}) == 1);
  CHECK(induced_edge_count(Hypergraph::empty(6, 3), {1, 2, 3, 4}) == 0);
  CHECK_THROWS_AS(induced_edge_count(c5, {1, 6}), InputError);

  // both the probing and the scanning strategy agree with a brute count
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto g = random_hypergraph(10, 3, 1 + rng.below(5), 6, rng.next());
    for (int i = 0; i < 10; ++i) {
      const VertexSet u(rng.k_subset(10, static_cast<std::uint32_t>(rng.below(11))));
      const auto c = induced_edge_count(g, u);
      CHECK(c == brute_induced(g, u));
      CHECK(Integer(static_cast<unsigned long>(c)) <= binomial(u.size(), 3));
    }
  }
}

TEST_CASE("matching_number examples") {
  CHECK(matching_number(Hypergraph::complete(3, 2)) == 1);
  CHECK(matching_number(Hypergraph::from_edges(4, 2, {{1, 2}, {2, 3}, {3, 4}})) == 2);
  CHECK(matching_number(Hypergraph::from_edges(6, 3, {{1, 2, 3}, {4, 5, 6}, {3, 4, 5}})) == 2);
  CHECK(matching_number(Hypergraph::empty(5, 2)) == 0);
  const std::vector<Edge> mixed{{1}, {1, 2}, {2, 3}, {3}};
  CHECK(matching_number(std::span<const Edge>(mixed)) == 2);
  const std::vector<Edge> with_empty{{}};
  CHECK_THROWS_AS(matching_number(std::span<const Edge>(with_empty)), InputError);
}

TEST_CASE("matching_number and lex-least matching agree with brute force") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    const auto count = rng.below(16);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto size = static_cast<std::uint32_t>(1 + rng.below(3));
      edges.push_back(rng.k_subset(8, size));
    }
    const auto [best, family] = brute_matching(edges);
    CHECK(matching_number(std::span<const Edge>(edges)) == best);
    CHECK(lex_least_maximum_matching(std::span<const Edge>(edges)) == family);
  }
}

TEST_CASE("complement") {
  const auto g = random_hypergraph(7, 3, 1, 2, 5);
  const auto c = complement(g);
  CHECK(g.edge_count() + c.edge_count() == 35);
  for (const auto& e : c.edge_list()) CHECK_FALSE(g.contains(e));
  CHECK(complement(c) == g);
}

TEST_CASE("lift construction") {
  // s = r: G is F itself and the level is 1
  const auto same = construct_lift(8, 4, 2, 2, 3);
  CHECK(same.graph == same.base);
  CHECK(same.target_level == 1);

  const auto star = lift_from_base(Hypergraph::from_edges(6, 1, {{1}}), 2);
  CHECK(star == Hypergraph::from_edges(6, 2, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}}));
  CHECK(lift_from_base(Hypergraph::empty(6, 1), 2).empty());

  const auto lift = construct_lift(12, 5, 2, 3, 77);
  CHECK(lift.target_level == binomial(3, 1));
  // brute force: an r-set is an edge iff it contains a base edge
  auto w = first_combination(3);
  do {
    bool has = false;
    for (int drop = 0; drop < 3; ++drop) {
      Edge sub;
      for (int i = 0; i < 3; ++i) {
        if (i != drop) sub.push_back(w[static_cast<std::size_t>(i)]);
      }
      has = has || lift.base.contains(sub);
    }
    CHECK(lift.graph.contains(w) == has);
  } while (next_combination(w, 1, 12));

  // same seed, same construction
  CHECK(construct_lift(12, 5, 2, 3, 77).graph == lift.graph);
  CHECK_THROWS_AS(construct_lift(5, 6, 1, 2, 0), InputError);
  CHECK_THROWS_AS(construct_lift(8, 4, 3, 2, 0), InputError);
}

TEST_CASE("lift is monotone in the base") {
  auto base = random_hypergraph(9, 2, 1, 4, 8);
  const auto before = lift_from_base(base, 3);
  auto edges = base.edge_list();
  edges.push_back({1, 9});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto after = lift_from_base(Hypergraph::from_edges(9, 2, edges), 3);
  for (const auto& e : before.edge_list()) CHECK(after.contains(e));
}

TEST_CASE("split construction") {
  CHECK(construct_split(4, {1, 2}, 2) == Hypergraph::from_edges(4, 2, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
  const auto g = construct_split(5, {1}, 3);
  CHECK(g.edge_count() == 6);
  for (const auto& e : g.edge_list()) CHECK(e[0] == 1);
  CHECK(split_target_level(8, 2, 2) == 12);

  const VertexSet part{2, 5, 7};
  const auto h = construct_split(9, part, 3);
  std::size_t expected = 0;
  auto w = first_combination(3);
  do {
    const auto meet = std::count_if(w.begin(), w.end(), [&](Vertex v) { return part.contains(v); });
    if (meet == 1) ++expected;
    CHECK(h.contains(w) == (meet == 1));
  } while (next_combination(w, 1, 9));
  CHECK(h.edge_count() == expected);
}

TEST_CASE("random hypergraphs are reproducible") {
  CHECK(random_hypergraph(10, 3, 1, 2, 42) == random_hypergraph(10, 3, 1, 2, 42));
  CHECK_FALSE(random_hypergraph(10, 3, 1, 2, 42) == random_hypergraph(10, 3, 1, 2, 43));
  CHECK(random_hypergraph(6, 2, 0, 1, 1).empty());
  CHECK(random_hypergraph(6, 2, 1, 1, 1) == Hypergraph::complete(6, 2));
}
