#include <doctest.h>

#include <algorithm>
#include <vector>

#include "edgestat/discrepancy.hpp"
#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/rng.hpp"

using namespace edgestat;

TEST_CASE("discrepancy examples") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::uint32_t n = r; n <= 8; ++n) {
      for (std::uint32_t s = 1; s <= r && 2 * s <= n; ++s) {
        CHECK(q_discrepancy(Hypergraph::complete(n, r), s).q == 0);
        CHECK(q_discrepancy(Hypergraph::empty(n, r), s).q == 0);
        CHECK(q_discrepancy_reference(Hypergraph::complete(n, r), s).q == 0);
      }
    }
  }
  auto single = Hypergraph::from_edges(4, 2, {{1, 2}});
  auto rep = q_discrepancy(single, 1);
  CHECK(rep.q == 8);
  CHECK(rep.sequences == 12);
  CHECK(rep.max_weight == 1);
  CHECK(rep.weight_bound == 8);
  CHECK(rep.normalized() == make_rational(8, 64));
  CHECK(rep.heaviest.front() == SequenceWeight{{1, 3}, 1});
  CHECK(q_discrepancy_reference(single, 1).q == 8);
}

TEST_CASE("discrepancy errors") {
  auto g = Hypergraph::complete(6, 2);
  CHECK_THROWS_AS(q_discrepancy(g, 0), InputError);
  CHECK_THROWS_AS(q_discrepancy(g, 3), InputError);
  DiscrepancyOptions tiny;
  tiny.cap = 10;
  CHECK_THROWS_AS(q_discrepancy(g, 1, tiny), CapExceeded);
  CHECK_THROWS_AS(q_discrepancy_reference(g, 1, tiny), CapExceeded);
}

TEST_CASE("discrepancy kernel matches the reference") {
  Rng rng(404);
  for (int rep = 0; rep < 60; ++rep) {
    const auto r = static_cast<std::uint32_t>(1 + rng.below(3));
    const auto n = static_cast<std::uint32_t>(std::max<std::uint32_t>(2 * r, 4) + rng.below(4));
    auto g = random_hypergraph(n, r, 1 + rng.below(4), 5, rng.next());
    for (std::uint32_t s = 1; s <= r; ++s) {
      auto fast = q_discrepancy(g, s);
      auto slow = q_discrepancy_reference(g, s);
      CHECK(fast.q == slow.q);
      CHECK(fast.sequences == slow.sequences);
      CHECK(fast.max_weight == slow.max_weight);
      CHECK(fast.heaviest == slow.heaviest);
      CHECK(fast.bound_violations == 0);
      CHECK(slow.bound_violations == 0);
      CHECK(fast.max_weight <= fast.weight_bound);
      // complement leaves every weight unchanged
      auto comp = q_discrepancy(complement(g), s);
      CHECK(comp.q == fast.q);
      CHECK(comp.heaviest == fast.heaviest);
    }
  }
}

TEST_CASE("heaviest list is ordered and capped") {
  auto g = random_hypergraph(7, 2, 1, 2, 8);
  DiscrepancyOptions opts;
  opts.top = 4;
  auto rep = q_discrepancy(g, 2, opts);
  REQUIRE(rep.heaviest.size() == 4);
  for (std::size_t i = 1; i < rep.heaviest.size(); ++i) {
    const auto& a = rep.heaviest[i - 1];
    const auto& b = rep.heaviest[i];
    CHECK((a.weight > b.weight || (a.weight == b.weight && a.sequence < b.sequence)));
  }
  CHECK(rep.heaviest.front().weight == rep.max_weight);
}

TEST_CASE("balanced random graphs have positive normalized discrepancy") {
  // logged, not compared to any fixed constant
  Rng rng(1234);
  for (std::uint32_t n : {8U, 10U, 12U}) {
    const Integer total = binomial(n, 2);
    Rational lowest = -1;
    int kept = 0;
    while (kept < 20) {
      auto g = random_hypergraph(n, 2, 1 + rng.below(3), 4, rng.next());
      const Integer e = g.edge_count();
      if (4 * e < total || 4 * e > 3 * total) continue;
      ++kept;
      Rational best = 0;
      for (std::uint32_t s = 1; s <= 2; ++s) best = std::max(best, q_discrepancy(g, s).normalized());
      if (lowest < 0 || best < lowest) lowest = best;
    }
    MESSAGE("n = " << n << ": min over graphs of max_s Q_s/n^(r+s) = " << lowest.get_d());
    CHECK(lowest > 0);
  }
}

TEST_CASE("heavy set examples") {
  CHECK(heavy_disjoint_sets(MultilinearPoly(6), {{1, 2}, {3, 4}}, 1, 0).t() == 0);

  auto k22 = lambda_of(construct_split(4, VertexSet{1, 2}, 2));
  auto heavy = heavy_disjoint_sets(k22, {{3, 1}, {4, 2}}, 2, make_rational(1, 4));
  REQUIRE(heavy.t() == 1);
  CHECK(heavy.sets.front() == VertexSet{1, 2});
  CHECK(heavy.values.front() == make_rational(1, 2));
  CHECK(heavy.min_value == make_rational(1, 2));

  MultilinearPoly far(8);
  far.add_term({7, 8}, 1);
  CHECK(heavy_disjoint_sets(far, {{1, 2}, {3, 4}}, 1, make_rational(1, 100)).t() == 0);

  CHECK_THROWS_AS(heavy_disjoint_sets(k22, {{3, 1}, {4, 2}}, 3, 0), InputError);
  CHECK_THROWS_AS(heavy_disjoint_sets(k22, {{3, 1}, {4, 2}}, 0, 0), InputError);
}

TEST_CASE("heavy sets are disjoint blocks above the threshold") {
  Rng rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    auto lambda = lambda_of(random_hypergraph(12, 2, 1, 2, rng.next()));
    PairSequence pairs;
    auto seq = rng.distinct_sequence(12, 12);
    for (std::size_t i = 0; i < seq.size(); i += 2) pairs.emplace_back(seq[i], seq[i + 1]);
    const Rational threshold = make_rational(1, 8);
    for (std::uint32_t s = 1; s <= 3; ++s) {
      auto heavy = heavy_disjoint_sets(lambda, pairs, s, threshold);
      CHECK(heavy.t() <= 6 / s);
      std::vector<Vertex> used;
      for (std::size_t j = 0; j < heavy.t(); ++j) {
        CHECK(heavy.sets[j].size() == s);
        CHECK(heavy.values[j] >= threshold);
        CHECK(heavy.values[j] == abs_rat(coefficient_A(lambda, pairs, heavy.sets[j])));
        CHECK(heavy.min_value <= heavy.values[j]);
        used.insert(used.end(), heavy.sets[j].begin(), heavy.sets[j].end());
      }
      std::sort(used.begin(), used.end());
      CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
    }
  }
}

TEST_CASE("disjoint tuples hit a large family often") {
  // family: tuples whose first entry lies in the first 60% of the vertices
  const std::uint32_t vertices = 200;
  const double gamma = 0.6;
  auto family = [&](std::span<const Vertex> tuple) { return tuple[0] <= static_cast<Vertex>(gamma * vertices); };
  for (std::uint32_t f : {1U, 2U}) {
    const double shortfall = disjoint_tuple_shortfall(vertices, f, 50, family, gamma * 50 / 2, 500, 31 + f);
    MESSAGE("f = " << f << ": shortfall rate " << shortfall);
    CHECK(shortfall <= 0.2);
  }
  CHECK_THROWS_AS(disjoint_tuple_shortfall(10, 3, 4, family, 1, 5, 1), InputError);
}
