#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/rng.hpp"

using namespace edgestat;

namespace {

MultilinearPoly poly(std::uint32_t n, std::initializer_list<std::pair<Monomial, Rational>> terms) {
  MultilinearPoly p(n);
  for (const auto& [w, c] : terms) p.add_term(w, c);
  return p;
}

MultilinearPoly random_poly(Rng& rng, std::uint32_t n, unsigned terms, unsigned max_deg) {
  MultilinearPoly p(n);
  for (unsigned i = 0; i < terms; ++i) {
    const auto deg = static_cast<std::uint32_t>(rng.below(max_deg + 1));
    auto vars = rng.k_subset(n, deg);
    const auto num = static_cast<std::int64_t>(rng.below(9)) - 4;
    const auto den = static_cast<std::int64_t>(rng.below(3)) + 1;
    p.add_term(Monomial(vars.begin(), vars.end()), make_rational(num, den));
  }
  return p;
}

// Product without any reduction; only valid when no variable repeats.
Rational eval_product(const MultilinearPoly& a, const MultilinearPoly& b, const std::vector<Rational>& x) {
  return evaluate(a, x) * evaluate(b, x);
}

}  // namespace

TEST_CASE("lambda_of on small graphs") {
  auto edge = lambda_of(Hypergraph::from_edges(2, 2, {{1, 2}}));
  CHECK(edge == poly(2, {{{1, 2}, 1}}));
  auto k3 = lambda_of(Hypergraph::complete(3, 2));
  CHECK(k3 == poly(3, {{{1, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 1}}));
  CHECK(k3.degree() == 2);
  CHECK(lambda_of(Hypergraph::empty(5, 2)).is_zero());
  CHECK(lambda_of(Hypergraph::empty(5, 2)).degree() == 0);
}

TEST_CASE("add_term keeps no zeros and rejects bad ids") {
  MultilinearPoly p(3);
  p.add_term({2, 1}, 3);
  p.add_term({1, 2}, -3);
  CHECK(p.is_zero());
  CHECK_THROWS_AS(p.add_term({4}, 1), InputError);
  CHECK_THROWS_AS(p.add_term({1, 1}, 1), InputError);
}

TEST_CASE("evaluate examples") {
  auto k3 = lambda_of(Hypergraph::complete(3, 2));
  std::vector<Rational> x{1, 1, 0};
  CHECK(evaluate(k3, x) == 1);
  std::vector<Rational> y{-1, -1};
  CHECK(evaluate(poly(2, {{{1, 2}, 1}}), y) == 1);
  CHECK(evaluate(MultilinearPoly(2), y) == 0);
  std::vector<Rational> short_x{1};
  CHECK_THROWS_AS(evaluate(k3, short_x), InputError);
  CHECK(evaluate_indicator(k3, VertexSet{1, 3}) == 1);
}

TEST_CASE("threshold hypergraph examples and monotonicity") {
  auto p = poly(4, {{{1, 2}, 3}, {{3, 4}, 1}, {{1}, 5}});
  CHECK(threshold_hypergraph(p, 2, 2).edge_list() == std::vector<Edge>{{1, 2}});
  CHECK(threshold_hypergraph(p, 0, 2).edge_list() == std::vector<Edge>{{1, 2}, {3, 4}});
  CHECK(threshold_hypergraph(p, 4, 1).edge_list() == std::vector<Edge>{{1}});
  CHECK_FALSE(threshold_constant_nonempty(p, 0));
  CHECK(threshold_constant_nonempty(poly(1, {{{}, -2}}), 1));

  Rng rng(71);
  for (int rep = 0; rep < 50; ++rep) {
    auto q = random_poly(rng, 6, 15, 3);
    for (std::uint32_t d = 1; d <= 3; ++d) {
      for (int a = 0; a < 4; ++a) {
        auto lo = threshold_hypergraph(q, a, d).edge_list();
        auto hi = threshold_hypergraph(q, make_rational(2 * a + 1, 2), d).edge_list();
        for (const auto& e : hi) CHECK(std::find(lo.begin(), lo.end(), e) != lo.end());
      }
    }
  }
}

TEST_CASE("restrict examples") {
  auto p = poly(3, {{{1, 2}, 1}, {{2, 3}, 1}});
  CHECK(restrict(p, {{1, 1}}) == poly(3, {{{2}, 1}, {{2, 3}, 1}}));
  CHECK(restrict(p, {{1, -1}}) == poly(3, {{{2}, -1}, {{2, 3}, 1}}));
  CHECK(restrict(poly(2, {{{1, 2}, 1}}), {{1, 0}}).is_zero());
  CHECK_THROWS_AS(restrict(p, {{4, 1}}), InputError);
}

TEST_CASE("restrict commutes with evaluate") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    auto p = random_poly(rng, 6, 10, 4);
    std::map<Vertex, Rational> sigma;
    std::vector<Rational> x(6), merged(6);
    for (Vertex v = 1; v <= 6; ++v) {
      const Rational value = make_rational(static_cast<std::int64_t>(rng.below(7)) - 3,
                                           static_cast<std::int64_t>(rng.below(4)) + 1);
      x[v - 1] = make_rational(static_cast<std::int64_t>(rng.below(5)) - 2, 3);
      merged[v - 1] = x[v - 1];
      if (rng.bernoulli(1, 2)) {
        sigma[v] = value;
        merged[v - 1] = value;
      }
    }
    CHECK(evaluate(restrict(p, sigma), x) == evaluate(p, merged));
  }
}

TEST_CASE("sign-reduced product agrees on the cube") {
  Rng rng(9);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = random_poly(rng, 5, 6, 3);
    auto b = random_poly(rng, 5, 6, 3);
    auto prod = multiply_sign_reduced(a, b);
    for (unsigned mask = 0; mask < 32; ++mask) {
      std::vector<Rational> x(5);
      for (unsigned i = 0; i < 5; ++i) x[i] = (mask >> i) & 1U ? -1 : 1;
      CHECK(evaluate(prod, x) == eval_product(a, b, x));
    }
  }
  for (std::uint32_t m = 1; m <= 6; ++m) {
    for (std::uint32_t d = 0; d <= 3; ++d) {
      auto p = multilinearized_power(m, d);
      for (unsigned mask = 0; mask < (1U << m); ++mask) {
        std::vector<Rational> x(m);
        Rational sum = 0;
        for (unsigned i = 0; i < m; ++i) {
          x[i] = (mask >> i) & 1U ? -1 : 1;
          sum += x[i];
        }
        CHECK(evaluate(p, x) == pow_rat(sum, d));
      }
    }
  }
}

TEST_CASE("exhaustive distribution examples") {
  auto lin = exhaustive_distribution(linear_form(4), Rademacher{});
  auto [prob, value] = lin.sup_point();
  CHECK(prob == make_rational(6, 16));
  CHECK(value == 0);
  CHECK(lin.total_mass() == 1);

  const Rational p = make_rational(2, 7);
  auto single = exhaustive_distribution(poly(1, {{{1}, 1}}), Bernoulli{p});
  CHECK(single.atoms == std::map<Rational, Rational>{{0, 1 - p}, {1, p}});

  auto prod = exhaustive_distribution(poly(2, {{{1, 2}, 1}}), Rademacher{});
  CHECK(prod.atoms == std::map<Rational, Rational>{{-1, make_rational(1, 2)}, {1, make_rational(1, 2)}});

  auto zero = exhaustive_distribution(MultilinearPoly(3), Rademacher{});
  CHECK(zero.atoms == std::map<Rational, Rational>{{0, 1}});

  CHECK(lin.probability_within(0, 2) == make_rational(14, 16));

  MultilinearPoly wide(25);
  for (Vertex v = 1; v <= 25; ++v) wide.add_term({v}, 1);
  CHECK_THROWS_AS(exhaustive_distribution(wide, Rademacher{}), InputError);
}

TEST_CASE("parallel distribution matches the reference") {
  Rng rng(13);
  for (int rep = 0; rep < 60; ++rep) {
    auto p = random_poly(rng, 10, 12, 3);
    CHECK(exhaustive_distribution(p, Rademacher{}) == exhaustive_distribution_reference(p, Rademacher{}));
    const Bernoulli law{make_rational(static_cast<std::int64_t>(rng.below(5)) + 1, 7)};
    CHECK(exhaustive_distribution(p, law) == exhaustive_distribution_reference(p, law));
  }
  // huge coefficients force the rational fallback
  MultilinearPoly big(3);
  big.add_term({1}, Rational(pow_int(Integer(10), 30)));
  big.add_term({2, 3}, make_rational(1, 3));
  CHECK(exhaustive_distribution(big, Rademacher{}) == exhaustive_distribution_reference(big, Rademacher{}));
}

TEST_CASE("linear forms: sup point is the central binomial") {
  for (std::uint32_t m = 1; m <= 20; ++m) {
    auto dist = exhaustive_distribution(linear_form(m), Rademacher{});
    Rational expected(binomial(m, m / 2), pow_int(Integer(2), m));
    expected.canonicalize();
    CHECK(dist.sup_point().first == expected);
    CHECK(dist.sup_point().second == (m % 2 == 0 ? 0 : -1));
  }
}

TEST_CASE("degenerate product is zero half the time") {
  for (std::uint32_t k = 3; k <= 14; ++k) {
    MultilinearPoly left(k), right(k);
    left.add_term({1}, 1);
    left.add_term({2}, 1);
    for (Vertex v = 3; v <= k; ++v) right.add_term({v}, 1);
    auto p = multiply_sign_reduced(left, right);
    CHECK(p.term_count() == 2 * k - 4);
    CHECK(exhaustive_distribution(p, Rademacher{}).probability_of(0) >= make_rational(1, 2));
  }
}

TEST_CASE("multilinearized powers stay anti-concentrated") {
  // sup point probability times sqrt(m) stays within fixed constants
  for (std::uint32_t d : {2U, 3U}) {
    for (std::uint32_t m = 4; m <= 20; ++m) {
      const double sup = exhaustive_distribution(multilinearized_power(m, d), Rademacher{}).sup_point().first.get_d();
      const double scaled = sup * std::sqrt(static_cast<double>(m));
      CHECK(scaled > 0.3);
      CHECK(scaled < 3.0);
    }
  }
}

TEST_CASE(".mlp round trip and errors") {
  auto p = poly(4, {{{}, make_rational(-1, 2)}, {{1, 3}, 3}, {{2}, make_rational(5, 4)}});
  CHECK(parse_polynomial(format_polynomial(p)) == p);
  CHECK(parse_polynomial("# comment\n\n3\n1/2 : 1 2\n-3 :\n") == poly(3, {{{1, 2}, make_rational(1, 2)}, {{}, -3}}));

  auto message = [](std::string_view text) {
    try {
      parse_polynomial(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("3\n1 : 1 4\n").find("line 2") != std::string::npos);
  CHECK(message("3\n1 : 1\n2 : 1\n").find("line 3") != std::string::npos);
  CHECK(message("3\n1 : 2 2\n").find("repeated") != std::string::npos);
  CHECK(message("x\n").find("line 1") != std::string::npos);
  CHECK(message("3\n1/0 : 1\n").find("line 2") != std::string::npos);
  CHECK(message("3\n1 2\n").find("line 2") != std::string::npos);
}
