#include <doctest.h>

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "edgestat/anticoncentration.hpp"
#include "edgestat/combinatorics.hpp"
#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/rng.hpp"

using namespace edgestat;

namespace {

using Law = std::map<Rational, Rational>;

Rational tv_distance(const Law& a, const Law& b) {
  Law diff = a;
  for (const auto& [v, p] : b) diff[v] -= p;
  Rational sum = 0;
  for (const auto& [v, d] : diff) sum += abs_rat(d);
  return sum / 2;
}

// Law of F restricted to S = {1..s} under a uniform k-subset of [n], by enumeration.
Law slice_law(const std::vector<Rational>& table, std::uint32_t s, std::uint32_t n, std::uint32_t k) {
  Law law;
  const Rational weight = Rational(1) / Rational(binomial(n, k));
  auto comb = first_combination(k);
  do {
    std::uint64_t mask = 0;
    for (auto v : comb) {
      if (v <= s) mask |= 1ULL << (v - 1);
    }
    law[table[mask]] += weight;
  } while (next_combination(comb, 1, n));
  return law;
}

Law product_law(const std::vector<Rational>& table, std::uint32_t s, const Rational& p) {
  Law law;
  for (std::uint64_t mask = 0; mask < (1ULL << s); ++mask) {
    const auto ones = static_cast<unsigned long>(std::popcount(mask));
    law[table[mask]] += pow_rat(p, ones) * pow_rat(1 - p, s - ones);
  }
  return law;
}

SliceMoments brute_moments(const MultilinearPoly& p, std::uint32_t n, std::uint32_t k) {
  Rational sum = 0, sq = 0;
  const Rational count(binomial(n, k));
  auto comb = first_combination(k);
  do {
    const Rational value = evaluate_indicator(p, VertexSet(std::vector<Vertex>(comb.begin(), comb.end())));
    sum += value;
    sq += value * value;
  } while (next_combination(comb, 1, n));
  const Rational mean = sum / count;
  return {mean, sq / count - mean * mean};
}

}  // namespace

TEST_CASE("hypergeometric vs binomial examples") {
  for (std::uint32_t n = 2; n <= 12; ++n) {
    for (std::uint32_t k = 0; k <= n; ++k) CHECK(hypergeom_binom_tv(n, k, 1).tv == 0);
  }
  auto a = hypergeom_binom_tv(8, 4, 4);
  CHECK(a.tv == make_rational(39, 280));
  CHECK(a.bound == make_rational(3, 7));
  CHECK(a.precondition_met);
  CHECK(a.ok());
  auto b = hypergeom_binom_tv(4, 2, 2);
  CHECK(b.tv == make_rational(1, 6));
  CHECK_FALSE(b.precondition_met);
  CHECK_THROWS_AS(hypergeom_binom_tv(1, 1, 1), InputError);
  CHECK_THROWS_AS(hypergeom_binom_tv(5, 2, 6), InputError);
}

TEST_CASE("hypergeometric tv matches a direct pmf computation") {
  for (std::uint32_t n = 2; n <= 14; ++n) {
    for (std::uint32_t k = 0; k <= n; ++k) {
      for (std::uint32_t t = 0; t <= n; ++t) {
        Law hyp, bin;
        const Rational p = make_rational(k, n);
        for (std::uint32_t j = 0; j <= t; ++j) {
          Rational h(binomial(k, j) * binomial(n - k, t - j), binomial(n, t));
          h.canonicalize();
          if (h != 0) hyp[j] = h;
          const Rational q = Rational(binomial(t, j)) * pow_rat(p, j) * pow_rat(1 - p, t - j);
          if (q != 0) bin[j] = q;
        }
        CHECK(hypergeom_binom_tv(n, k, t).tv == tv_distance(hyp, bin));
      }
    }
  }
}

TEST_CASE("Ehm sweep respects the bound") {
  auto rows = ehm_sweep(30);
  CHECK_FALSE(rows.empty());
  std::size_t failures = 0;
  for (const auto& row : rows) {
    CHECK(row.report.precondition_met);
    if (!(row.report.tv <= row.report.bound)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("point-one maximum of the binomial") {
  CHECK(max_binom_point_one(1) == 1);
  CHECK(max_binom_point_one_argmax(1) == 1);
  CHECK(max_binom_point_one(make_rational(1, 2)) == make_rational(1, 2));
  const double v = max_binom_point_one(make_rational(1, 100)).get_d();
  CHECK(v > std::exp(-1.0));
  CHECK(v < std::exp(-1.0) + 0.01);
  CHECK_THROWS_AS(max_binom_point_one(0), InputError);
  CHECK_THROWS_AS(max_binom_point_one(make_rational(3, 2)), InputError);

  // scan n p (1-p)^(n-1) until it has decreased for a while
  for (std::int64_t den = 1; den <= 60; ++den) {
    for (std::int64_t num = 1; num <= den; num += 1 + den / 7) {
      const Rational p = make_rational(num, den);
      Rational best = 0, term = p;
      for (std::int64_t n = 1; n <= 4 * den + 4; ++n) {
        if (term > best) best = term;
        term = term * (1 - p) * Rational(n + 1) / Rational(n);
      }
      CHECK(max_binom_point_one(p) == best);
    }
  }
}

TEST_CASE("poisson check examples") {
  MultilinearPoly x1(1);
  x1.add_term({1}, 1);
  auto a = poisson_check(x1, make_rational(1, 100), 1, 0);
  CHECK(a.probability == make_rational(1, 100));
  CHECK(a.ok());

  auto five = poisson_check(linear_form(5), make_rational(1, 10), 1, 0);
  CHECK(five.probability == 5 * make_rational(1, 10) * pow_rat(make_rational(9, 10), 4));
  CHECK(five.probability <= max_binom_point_one(make_rational(1, 10)));
  CHECK(five.active == 5);

  MultilinearPoly f(2);
  f.add_term({1}, 2);
  f.add_term({2}, 1);
  f.add_term({1, 2}, 1);
  auto c = poisson_check(f, make_rational(1, 10), 2, 0, 0.05);
  CHECK(c.probability == make_rational(9, 100));
  CHECK(c.precondition_met);
  CHECK(c.ok());
  REQUIRE(c.below_e_gamma.has_value());
  CHECK(*c.below_e_gamma);

  // l <= 3^s t: reported, not an error
  auto loose = poisson_check(f, make_rational(1, 10), 2, 1);
  CHECK_FALSE(loose.precondition_met);
  CHECK(loose.ok());

  MultilinearPoly constant(2);
  constant.add_term({}, 1);
  constant.add_term({1}, 1);
  CHECK_THROWS_AS(poisson_check(constant, make_rational(1, 10), 1, 0), InputError);
  MultilinearPoly negative(2);
  negative.add_term({1}, -1);
  CHECK_THROWS_AS(poisson_check(negative, make_rational(1, 10), 1, 0), InputError);
  CHECK_THROWS_AS(poisson_check(linear_form(21), make_rational(1, 10), 1, 0), InputError);
}

TEST_CASE("junta tv examples") {
  auto one = junta_tv({0, 1, 0, 1}, 6, 2);
  CHECK(one.tv == 0);
  auto product = junta_tv({0, 0, 0, 1}, 4, 2);
  CHECK(product.tv == make_rational(1, 12));
  CHECK(product.bound == 1);
  CHECK(junta_tv({3}, 5, 2).tv == 0);
  CHECK(junta_tv({2, 2, 2, 2}, 5, 2).tv == 0);
  CHECK_THROWS_AS(junta_tv({0, 1, 1}, 6, 2), InputError);
  CHECK_THROWS_AS(junta_tv({0, 1}, 6, 4), InputError);
  CHECK_THROWS_AS(junta_tv({0, 1}, 6, 0), InputError);
}

TEST_CASE("junta tv against enumeration and its bound") {
  for (std::uint32_t s = 0; s <= 2; ++s) {
    const std::uint64_t size = 1ULL << s;
    // every 0/1/2-valued table on s coordinates
    std::uint64_t tables = 1;
    for (std::uint64_t i = 0; i < size; ++i) tables *= 3;
    for (std::uint64_t code = 0; code < tables; ++code) {
      std::vector<Rational> table(size);
      std::uint64_t c = code;
      for (auto& v : table) {
        v = static_cast<long>(c % 3);
        c /= 3;
      }
      for (std::uint32_t n = std::max<std::uint32_t>(2, s); n <= 10; ++n) {
        for (std::uint32_t k = 1; 2 * k <= n; ++k) {
          auto rep = junta_tv(table, n, k);
          CHECK(rep.tv == tv_distance(slice_law(table, s, n, k), product_law(table, s, make_rational(k, n))));
          CHECK(rep.tv <= rep.bound);
        }
      }
    }
  }
}

TEST_CASE("slice moment examples") {
  for (std::uint32_t n = 2; n <= 9; ++n) {
    for (std::uint32_t k = 0; k <= n; ++k) CHECK(slice_moments(linear_form(n), n, k).variance == 0);
  }
  CHECK(slice_covariance(4, 2, VertexSet{1}, VertexSet{2}) == make_rational(-1, 12));
  MultilinearPoly x12(4);
  x12.add_term({1, 2}, 1);
  CHECK(slice_moments(x12, 4, 2).variance == make_rational(5, 36));
  CHECK(slice_moments(x12, 4, 2).mean == make_rational(1, 6));
  CHECK(slice_monomial_mean(10, 4, 3) == make_rational(4 * 3 * 2, 10 * 9 * 8));
  CHECK(slice_monomial_mean(10, 2, 3) == 0);
}

TEST_CASE("slice moments agree three ways") {
  Rng rng(8);
  for (int rep = 0; rep < 60; ++rep) {
    const auto n = static_cast<std::uint32_t>(3 + rng.below(7));
    const auto k = static_cast<std::uint32_t>(rng.below(n + 1));
    MultilinearPoly p(n);
    for (int t = 0; t < 10; ++t) {
      auto vars = rng.k_subset(n, static_cast<std::uint32_t>(rng.below(4)));
      p.add_term(Monomial(vars.begin(), vars.end()),
                 make_rational(static_cast<std::int64_t>(rng.below(9)) - 4, static_cast<std::int64_t>(rng.below(3)) + 1));
    }
    const auto brute = brute_moments(p, n, k);
    CHECK(slice_moments(p, n, k) == brute);
    CHECK(slice_moments_reference(p, n, k) == brute);
  }
}

TEST_CASE("covariance of disjoint monomials is nonpositive") {
  for (std::uint32_t n = 2; n <= 10; ++n) {
    for (std::uint32_t k = 0; k <= n; ++k) {
      for (std::uint32_t w = 1; w < n; ++w) {
        for (std::uint32_t t = 1; w + t <= n; ++t) {
          const auto cov = slice_covariance(n, k, VertexSet::interval(1, w), VertexSet::interval(w + 1, w + t));
          CHECK(cov <= 0);
          CHECK(cov <= 1);
        }
      }
    }
  }
}

TEST_CASE("slice variance grows like n^(2r-1)") {
  // fit C on n <= 30, then check the inequality and the log-log slope up to 60
  for (std::uint32_t r : {2U, 3U}) {
    const unsigned exponent = 2 * r - 1;
    auto variance = [&](std::uint32_t n, int kind) {
      const auto g = kind == 0 ? construct_split(n, VertexSet::interval(1, n / 4), r)
                               : random_hypergraph(n, r, 1, 2, stream_seed(n, r));
      return slice_moments(lambda_of(g), n, n / 2).variance.get_d();
    };
    for (int kind : {0, 1}) {
      double c = 0;
      for (std::uint32_t n = 8; n <= 30; n += 2) {
        c = std::max(c, variance(n, kind) / std::pow(n, exponent));
      }
      std::vector<double> xs, ys;
      for (std::uint32_t n = 8; n <= 60; n += 4) {
        const double v = variance(n, kind);
        CHECK(v <= c * std::pow(n, exponent) * (1 + 1e-12));
        xs.push_back(std::log(n));
        ys.push_back(std::log(v));
      }
      // least-squares slope of the upper half of the range
      const std::size_t from = xs.size() / 2;
      double mx = 0, my = 0;
      for (std::size_t i = from; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
      }
      const double cnt = static_cast<double>(xs.size() - from);
      mx /= cnt;
      my /= cnt;
      double sxy = 0, sxx = 0;
      for (std::size_t i = from; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
      }
      const double slope = sxy / sxx;
      MESSAGE("r = " << r << std::string(kind == 0 ? " split" : " random") << ": C = " << c << ", slope = " << slope);
      CHECK(slope <= exponent + 0.1);
    }
  }
}
