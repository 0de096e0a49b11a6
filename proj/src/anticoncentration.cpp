#include "edgestat/anticoncentration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace edgestat {

TVReport hypergeom_binom_tv(std::uint32_t n, std::uint32_t k, std::uint32_t t) {
  if (n < 2) throw InputError("hypergeom_binom_tv: n must be at least 2");
  if (k > n || t > n) throw InputError("hypergeom_binom_tv: need k <= n and t <= n");
  const Rational p = make_rational(k, n);
  const Rational q = 1 - p;
  const Integer draws = binomial(n, t);
  Rational l1 = 0;
  for (std::uint32_t j = 0; j <= t; ++j) {
    Rational hyp(binomial(k, j) * binomial(n - k, static_cast<std::int64_t>(t) - j), draws);
    hyp.canonicalize();
    const Rational bin = binomial(t, j) * pow_rat(p, j) * pow_rat(q, t - j);
    l1 += abs_rat(hyp - bin);
  }
  TVReport report;
  report.tv = l1 / 2;
  report.bound = make_rational(static_cast<std::int64_t>(t) - 1, n - 1);
  report.precondition_met = p * q * t >= 1;
  return report;
}

std::vector<EhmRow> ehm_sweep(std::uint32_t n_max) {
  std::vector<std::vector<EhmRow>> per_n(n_max + 1);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ni = 2; ni <= static_cast<std::int64_t>(n_max); ++ni) {
    const auto n = static_cast<std::uint32_t>(ni);
    for (std::uint32_t k = 1; 2 * k <= n; ++k) {
      const Rational p = make_rational(k, n);
      const Rational spread = p * (1 - p);
      for (std::uint32_t t = 1; t <= n; ++t) {
        if (spread * t < 1) continue;
        per_n[n].push_back(EhmRow{n, k, t, hypergeom_binom_tv(n, k, t)});
      }
    }
  }
  std::vector<EhmRow> rows;
  for (auto& block : per_n) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

std::uint64_t max_binom_point_one_argmax(const Rational& p) {
  if (p <= 0 || p > 1) throw InputError("max_binom_point_one: p must lie in (0, 1]");
  // n p (1-p)^(n-1) grows from n to n+1 exactly while n <= (1-p)/p.
  const Rational ratio = (1 - p) / p;
  const Integer floor_ratio = ratio.get_num() / ratio.get_den();
  const Integer argmax = floor_ratio + 1;
  if (argmax > static_cast<unsigned long>(kMaxPointOneArgmax)) {
    throw CapExceeded("max_binom_point_one: maximizer " + argmax.get_str() + " exceeds " +
                      std::to_string(kMaxPointOneArgmax));
  }
  return argmax.get_ui();
}

Rational max_binom_point_one(const Rational& p) {
  const std::uint64_t n = max_binom_point_one_argmax(p);
  return Rational(static_cast<unsigned long>(n)) * p * pow_rat(1 - p, n - 1);
}

PoissonReport poisson_check(const MultilinearPoly& f, const Rational& p, const Rational& l, const Rational& t,
                            std::optional<double> gamma) {
  for (const auto& [w, c] : f.coeffs()) {
    if (w.empty()) throw InputError("poisson_check: F has a nonzero constant term");
    if (c < 0) throw InputError("poisson_check: F has a negative coefficient");
  }
  if (t < 0) throw InputError("poisson_check: t must be nonnegative");
  const auto active = f.active_variables();
  if (active.size() > kMaxPoissonVariables) {
    throw InputError("poisson_check: " + std::to_string(active.size()) + " active variables exceed " +
                     std::to_string(kMaxPoissonVariables));
  }
  PoissonReport report;
  report.sharp_bound = max_binom_point_one(p);
  report.active = static_cast<std::uint32_t>(active.size());
  report.precondition_met = l > pow_int(3, report.active) * t;
  report.probability = exhaustive_distribution(f, Bernoulli{p}).probability_within(l, t);
  if (gamma) report.below_e_gamma = report.probability.get_d() <= std::exp(-1.0) + *gamma;
  return report;
}

TVReport junta_tv(const std::vector<Rational>& table, std::uint32_t n, std::uint32_t k) {
  if (table.empty() || !std::has_single_bit(table.size())) {
    throw InputError("junta_tv: table size must be a power of two");
  }
  const auto s = static_cast<std::uint32_t>(std::countr_zero(table.size()));
  if (s > kMaxJuntaCoordinates) throw InputError("junta_tv: more than 14 coordinates");
  if (n < 2 || s > n) throw InputError("junta_tv: need n >= 2 and s <= n");
  if (k < 1 || 2 * k > n) throw InputError("junta_tv: need 1 <= k <= n/2");

  const Rational p = make_rational(k, n);
  std::vector<Rational> slice_weight(s + 1), product_weight(s + 1);
  const Integer ordered = falling_factorial(n, s);
  for (std::uint32_t j = 0; j <= s; ++j) {
    slice_weight[j] = Rational(falling_factorial(k, j) * falling_factorial(n - k, s - j), ordered);
    slice_weight[j].canonicalize();
    product_weight[j] = pow_rat(p, j) * pow_rat(1 - p, s - j);
  }
  std::map<Rational, Rational> gap;  // value -> slice mass - product mass
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    const auto j = static_cast<std::uint32_t>(std::popcount(mask));
    gap[table[mask]] += slice_weight[j] - product_weight[j];
  }
  Rational l1 = 0;
  for (const auto& [value, g] : gap) l1 += abs_rat(g);

  TVReport report;
  report.tv = l1 / 2;
  const Rational spread = std::max(Rational(s), Rational(make_rational(2 * static_cast<std::int64_t>(n), k)));
  report.bound = (spread - 1) / (n - 1);
  report.precondition_met = true;
  return report;
}

Rational slice_monomial_mean(std::uint32_t n, std::uint32_t k, std::uint32_t w) {
  if (w > n) return 0;
  Rational out(falling_factorial(k, w), falling_factorial(n, w));
  out.canonicalize();
  return out;
}

Rational slice_covariance(std::uint32_t n, std::uint32_t k, const VertexSet& w, const VertexSet& t) {
  if (k > n) throw InputError("slice_covariance: k exceeds n");
  w.require_within(n, "slice_covariance");
  t.require_within(n, "slice_covariance");
  std::vector<Vertex> both;
  std::set_union(w.begin(), w.end(), t.begin(), t.end(), std::back_inserter(both));
  const auto sz = [](std::size_t x) { return static_cast<std::uint32_t>(x); };
  return slice_monomial_mean(n, k, sz(both.size())) -
         slice_monomial_mean(n, k, sz(w.size())) * slice_monomial_mean(n, k, sz(t.size()));
}

namespace {

void check_moment_args(const MultilinearPoly& lambda, std::uint32_t n, std::uint32_t k) {
  if (k > n) throw InputError("slice_moments: k exceeds n");
  const auto active = lambda.active_variables();
  if (!active.empty() && active.back() > n) {
    throw InputError("slice_moments: variable " + std::to_string(active.back()) + " outside [1, " +
                     std::to_string(n) + "]");
  }
}

}  // namespace

SliceMoments slice_moments(const MultilinearPoly& lambda, std::uint32_t n, std::uint32_t k) {
  check_moment_args(lambda, n, k);
  const unsigned d = lambda.degree();
  std::vector<Rational> mu(2 * d + 1);
  for (unsigned w = 0; w <= 2 * d; ++w) mu[w] = slice_monomial_mean(n, k, w);

  // below[A][a] = sum of c_W over monomials W ⊇ A of size a.
  std::map<Monomial, std::vector<Rational>> below;
  for (const auto& [w, c] : lambda.coeffs()) {
    const std::size_t size = w.size();
    for (std::uint64_t mask = 0; mask < (1ULL << size); ++mask) {
      Monomial a;
      for (std::size_t i = 0; i < size; ++i) {
        if ((mask >> i) & 1U) a.push_back(w[i]);
      }
      auto& slot = below[a];
      if (slot.empty()) slot.assign(d + 1, Rational(0));
      slot[size] += c;
    }
  }

  SliceMoments out;
  out.mean = 0;
  if (auto it = below.find(Monomial{}); it != below.end()) {
    for (unsigned a = 0; a <= d; ++a) out.mean += it->second[a] * mu[a];
  }

  // shared[a][b][j] = sum over pairs (W, T) of sizes a, b of c_W c_T C(|W ∩ T|, j)
  std::vector<std::vector<std::vector<Rational>>> shared(
      d + 1, std::vector<std::vector<Rational>>(d + 1, std::vector<Rational>(d + 1, Rational(0))));
  for (const auto& [a_set, sums] : below) {
    const std::size_t j = a_set.size();
    for (unsigned a = static_cast<unsigned>(j); a <= d; ++a) {
      if (sums[a] == 0) continue;
      for (unsigned b = static_cast<unsigned>(j); b <= d; ++b) {
        if (sums[b] != 0) shared[a][b][j] += sums[a] * sums[b];
      }
    }
  }
  Rational second = 0;
  for (unsigned a = 0; a <= d; ++a) {
    for (unsigned b = 0; b <= d; ++b) {
      // binomial inversion: exact overlap i from the "at least" sums
      for (unsigned i = 0; i <= std::min(a, b); ++i) {
        Rational exact = 0;
        for (unsigned j = i; j <= std::min(a, b); ++j) {
          const Rational term = binomial(j, i) * shared[a][b][j];
          if ((j - i) % 2) {
            exact -= term;
          } else {
            exact += term;
          }
        }
        if (exact != 0) second += exact * mu[a + b - i];
      }
    }
  }
  out.variance = second - out.mean * out.mean;
  return out;
}

SliceMoments slice_moments_reference(const MultilinearPoly& lambda, std::uint32_t n, std::uint32_t k) {
  check_moment_args(lambda, n, k);
  SliceMoments out;
  out.mean = 0;
  out.variance = 0;
  for (const auto& [w, c] : lambda.coeffs()) {
    out.mean += c * slice_monomial_mean(n, k, static_cast<std::uint32_t>(w.size()));
  }
  for (const auto& [w, cw] : lambda.coeffs()) {
    const VertexSet ws(w);
    for (const auto& [t, ct] : lambda.coeffs()) {
      out.variance += cw * ct * slice_covariance(n, k, ws, VertexSet(t));
    }
  }
  return out;
}

}  // namespace edgestat
