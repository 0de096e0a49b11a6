#include "edgestat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "edgestat/anticoncentration.hpp"
#include "edgestat/combinatorics.hpp"
#include "edgestat/cover.hpp"
#include "edgestat/discrepancy.hpp"
#include "edgestat/edge_statistics.hpp"
#include "edgestat/rng.hpp"
#include "edgestat/slice_coupling.hpp"

namespace edgestat {

namespace {

std::uint64_t criterion_seed(int id) { return stream_seed(kAcceptanceSeed, static_cast<std::uint64_t>(id)); }

struct CouplingInstance {
  Hypergraph g;
  MultilinearPoly lambda;
  PairSequence pairs;
};

// 200 seeded (G, v) with r <= 3, n <= 12, k <= 5.
std::vector<CouplingInstance> coupling_instances() {
  std::vector<CouplingInstance> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(stream_seed(criterion_seed(1), i));
    const auto r = static_cast<std::uint32_t>(1 + rng.below(3));
    const std::uint32_t lo = std::max<std::uint32_t>(r, 2);
    const auto n = static_cast<std::uint32_t>(lo + rng.below(12 - lo + 1));
    const auto k = static_cast<std::uint32_t>(1 + rng.below(std::min<std::uint32_t>(5, n / 2)));
    Hypergraph g = random_hypergraph(n, r, 1, 2, rng.next());
    MultilinearPoly lambda = lambda_of(g);
    auto pairs = sample_coupling(n, k, rng.next()).pairs;
    out.push_back(CouplingInstance{std::move(g), std::move(lambda), std::move(pairs)});
  }
  return out;
}

CriterionResult coupling_identity() {
  CriterionResult res{1, "coupling identity", false, "", 0, 10};
  std::size_t exact = 0, coefficients = 0;
  std::string first_failure;
  const auto instances = coupling_instances();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto report = identity_check(instances[i].lambda, instances[i].pairs);
    coefficients += report.table.size();
    if (report.exact()) {
      ++exact;
    } else if (first_failure.empty()) {
      first_failure = "; instance " + std::to_string(i) + " discrepancy " + to_fraction_string(report.max_discrepancy);
    }
  }
  res.passed = exact == instances.size();
  res.detail = std::to_string(exact) + "/" + std::to_string(instances.size()) +
               " instances with exact discrepancy 0 over all sign vectors (" + std::to_string(coefficients) +
               " nonzero coefficients)" + first_failure;
  return res;
}

CriterionResult ehm() {
  CriterionResult res{2, "hypergeometric vs binomial sweep", false, "", 0, 60};
  const auto rows = ehm_sweep(30);
  std::size_t bad = 0;
  Rational worst_ratio = 0;
  for (const auto& row : rows) {
    if (!row.report.ok()) ++bad;
    if (row.report.bound > 0) worst_ratio = std::max(worst_ratio, Rational(row.report.tv / row.report.bound));
  }
  const auto spot = hypergeom_binom_tv(8, 4, 4);
  const bool spot_ok = spot.tv == make_rational(39, 280) && spot.bound == make_rational(3, 7) && spot.precondition_met;
  res.passed = bad == 0 && spot_ok && !rows.empty();
  std::ostringstream os;
  os << rows.size() << " cells with the precondition, " << bad << " violations, max tv/bound "
     << worst_ratio.get_d() << "; (8,4,4): tv " << to_fraction_string(spot.tv) << ", bound "
     << to_fraction_string(spot.bound);
  res.detail = os.str();
  return res;
}

CriterionResult poisson_battery() {
  CriterionResult res{3, "point probability battery", false, "", 0, 60};
  const Rational p_small = make_rational(1, 50), p_large = make_rational(1, 20);
  std::size_t bad = 0, positive = 0, skipped = 0;
  Rational worst_ratio = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(stream_seed(criterion_seed(3), i));
    const auto vars = static_cast<std::uint32_t>(1 + rng.below(10));
    MultilinearPoly f(vars);
    const auto terms = 1 + rng.below(6);
    for (std::uint64_t j = 0; j < terms; ++j) {
      const auto size = static_cast<std::uint32_t>(1 + rng.below(std::min<std::uint32_t>(3, vars)));
      Monomial w = rng.k_subset(vars, size);
      const auto c = static_cast<std::int64_t>(1 + rng.below(3));
      if (f.coefficient(w) == 0) f.add_term(std::move(w), c);
    }
    const Rational& p = i % 2 == 0 ? p_small : p_large;
    const auto s = static_cast<std::uint32_t>(f.active_variables().size());
    const auto u = static_cast<std::int64_t>(rng.below(4));
    const Rational t = make_rational(u, 2) / pow_int(3, s);
    const Rational l = static_cast<long>(u / 2 + 1 + static_cast<std::int64_t>(rng.below(6)));
    const auto report = poisson_check(f, p, l, t);
    if (!report.precondition_met) {
      ++skipped;
      continue;
    }
    if (!report.ok()) ++bad;
    if (report.probability > 0) ++positive;
    worst_ratio = std::max(worst_ratio, Rational(report.probability / report.sharp_bound));
  }
  res.passed = bad == 0 && skipped == 0;
  std::ostringstream os;
  os << "500 polynomials, " << bad << " violations, " << positive << " with positive probability, "
     << skipped << " failing the level condition, max probability/bound " << worst_ratio.get_d();
  res.detail = os.str();
  return res;
}

CriterionResult covariance_signs() {
  CriterionResult res{4, "slice covariance signs", false, "", 0, 0};
  std::uint64_t pairs = 0, positive = 0, above_one = 0, nonzero_variance = 0;
  for (std::uint32_t n = 1; n <= 10; ++n) {
    std::vector<std::vector<Vertex>> small_sets;
    for (std::uint32_t size = 1; size <= std::min<std::uint32_t>(3, n); ++size) {
      auto comb = first_combination(size);
      do small_sets.push_back(comb);
      while (next_combination(comb, 1, n));
    }
    for (std::uint32_t k = 0; k <= n; ++k) {
      for (const auto& w : small_sets) {
        const VertexSet ws(w);
        for (const auto& t : small_sets) {
          bool disjoint = true;
          for (Vertex v : t) disjoint = disjoint && !ws.contains(v);
          if (!disjoint) continue;
          const Rational cov = slice_covariance(n, k, ws, VertexSet(t));
          ++pairs;
          if (cov > 0) ++positive;
          if (cov > 1) ++above_one;
        }
      }
      if (slice_moments(linear_form(n), n, k).variance != 0) ++nonzero_variance;
    }
  }
  res.passed = positive == 0 && above_one == 0 && nonzero_variance == 0;
  res.detail = std::to_string(pairs) + " disjoint pairs, " + std::to_string(positive) + " positive, " +
               std::to_string(above_one) + " above 1; x1+...+xn variance nonzero at " +
               std::to_string(nonzero_variance) + " of 65 (n,k)";
  return res;
}

CriterionResult lift_limit() {
  CriterionResult res{5, "lift construction limit", false, "", 0, 120};
  const std::uint64_t seed = criterion_seed(5);
  const auto lift = construct_lift(2000, 20, 1, 2, seed);
  const auto est = estimate_point(lift.graph, 20, lift.target_level.get_ui(), 100'000, stream_seed(seed, 1));
  const double limit = std::pow(19.0 / 20.0, 19);
  const double value = est.estimate.get_d();
  res.passed = std::abs(value - limit) <= 0.02 && value > std::exp(-1.0) && lift.target_level == 19;
  std::ostringstream os;
  os.precision(6);
  os << "|F| = " << lift.base.edge_count() << ", e(G) = " << lift.graph.edge_count() << ", level "
     << lift.target_level.get_str() << ": estimate " << value << " +/- " << est.half_width << " vs limit " << limit
     << " (tolerance 0.02), 1/e = " << std::exp(-1.0);
  res.detail = os.str();
  return res;
}

CriterionResult split_limit() {
  CriterionResult res{6, "split construction limit", false, "", 0, 120};
  const std::uint32_t n = 400, k = 8, r = 3;
  const auto g = construct_split(n, VertexSet::interval(1, n / 4), r);
  const Integer level = split_target_level(k, 2, r);
  // Every j with j C(k-j, r-1) equal to the level contributes its binomial limit mass.
  Rational limit = 0;
  std::string hits;
  for (std::uint32_t j = 0; j <= k; ++j) {
    if (split_target_level(k, j, r) != level) continue;
    limit += binomial(k, j) * pow_rat(make_rational(1, 4), j) * pow_rat(make_rational(3, 4), k - j);
    hits += (hits.empty() ? "" : ",") + std::to_string(j);
  }
  const auto est = estimate_point(g, k, level.get_ui(), 100'000, criterion_seed(6));
  const double value = est.estimate.get_d();
  res.passed = std::abs(value - limit.get_d()) <= 0.02;
  std::ostringstream os;
  os.precision(6);
  os << "e(G) = " << g.edge_count() << ", level " << level.get_str() << " (j in {" << hits << "}): estimate "
     << value << " +/- " << est.half_width << " vs limit " << to_fraction_string(limit) << " = " << limit.get_d()
     << " (tolerance 0.02)";
  res.detail = os.str();
  return res;
}

CriterionResult erdos() {
  CriterionResult res{7, "linear form sup point", false, "", 0, 0};
  std::uint32_t bad = 0;
  std::string first;
  for (std::uint32_t m = 1; m <= 20; ++m) {
    const auto dist = exhaustive_distribution(linear_form(m), Rademacher{});
    Rational expected(binomial(m, m / 2), pow_int(2, m));
    expected.canonicalize();
    if (dist.sup_point().first != expected) {
      ++bad;
      if (first.empty()) first = "; first mismatch at m = " + std::to_string(m);
    }
  }
  res.passed = bad == 0;
  res.detail = "m = 1..20, " + std::to_string(bad) + " mismatches against C(m, floor(m/2))/2^m" + first;
  return res;
}

CriterionResult cover_soundness() {
  CriterionResult res{8, "greedy cover soundness", false, "", 0, 60};
  std::uint32_t failures = 0, nonempty = 0, max_steps = 0;
  std::size_t max_y = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(stream_seed(criterion_seed(8), i));
    const auto n = static_cast<std::uint32_t>(3 + rng.below(7));
    const auto num = 1 + rng.below(3);
    const auto g = random_hypergraph(n, 3, num, 6, rng.next());
    const auto cert = greedy_cover(g, 2);
    bool ok = cert.terminated && !cert.step_cap_hit;
    if (ok) ok = verify_cover(g, cert.y, 2).passed;
    if (ok && !cert.y.empty()) {
      ++nonempty;
      for (std::size_t e = 0; e < g.edge_count() && ok; ++e) {
        auto edge = g.edge(e);
        ok = std::any_of(edge.begin(), edge.end(), [&](Vertex v) { return cert.y.contains(v); });
      }
    }
    max_steps = std::max<std::uint32_t>(max_steps, static_cast<std::uint32_t>(cert.steps.size()));
    max_y = std::max(max_y, cert.y.size());
    if (!ok) {
      ++failures;
      if (first.empty()) first = "; first failure at graph " + std::to_string(i);
    }
  }
  res.passed = failures == 0;
  res.detail = "300 graphs, " + std::to_string(failures) + " failures, " + std::to_string(nonempty) +
               " with nonempty Y, max steps " + std::to_string(max_steps) + ", max |Y| " + std::to_string(max_y) + first;
  return res;
}

CriterionResult q_cancellation() {
  CriterionResult res{9, "discrepancy cancellation and bound", false, "", 0, 0};
  std::uint32_t nonzero = 0, cases = 0;
  std::uint64_t sequences = 0, over_bound = 0;
  std::uint64_t seed_index = 0;
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::uint32_t n = r; n <= 8; ++n) {
      const auto complete = Hypergraph::complete(n, r);
      const auto empty = Hypergraph::empty(n, r);
      const auto random = random_hypergraph(n, r, 1, 2, stream_seed(criterion_seed(9), seed_index++));
      for (std::uint32_t s = 1; s <= r; ++s) {
        for (const auto* g : {&complete, &empty}) {
          const auto report = q_discrepancy_reference(*g, s);
          ++cases;
          if (report.q != 0) ++nonzero;
          sequences += report.sequences;
          over_bound += report.bound_violations;
        }
        const auto report = q_discrepancy(random, s);
        sequences += report.sequences;
        over_bound += report.bound_violations;
      }
    }
  }
  const auto single = q_discrepancy(Hypergraph::from_edges(4, 2, {{1, 2}}), 1);
  res.passed = nonzero == 0 && over_bound == 0 && single.q == 8;
  res.detail = std::to_string(cases) + " complete/empty cases, " + std::to_string(nonzero) + " nonzero; " +
               std::to_string(sequences) + " sequences, " + std::to_string(over_bound) +
               " above 2^s n^(r-s); single edge Q_1 = " + single.q.get_str();
  return res;
}

CriterionResult junta_sweep() {
  CriterionResult res{10, "junta total variation sweep", false, "", 0, 0};
  std::uint64_t tables = 0, bad = 0, index = 0;
  for (std::uint32_t n = 2; n <= 16; ++n) {
    for (std::uint32_t k = 1; 2 * k <= n; ++k) {
      for (std::uint32_t s = 0; s <= 3 && s <= n; ++s) {
        Rng rng(stream_seed(criterion_seed(10), index++));
        for (int rep = 0; rep < 50; ++rep) {
          std::vector<Rational> table(std::size_t{1} << s);
          for (auto& v : table) v = static_cast<long>(rng.below(4));
          if (!junta_tv(table, n, k).ok()) ++bad;
          ++tables;
        }
      }
    }
  }
  res.passed = bad == 0;
  res.detail = std::to_string(tables) + " tables, " + std::to_string(bad) + " above (max(s, 2n/k) - 1)/(n - 1)";
  return res;
}

CriterionResult coefficient_bound_sweep() {
  CriterionResult res{11, "coefficient bounds", false, "", 0, 0};
  std::size_t checked = 0, bad = 0;
  for (const auto& inst : coupling_instances()) {
    const auto table = coefficient_table(inst.lambda, inst.pairs);
    const auto check = check_coefficient_bounds(inst.lambda, table);
    checked += check.checked;
    bad += check.violations.size();
  }
  res.passed = bad == 0;
  res.detail = std::to_string(checked) + " coefficients from the coupling instances, " + std::to_string(bad) +
               " above q 2^|I| n^(d-|I|) or nonzero beyond degree d";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& progress) {
  using Runner = CriterionResult (*)();
  const Runner runners[] = {coupling_identity, ehm,           poisson_battery, covariance_signs,
                            lift_limit,        split_limit,   erdos,           cover_soundness,
                            q_cancellation,    junta_sweep,   coefficient_bound_sweep};
  std::vector<CriterionResult> results;
  for (int id = 1; id <= 11; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = runners[id - 1]();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.target_seconds > 0 && r.seconds >= r.target_seconds) {
      r.passed = false;
      r.detail += "; runtime target missed";
    }
    if (progress) progress(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_criterion(const CriterionResult& r) {
  char timing[64];
  if (r.target_seconds > 0) {
    std::snprintf(timing, sizeof timing, "%.2f s, target < %.0f s", r.seconds, r.target_seconds);
  } else {
    std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
  }
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail +
         " (" + timing + ")";
}

}  // namespace edgestat
