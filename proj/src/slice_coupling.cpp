#include "edgestat/slice_coupling.hpp"

#include <algorithm>
#include <bit>

#include "edgestat/combinatorics.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

void validate_pairs(std::uint32_t n, const PairSequence& pairs) {
  if (2 * pairs.size() > n) {
    throw InputError("coupling: 2k = " + std::to_string(2 * pairs.size()) + " exceeds n = " + std::to_string(n));
  }
  std::vector<char> seen(n + 1, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (Vertex v : {pairs[i].first, pairs[i].second}) {
      if (v < 1 || v > n) {
        throw InputError("coupling: pair " + std::to_string(i + 1) + " has vertex " + std::to_string(v) +
                         " outside [1, " + std::to_string(n) + "]");
      }
      if (seen[v]) throw InputError("coupling: vertex " + std::to_string(v) + " appears twice");
      seen[v] = 1;
    }
  }
}

VertexSet Coupling::support() const {
  std::vector<Vertex> all;
  for (const auto& [minus, plus] : pairs) {
    all.push_back(minus);
    all.push_back(plus);
  }
  return VertexSet(std::move(all));
}

VertexSet chosen_vertices(const PairSequence& pairs, std::uint64_t negative_mask) {
  std::vector<Vertex> picked;
  picked.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    picked.push_back((negative_mask >> i) & 1U ? pairs[i].first : pairs[i].second);
  }
  return VertexSet(std::move(picked));
}

VertexSet Coupling::chosen() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] < 0) mask |= 1ULL << i;
  }
  return chosen_vertices(pairs, mask);
}

std::vector<int> Coupling::sigma() const {
  std::vector<int> out(n, 0);
  for (Vertex v : chosen()) out[v - 1] = 1;
  return out;
}

Coupling sample_coupling(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  if (2ULL * k > n) throw InputError("sample_coupling: 2k exceeds n");
  Rng rng(seed);
  const auto seq = rng.distinct_sequence(n, 2 * k);
  Coupling c;
  c.n = n;
  c.k = k;
  for (std::uint32_t i = 0; i < k; ++i) c.pairs.emplace_back(seq[2 * i], seq[2 * i + 1]);
  for (std::uint32_t i = 0; i < k; ++i) c.signs.push_back(rng.coin() ? 1 : -1);
  return c;
}

namespace {

// slot[v] = 2i for the minus vertex of pair i, 2i+1 for its plus vertex, -1 if unpaired.
std::vector<int> pair_slots(std::uint32_t n, const PairSequence& pairs) {
  validate_pairs(n, pairs);
  if (pairs.size() > 64) throw InputError("coupling: at most 64 pairs are supported");
  std::vector<int> slot(n + 1, -1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    slot[pairs[i].first] = static_cast<int>(2 * i);
    slot[pairs[i].second] = static_cast<int>(2 * i + 1);
  }
  return slot;
}

struct PairTrace {
  std::uint64_t met = 0;    // pairs meeting W
  std::uint64_t minus = 0;  // pairs whose minus vertex is in W
};

// W must lie in V_v and take at most one vertex from each pair; otherwise the
// product of the sigma's over W vanishes identically.
std::optional<PairTrace> trace_of(const Monomial& w, const std::vector<int>& slot) {
  PairTrace t;
  for (Vertex v : w) {
    const int s = slot[v];
    if (s < 0) return std::nullopt;
    const std::uint64_t bit = 1ULL << (s / 2);
    if (t.met & bit) return std::nullopt;
    t.met |= bit;
    if (s % 2 == 0) t.minus |= bit;
  }
  return t;
}

Rational dyadic(const Rational& c, std::size_t size) {
  Rational out = c;
  mpq_div_2exp(out.get_mpq_t(), c.get_mpq_t(), static_cast<mp_bitcnt_t>(size));
  return out;
}

}  // namespace

Rational coefficient_A(const MultilinearPoly& lambda, const PairSequence& pairs, const VertexSet& index_set) {
  const auto slot = pair_slots(lambda.n(), pairs);
  std::uint64_t target = 0;
  for (Vertex i : index_set) {
    if (i < 1 || i > pairs.size()) {
      throw InputError("coefficient_A: pair index " + std::to_string(i) + " outside [1, " +
                       std::to_string(pairs.size()) + "]");
    }
    target |= 1ULL << (i - 1);
  }
  Rational sum = 0;
  for (const auto& [w, c] : lambda.coeffs()) {
    const auto t = trace_of(w, slot);
    if (!t || (t->met & target) != target) continue;
    const Rational term = dyadic(c, w.size());
    if (std::popcount(t->minus & target) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

CoefficientTable coefficient_table(const MultilinearPoly& lambda, const PairSequence& pairs) {
  const auto slot = pair_slots(lambda.n(), pairs);
  CoefficientTable table;
  for (const auto& [w, c] : lambda.coeffs()) {
    const auto t = trace_of(w, slot);
    if (!t) continue;
    const Rational base = dyadic(c, w.size());
    // every I ⊆ met, including I = met and the empty set
    std::uint64_t sub = t->met;
    while (true) {
      if (std::popcount(sub & t->minus) % 2) {
        table[sub] -= base;
      } else {
        table[sub] += base;
      }
      if (sub == 0) break;
      sub = (sub - 1) & t->met;
    }
  }
  std::erase_if(table, [](const auto& entry) { return entry.second == 0; });
  return table;
}

namespace {

Rational sign_polynomial_at(const std::vector<std::pair<std::uint64_t, Rational>>& terms, std::uint64_t negative) {
  Rational sum = 0;
  for (const auto& [mask, a] : terms) {
    if (std::popcount(mask & negative) % 2) {
      sum -= a;
    } else {
      sum += a;
    }
  }
  return sum;
}

void check_identity_size(const PairSequence& pairs) {
  if (pairs.size() > kMaxIdentityPairs) {
    throw InputError("identity_check: k = " + std::to_string(pairs.size()) + " exceeds " +
                     std::to_string(kMaxIdentityPairs));
  }
}

}  // namespace

IdentityReport identity_check(const MultilinearPoly& lambda, const PairSequence& pairs) {
  check_identity_size(pairs);
  IdentityReport report;
  report.k = static_cast<std::uint32_t>(pairs.size());
  report.table = coefficient_table(lambda, pairs);
  report.sign_vectors = 1ULL << report.k;
  const std::vector<std::pair<std::uint64_t, Rational>> terms(report.table.begin(), report.table.end());
  const auto total = static_cast<std::int64_t>(report.sign_vectors);

  Rational worst = 0;
  std::uint64_t first = UINT64_MAX;
#pragma omp parallel
  {
    Rational local_worst = 0;
    std::uint64_t local_first = UINT64_MAX;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      const auto mask = static_cast<std::uint64_t>(i);
      const Rational lhs = evaluate_indicator(lambda, chosen_vertices(pairs, mask));
      const Rational gap = abs_rat(lhs - sign_polynomial_at(terms, mask));
      if (gap != 0) {
        local_first = std::min(local_first, mask);
        if (gap > local_worst) local_worst = gap;
      }
    }
#pragma omp critical
    {
      if (local_worst > worst) worst = local_worst;
      first = std::min(first, local_first);
    }
  }
  report.max_discrepancy = worst;
  if (first != UINT64_MAX) report.first_mismatch = first;
  return report;
}

IdentityReport identity_check_reference(const MultilinearPoly& lambda, const PairSequence& pairs) {
  check_identity_size(pairs);
  IdentityReport report;
  report.k = static_cast<std::uint32_t>(pairs.size());
  report.table = coefficient_table(lambda, pairs);
  report.sign_vectors = 1ULL << report.k;
  report.max_discrepancy = 0;
  for (std::uint64_t mask = 0; mask < report.sign_vectors; ++mask) {
    const Rational lhs = evaluate_indicator(lambda, chosen_vertices(pairs, mask));
    Rational rhs = 0;
    for (const auto& [index_mask, a] : report.table) {
      rhs += std::popcount(index_mask & mask) % 2 ? Rational(-a) : a;
    }
    const Rational gap = abs_rat(lhs - rhs);
    if (gap != 0 && !report.first_mismatch) report.first_mismatch = mask;
    if (gap > report.max_discrepancy) report.max_discrepancy = gap;
  }
  return report;
}

Thresholds lo_thresholds(const Rational& q, std::uint32_t d, std::uint32_t n, std::uint32_t f,
                         const Rational& t) {
  if (f > d) throw InputError("lo_thresholds: f exceeds d");
  Thresholds out;
  for (std::uint32_t g = 0; g <= d; ++g) {
    out.b.push_back(q * pow_int(2, g) * pow_int(n, d - g));
  }
  out.a = 0;
  for (std::uint32_t j = 1; f + j <= d; ++j) out.a += pow_rat(t, j) * out.b[f + j];
  return out;
}

BoundCheck check_coefficient_bounds(const MultilinearPoly& lambda, const CoefficientTable& table) {
  Rational q = 0;
  for (const auto& [w, c] : lambda.coeffs()) q = std::max(q, abs_rat(c));
  const unsigned d = lambda.degree();
  const auto b = lo_thresholds(q, d, lambda.n(), d, 0).b;
  BoundCheck check;
  for (const auto& [mask, a] : table) {
    ++check.checked;
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const bool ok = size <= d && abs_rat(a) <= b[size];
    if (!ok) check.violations.push_back(mask);
  }
  return check;
}

Integer dense_count(const MultilinearPoly& lambda, std::uint32_t d, const VertexSet& w, const VertexSet& v) {
  Integer count = 0;
  for (const auto& [z, c] : lambda.coeffs()) {
    if (z.size() != d) continue;
    const bool inside_v = std::all_of(z.begin(), z.end(), [&](Vertex x) { return v.contains(x); });
    if (inside_v && std::includes(z.begin(), z.end(), w.begin(), w.end())) ++count;
  }
  return count;
}

DenseCore minimal_dense_core(const MultilinearPoly& lambda, const VertexSet& e, const Rational& m,
                             const VertexSet& v) {
  const Monomial support(e.begin(), e.end());
  if (support.empty() || lambda.coefficient(support) == 0) {
    throw InputError("minimal_dense_core: E is not the support of a nonzero monomial");
  }
  if (!std::includes(v.begin(), v.end(), e.begin(), e.end())) {
    throw InputError("minimal_dense_core: E is not contained in V");
  }
  if (m <= 0) throw InputError("minimal_dense_core: M must be positive");
  const auto d = static_cast<std::uint32_t>(support.size());
  const Rational ratio = Rational(lambda.n()) / m;
  for (std::uint64_t mask : masks_by_size_then_lex(d)) {
    VertexSet f(select_by_mask(std::span<const Vertex>(support), mask));
    const Rational required = pow_rat(ratio, d - static_cast<std::uint32_t>(f.size()));
    Integer count = dense_count(lambda, d, f, v);
    if (count >= required) return DenseCore{std::move(f), std::move(count), required};
  }
  // F = E always qualifies since B(E) = 1 >= 1.
  throw std::logic_error("minimal_dense_core: no qualifying subset");
}

double matching_retention(const Hypergraph& g, std::uint32_t k, std::uint64_t need, std::uint32_t trials,
                          std::uint64_t seed) {
  if (k > g.n()) throw InputError("matching_retention: k exceeds n");
  if (trials == 0) return 0.0;
  std::uint32_t kept = 0;
  for (std::uint32_t i = 0; i < trials; ++i) {
    Rng rng(stream_seed(seed, i));
    const VertexSet u(rng.k_subset(g.n(), k));
    std::vector<Edge> inside;
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
      auto e = g.edge(j);
      if (std::all_of(e.begin(), e.end(), [&](Vertex x) { return u.contains(x); })) {
        inside.emplace_back(e.begin(), e.end());
      }
    }
    if (matching_number(std::span<const Edge>(inside)) >= need) ++kept;
  }
  return static_cast<double>(kept) / trials;
}

}  // namespace edgestat
