#include "edgestat/discrepancy.hpp"

#include <algorithm>
#include <cstdlib>

#include "edgestat/combinatorics.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

Rational DiscrepancyReport::normalized() const {
  Rational out(q, pow_int(n, r + s));
  out.canonicalize();
  return out;
}

namespace {

bool heavier(const SequenceWeight& a, const SequenceWeight& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.sequence < b.sequence;
}

void keep_top(std::vector<SequenceWeight>& top, std::size_t limit, const std::vector<Vertex>& seq,
              std::uint64_t weight) {
  if (limit == 0) return;
  SequenceWeight candidate{seq, weight};
  if (top.size() == limit && !heavier(candidate, top.back())) return;
  top.insert(std::upper_bound(top.begin(), top.end(), candidate, heavier), std::move(candidate));
  if (top.size() > limit) top.pop_back();
}

DiscrepancyReport start_report(const Hypergraph& g, std::uint32_t s, const DiscrepancyOptions& options) {
  if (s < 1 || s > g.r()) throw InputError("discrepancy: s must lie in [1, r]");
  const Integer work = pow_int(g.n(), 2 * s) * binomial(g.n(), g.r() - s);
  if (work > options.cap) {
    throw CapExceeded("discrepancy: n^(2s) C(n, r-s) = " + work.get_str() + " exceeds the cap " +
                      options.cap.get_str());
  }
  DiscrepancyReport report;
  report.n = g.n();
  report.r = g.r();
  report.s = s;
  report.q = 0;
  report.weight_bound = pow_int(2, s) * pow_int(g.n(), g.r() - s);
  return report;
}

// Walks all ordered tuples of `len` distinct vertices in [1, n] whose first
// entry is `first`, in lexicographic order.
template <typename Visit>
void for_each_tuple(std::uint32_t n, std::uint32_t len, Vertex first, Visit&& visit) {
  std::vector<Vertex> seq(len, 0);
  std::vector<char> used(n + 1, 0);
  seq[0] = first;
  used[first] = 1;
  std::uint32_t pos = 1;
  if (len == 1) {
    visit(seq);
    return;
  }
  // seq[pos] holds the last tried value at pos (0 before the first try).
  while (pos >= 1) {
    if (pos == len) {
      visit(seq);
      --pos;
      continue;
    }
    Vertex& cur = seq[pos];
    if (cur != 0) used[cur] = 0;
    ++cur;
    while (cur <= n && used[cur]) ++cur;
    if (cur > n) {
      cur = 0;
      --pos;
      continue;
    }
    used[cur] = 1;
    ++pos;
  }
}

}  // namespace

DiscrepancyReport q_discrepancy(const Hypergraph& g, std::uint32_t s, const DiscrepancyOptions& options) {
  DiscrepancyReport report = start_report(g, s, options);
  const std::uint32_t n = g.n();
  const std::uint32_t r = g.r();
  if (2 * s > n) return report;

  const bool use_complement = 2 * Integer(static_cast<unsigned long>(g.edge_count())) > binomial(n, r);
  const Hypergraph source = use_complement ? complement(g) : g;
  const std::uint64_t bound =
      report.weight_bound.fits_ulong_p() ? report.weight_bound.get_ui() : UINT64_MAX;

  unsigned __int128 total = 0;
  std::uint64_t sequences = 0;
  std::uint64_t max_weight = 0;
  std::uint64_t violations = 0;
  std::vector<SequenceWeight> top;

#pragma omp parallel
  {
    unsigned __int128 local_total = 0;
    std::uint64_t local_sequences = 0;
    std::uint64_t local_max = 0;
    std::uint64_t local_violations = 0;
    std::vector<SequenceWeight> local_top;
    // slot[v] = 2i (minus of pair i) or 2i+1 (plus), -1 outside the tuple
    std::vector<int> slot(n + 1, -1);
    std::vector<int> hits(s, 0);

#pragma omp for schedule(dynamic)
    for (std::int64_t first = 1; first <= static_cast<std::int64_t>(n); ++first) {
      for_each_tuple(n, 2 * s, static_cast<Vertex>(first), [&](const std::vector<Vertex>& seq) {
        for (std::uint32_t i = 0; i < 2 * s; ++i) slot[seq[i]] = static_cast<int>(i);
        std::int64_t sum = 0;
        for (std::size_t e = 0; e < source.edge_count(); ++e) {
          std::fill(hits.begin(), hits.end(), 0);
          int minus = 0;
          for (Vertex v : source.edge(e)) {
            const int sl = slot[v];
            if (sl < 0) continue;
            ++hits[sl / 2];
            minus += (sl % 2 == 0) ? 1 : 0;
          }
          if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) sum += (minus % 2) ? -1 : 1;
        }
        for (Vertex v : seq) slot[v] = -1;
        const auto weight = static_cast<std::uint64_t>(std::llabs(sum));
        local_total += weight;
        ++local_sequences;
        local_max = std::max(local_max, weight);
        if (weight > bound) ++local_violations;
        keep_top(local_top, options.top, seq, weight);
      });
    }
#pragma omp critical
    {
      total += local_total;
      sequences += local_sequences;
      max_weight = std::max(max_weight, local_max);
      violations += local_violations;
      for (const auto& sw : local_top) keep_top(top, options.top, sw.sequence, sw.weight);
    }
  }

  report.q = Integer(static_cast<unsigned long>(total >> 64));
  report.q <<= 64;
  report.q += Integer(static_cast<unsigned long>(total & UINT64_MAX));
  report.sequences = sequences;
  report.max_weight = max_weight;
  report.bound_violations = violations;
  report.heaviest = std::move(top);
  return report;
}

DiscrepancyReport q_discrepancy_reference(const Hypergraph& g, std::uint32_t s,
                                          const DiscrepancyOptions& options) {
  DiscrepancyReport report = start_report(g, s, options);
  const std::uint32_t n = g.n();
  const std::uint32_t r = g.r();
  if (2 * s > n) return report;
  for (Vertex first = 1; first <= n; ++first) {
    for_each_tuple(n, 2 * s, first, [&](const std::vector<Vertex>& seq) {
      std::int64_t sum = 0;
      auto w = first_combination(r);
      do {
        if (!g.contains(w)) continue;
        bool once = true;
        int minus = 0;
        for (std::uint32_t i = 0; i < s && once; ++i) {
          const bool has_minus = std::binary_search(w.begin(), w.end(), seq[2 * i]);
          const bool has_plus = std::binary_search(w.begin(), w.end(), seq[2 * i + 1]);
          once = has_minus != has_plus;
          minus += has_minus ? 1 : 0;
        }
        if (once) sum += (minus % 2) ? -1 : 1;
      } while (next_combination(w, 1, n));
      const auto weight = static_cast<std::uint64_t>(std::llabs(sum));
      report.q += static_cast<unsigned long>(weight);
      ++report.sequences;
      report.max_weight = std::max(report.max_weight, weight);
      if (Integer(static_cast<unsigned long>(weight)) > report.weight_bound) ++report.bound_violations;
      keep_top(report.heaviest, options.top, seq, weight);
    });
  }
  return report;
}

HeavySets heavy_disjoint_sets(const MultilinearPoly& lambda, const PairSequence& pairs, std::uint32_t s,
                              const Rational& threshold) {
  if (s < 1 || s > pairs.size()) throw InputError("heavy_disjoint_sets: s must lie in [1, k]");
  if (threshold < 0) throw InputError("heavy_disjoint_sets: threshold must be nonnegative");
  const auto table = coefficient_table(lambda, pairs);
  HeavySets out;
  out.min_value = 0;
  const auto blocks = static_cast<std::uint32_t>(pairs.size() / s);
  for (std::uint32_t j = 0; j < blocks; ++j) {
    std::uint64_t mask = 0;
    for (std::uint32_t i = 0; i < s; ++i) mask |= 1ULL << (j * s + i);
    auto it = table.find(mask);
    if (it == table.end()) continue;  // zero coefficient
    const Rational value = abs_rat(it->second);
    if (value < threshold) continue;
    out.sets.push_back(VertexSet::interval(j * s + 1, j * s + s));
    out.values.push_back(value);
    if (out.sets.size() == 1 || value < out.min_value) out.min_value = value;
  }
  return out;
}

double disjoint_tuple_shortfall(std::uint32_t vertices, std::uint32_t f, std::uint32_t m,
                                const std::function<bool(std::span<const Vertex>)>& family,
                                double floor_count, std::uint32_t trials, std::uint64_t seed) {
  if (static_cast<std::uint64_t>(f) * m > vertices) throw InputError("disjoint_tuple_shortfall: f*m exceeds |V|");
  if (trials == 0) return 0.0;
  std::uint32_t short_trials = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    Rng rng(stream_seed(seed, t));
    const auto seq = rng.distinct_sequence(vertices, f * m);
    std::uint32_t inside = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (family(std::span<const Vertex>(seq).subspan(static_cast<std::size_t>(i) * f, f))) ++inside;
    }
    if (inside < floor_count) ++short_trials;
  }
  return static_cast<double>(short_trials) / trials;
}

}  // namespace edgestat
