#include "edgestat/edge_statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "edgestat/combinatorics.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

Rational EdgeProfile::probability(std::uint64_t level) const {
  auto it = counts.find(level);
  if (it == counts.end() || total == 0) return 0;
  Rational q(it->second, total);
  q.canonicalize();
  return q;
}

Rational EdgeProfile::mean() const {
  Integer weighted = 0;
  for (const auto& [level, count] : counts) weighted += Integer(static_cast<unsigned long>(level)) * count;
  Rational q(weighted, total);
  q.canonicalize();
  return q;
}

namespace {

void check_profile_args(const Hypergraph& g, std::uint32_t k, const ProfileOptions& options) {
  if (k > g.n()) throw InputError("profile: k exceeds n");
  const Integer total = binomial(g.n(), k);
  if (total > options.cap) {
    throw CapExceeded("profile: C(" + std::to_string(g.n()) + "," + std::to_string(k) + ") = " +
                      total.get_str() + " subsets exceeds the enumeration cap " + options.cap.get_str() +
                      "; use estimate_point instead");
  }
}

// Edges grouped by their largest vertex; each group stores the other r-1 vertices.
struct EdgesByTop {
  std::uint32_t lower = 0;  // r - 1
  std::vector<std::size_t> offset;
  std::vector<Vertex> rest;

  explicit EdgesByTop(const Hypergraph& g) : lower(g.r() - 1), offset(g.n() + 2, 0) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) ++offset[g.edge(i).back() + 1];
    for (std::size_t v = 1; v < offset.size(); ++v) offset[v] += offset[v - 1];
    rest.resize(g.edge_count() * lower);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      auto e = g.edge(i);
      const std::size_t slot = fill[e.back()]++;
      std::copy(e.begin(), e.end() - 1, rest.begin() + static_cast<std::ptrdiff_t>(slot * lower));
    }
  }

  /// Edges whose top vertex is v and whose other vertices are all marked.
  std::uint64_t closed_by(Vertex v, const std::vector<char>& marked) const {
    std::uint64_t count = 0;
    for (std::size_t e = offset[v]; e < offset[v + 1]; ++e) {
      const Vertex* p = rest.data() + e * lower;
      bool inside = true;
      for (std::uint32_t j = 0; j < lower && inside; ++j) inside = marked[p[j]] != 0;
      count += inside ? 1 : 0;
    }
    return count;
  }
};

struct ProfileWalker {
  const EdgesByTop& tops;
  std::uint32_t n;
  std::uint32_t k;
  std::vector<char> marked;
  std::vector<std::uint64_t>& hist;

  void descend(std::uint32_t depth, Vertex next, std::uint64_t edges) {
    if (depth == k) {
      ++hist[edges];
      return;
    }
    const Vertex last = n - (k - depth - 1);
    for (Vertex v = next; v <= last; ++v) {
      const std::uint64_t added = tops.closed_by(v, marked);
      marked[v] = 1;
      descend(depth + 1, v + 1, edges + added);
      marked[v] = 0;
    }
  }
};

EdgeProfile finish_profile(const Hypergraph& g, std::uint32_t k, const std::vector<std::uint64_t>& hist) {
  EdgeProfile profile;
  profile.n = g.n();
  profile.k = k;
  profile.total = binomial(g.n(), k);
  for (std::size_t level = 0; level < hist.size(); ++level) {
    if (hist[level] != 0) profile.counts[level] = Integer(static_cast<unsigned long>(hist[level]));
  }
  return profile;
}

}  // namespace

EdgeProfile exact_profile(const Hypergraph& g, std::uint32_t k, const ProfileOptions& options) {
  check_profile_args(g, k, options);
  const Integer max_possible = binomial(k, g.r());
  const std::size_t max_level =
      max_possible < Integer(static_cast<unsigned long>(g.edge_count())) ? max_possible.get_ui() : g.edge_count();
  std::vector<std::uint64_t> hist(max_level + 1, 0);
  if (k == 0) {
    hist[0] = 1;
    return finish_profile(g, k, hist);
  }
  const EdgesByTop tops(g);
  const auto first_last = static_cast<std::int64_t>(g.n() - k + 1);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(hist.size(), 0);
    ProfileWalker walker{tops, g.n(), k, std::vector<char>(g.n() + 1, 0), local};
#pragma omp for schedule(dynamic)
    for (std::int64_t first = 1; first <= first_last; ++first) {
      const auto v = static_cast<Vertex>(first);
      walker.marked[v] = 1;
      walker.descend(1, v + 1, tops.closed_by(v, walker.marked));
      walker.marked[v] = 0;
    }
#pragma omp critical
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += local[i];
  }
  return finish_profile(g, k, hist);
}

EdgeProfile exact_profile_reference(const Hypergraph& g, std::uint32_t k, const ProfileOptions& options) {
  check_profile_args(g, k, options);
  EdgeProfile profile;
  profile.n = g.n();
  profile.k = k;
  profile.total = binomial(g.n(), k);
  if (k == 0) {
    profile.counts[0] = 1;
    return profile;
  }
  auto comb = first_combination(k);
  do {
    profile.counts[induced_edge_count(g, VertexSet(comb))] += 1;
  } while (next_combination(comb, 1, g.n()));
  return profile;
}

// ---- Monte-Carlo point estimates ---------------------------------------------------

namespace {

// Per-sample count of e(G[U]). Edges are sorted, so those with smallest
// vertex v form the contiguous range [first_[v], first_[v+1]); a sample
// scans only the ranges of its own vertices, or probes all r-subsets of U
// when that is cheaper.
class SampleCounter {
 public:
  SampleCounter(const Hypergraph& g, std::uint32_t k) : g_(g) {
    const Integer probes = binomial(k, g.r());
    probe_cost_ = probes.fits_ulong_p() ? probes.get_ui() : UINT64_MAX;
    marked_.assign(g.n() + 2, 0);
    first_.assign(g.n() + 2, 0);
    for (std::size_t i = 0; i < g.edge_count(); ++i) ++first_[g.edge(i)[0] + 1];
    for (std::size_t v = 1; v < first_.size(); ++v) first_[v] += first_[v - 1];
    probe_buf_.resize(g.r());
  }

  std::uint64_t count(const std::vector<Vertex>& u) {
    const std::uint32_t r = g_.r();
    if (u.size() < r || g_.empty()) return 0;
    std::uint64_t scan_cost = 0;
    for (Vertex v : u) scan_cost += first_[v + 1] - first_[v];
    std::uint64_t c = 0;
    // a probe is a binary search, roughly a dozen scan steps
    if (probe_cost_ <= scan_cost / 12) {
      auto idx = first_combination(r, 0);
      do {
        for (std::uint32_t j = 0; j < r; ++j) probe_buf_[j] = u[idx[j]];
        if (g_.contains(probe_buf_)) ++c;
      } while (next_combination(idx, 0, static_cast<std::uint32_t>(u.size() - 1)));
      return c;
    }
    for (Vertex v : u) marked_[v] = 1;
    for (Vertex v : u) {
      for (std::size_t i = first_[v]; i < first_[v + 1]; ++i) {
        auto e = g_.edge(i);
        if (std::all_of(e.begin() + 1, e.end(), [&](Vertex w) { return marked_[w] != 0; })) ++c;
      }
    }
    for (Vertex v : u) marked_[v] = 0;
    return c;
  }

 private:
  const Hypergraph& g_;
  std::uint64_t probe_cost_ = 0;
  std::vector<char> marked_;
  std::vector<std::size_t> first_;
  std::vector<Vertex> probe_buf_;
};

std::uint64_t run_block(const Hypergraph& g, std::uint32_t k, std::uint64_t level, std::uint64_t seed,
                        std::uint64_t block, std::uint64_t count, SampleCounter& counter) {
  Rng rng(stream_seed(seed, block));
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto u = rng.k_subset(g.n(), k);
    if (counter.count(u) == level) ++hits;
  }
  return hits;
}

PointEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  PointEstimate est;
  est.hits = hits;
  est.samples = samples;
  est.seed = seed;
  est.estimate = Rational(Integer(static_cast<unsigned long>(hits)), Integer(static_cast<unsigned long>(samples)));
  est.estimate.canonicalize();
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.half_width = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

void check_estimate_args(const Hypergraph& g, std::uint32_t k, std::uint64_t samples) {
  if (k > g.n()) throw InputError("estimate: k exceeds n");
  if (samples == 0) throw InputError("estimate: samples must be positive");
}

}  // namespace

PointEstimate estimate_point(const Hypergraph& g, std::uint32_t k, std::uint64_t level,
                             std::uint64_t samples, std::uint64_t seed) {
  check_estimate_args(g, k, samples);
  const auto blocks = static_cast<std::int64_t>((samples + kSampleBlock - 1) / kSampleBlock);
  std::uint64_t hits = 0;
#pragma omp parallel reduction(+ : hits)
  {
    SampleCounter counter(g, k);
#pragma omp for schedule(dynamic)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const auto block = static_cast<std::uint64_t>(b);
      const std::uint64_t count = std::min(kSampleBlock, samples - block * kSampleBlock);
      hits += run_block(g, k, level, seed, block, count, counter);
    }
  }
  return make_estimate(hits, samples, seed);
}

PointEstimate estimate_point_reference(const Hypergraph& g, std::uint32_t k, std::uint64_t level,
                                       std::uint64_t samples, std::uint64_t seed) {
  check_estimate_args(g, k, samples);
  SampleCounter counter(g, k);
  std::uint64_t hits = 0;
  for (std::uint64_t block = 0; block * kSampleBlock < samples; ++block) {
    const std::uint64_t count = std::min(kSampleBlock, samples - block * kSampleBlock);
    hits += run_block(g, k, level, seed, block, count, counter);
  }
  return make_estimate(hits, samples, seed);
}

// ---- conditional junta -----------------------------------------------------------

std::uint64_t JuntaTable::mask_of(const VertexSet& t) const {
  std::uint64_t mask = 0;
  const auto members = y.members();
  for (Vertex v : t) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) {
      throw InputError("junta: vertex " + std::to_string(v) + " is not in Y");
    }
    mask |= 1ULL << (it - members.begin());
  }
  return mask;
}

bool JuntaTable::all_feasible() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

JuntaTable conditional_junta(const Hypergraph& g, std::uint32_t k, const VertexSet& y) {
  if (y.size() > kMaxJuntaSize) {
    throw InputError("conditional_junta: |Y| = " + std::to_string(y.size()) + " exceeds " +
                     std::to_string(kMaxJuntaSize));
  }
  if (k > g.n()) throw InputError("conditional_junta: k exceeds n");
  y.require_within(g.n(), "conditional_junta");

  const auto ysize = static_cast<unsigned>(y.size());
  const std::uint32_t r = g.r();
  const std::int64_t outside = static_cast<std::int64_t>(g.n()) - ysize;
  const std::size_t subsets = std::size_t{1} << ysize;
  const auto members = y.members();

  // by_rest[w][mask]: edges W with W∩Y = mask and |W \ Y| = w.
  std::vector<std::vector<std::uint64_t>> by_rest(r + 1, std::vector<std::uint64_t>(subsets, 0));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    std::uint64_t mask = 0;
    unsigned rest = 0;
    for (Vertex v : g.edge(i)) {
      auto it = std::lower_bound(members.begin(), members.end(), v);
      if (it != members.end() && *it == v) {
        mask |= 1ULL << (it - members.begin());
      } else {
        ++rest;
      }
    }
    ++by_rest[rest][mask];
  }
  // Sum over submasks: edges whose trace on Y lies inside T.
  for (auto& table : by_rest) {
    for (unsigned bit = 0; bit < ysize; ++bit) {
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        if (mask & (std::size_t{1} << bit)) table[mask] += table[mask ^ (std::size_t{1} << bit)];
      }
    }
  }

  // inclusion[j][w] = C(outside - w, j - w): (j - |T|)-subsets of [n]\Y containing a fixed w-set.
  std::vector<std::vector<Integer>> inclusion(ysize + 1, std::vector<Integer>(r + 1));
  std::vector<Integer> choices(ysize + 1);
  for (unsigned t = 0; t <= ysize; ++t) {
    const std::int64_t j = static_cast<std::int64_t>(k) - t;
    choices[t] = j < 0 ? Integer(0) : binomial(outside, j);
    for (unsigned w = 0; w <= r; ++w) {
      inclusion[t][w] = j < 0 ? Integer(0) : binomial(outside - w, j - static_cast<std::int64_t>(w));
    }
  }

  JuntaTable table;
  table.y = y;
  table.n = g.n();
  table.k = k;
  table.values.resize(subsets);
  table.subset_probability.resize(subsets);
  const Integer total = binomial(g.n(), k);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    const auto t = static_cast<unsigned>(std::popcount(mask));
    Rational pr(choices[t], total);
    pr.canonicalize();
    table.subset_probability[mask] = pr;
    if (choices[t] == 0) continue;
    Integer numerator = 0;
    for (unsigned w = 0; w <= r; ++w) {
      if (by_rest[w][mask] != 0) numerator += inclusion[t][w] * Integer(static_cast<unsigned long>(by_rest[w][mask]));
    }
    Rational value(numerator, choices[t]);
    value.canonicalize();
    table.values[mask] = value;
  }
  return table;
}

MultilinearPoly junta_polynomial(const JuntaTable& table) {
  if (!table.all_feasible()) {
    throw InputError("junta_polynomial: some subsets of Y are infeasible for this k");
  }
  const auto ysize = static_cast<unsigned>(table.y.size());
  std::vector<Rational> coeff(table.values.size());
  for (std::size_t mask = 0; mask < coeff.size(); ++mask) coeff[mask] = *table.values[mask];
  // Möbius inversion over the subset lattice.
  for (unsigned bit = 0; bit < ysize; ++bit) {
    for (std::size_t mask = 0; mask < coeff.size(); ++mask) {
      if (mask & (std::size_t{1} << bit)) coeff[mask] -= coeff[mask ^ (std::size_t{1} << bit)];
    }
  }
  MultilinearPoly p(table.n);
  const auto members = table.y.members();
  for (std::size_t mask = 0; mask < coeff.size(); ++mask) {
    p.add_term(select_by_mask(members, mask), coeff[mask]);
  }
  return p;
}

}  // namespace edgestat
