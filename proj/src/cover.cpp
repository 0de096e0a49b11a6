#include "edgestat/cover.hpp"

#include <algorithm>
#include <set>

#include "edgestat/combinatorics.hpp"

namespace edgestat {

namespace {

Edge intersect(std::span<const Vertex> e, const VertexSet& y) {
  Edge out;
  for (Vertex v : e) {
    if (y.contains(v)) out.push_back(v);
  }
  return out;
}

bool set_less(const Edge& a, const Edge& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<Edge> gamma(const Hypergraph& g, const VertexSet& y, const VertexSet& s) {
  if (!std::includes(y.begin(), y.end(), s.begin(), s.end())) throw InputError("gamma: S is not a subset of Y");
  std::set<Edge> out;
  const Edge target(s.begin(), s.end());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto e = g.edge(i);
    if (intersect(e, y) != target) continue;
    Edge rest;
    std::set_difference(e.begin(), e.end(), target.begin(), target.end(), std::back_inserter(rest));
    out.insert(std::move(rest));
  }
  return {out.begin(), out.end()};
}

std::vector<VertexSet> relevant_sets(const Hypergraph& g, const VertexSet& y) {
  // Gamma_Y(S) is nonempty exactly when S is a trace e ∩ Y; relevant sets are the minimal traces.
  std::set<Edge> traces;
  for (std::size_t i = 0; i < g.edge_count(); ++i) traces.insert(intersect(g.edge(i), y));
  std::vector<Edge> minimal;
  for (const Edge& s : traces) {
    bool is_minimal = true;
    const auto size = s.size();
    for (std::uint64_t mask = 0; mask + 1 < (1ULL << size) && is_minimal; ++mask) {
      if (traces.count(select_by_mask(std::span<const Vertex>(s), mask))) is_minimal = false;
    }
    if (is_minimal) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end(), set_less);
  std::vector<VertexSet> out;
  out.reserve(minimal.size());
  for (auto& s : minimal) out.emplace_back(std::move(s));
  return out;
}

std::vector<std::uint64_t> relevant_counts(const Hypergraph& g, const VertexSet& y) {
  std::vector<std::uint64_t> counts(g.r() + 1, 0);
  for (const auto& s : relevant_sets(g, y)) ++counts[s.size()];
  return counts;
}

Residual residual(const Hypergraph& g, const VertexSet& y, const VertexSet& x) {
  if (!std::includes(y.begin(), y.end(), x.begin(), x.end())) throw InputError("residual: X is not a subset of Y");
  std::set<Edge> kept;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto e = g.edge(i);
    Edge rest;
    bool deleted = false;
    for (Vertex v : e) {
      if (x.contains(v)) continue;
      if (y.contains(v)) {
        deleted = true;
        break;
      }
      rest.push_back(v);
    }
    if (!deleted && !rest.empty()) kept.insert(std::move(rest));
  }
  Residual out;
  out.edges.assign(kept.begin(), kept.end());
  for (const auto& e : out.edges) out.by_size[static_cast<std::uint32_t>(e.size())].push_back(e);
  return out;
}

std::uint64_t default_step_cap(std::uint32_t r, std::uint64_t m) {
  const Integer cap = 10 * pow_int(Integer(static_cast<unsigned long>(r)) * Integer(static_cast<unsigned long>(m)), r + 2);
  return cap.fits_ulong_p() ? cap.get_ui() : UINT64_MAX;
}

CoverCertificate greedy_cover(const Hypergraph& g, std::uint64_t m, std::uint64_t step_cap) {
  if (m < 1) throw InputError("greedy_cover: m must be positive");
  CoverCertificate cert;
  cert.step_cap = step_cap == 0 ? default_step_cap(g.r(), m) : step_cap;
  VertexSet z;
  auto counts = relevant_counts(g, z);
  while (true) {
    std::optional<VertexSet> bad;
    std::vector<Edge> options;
    for (const auto& s : relevant_sets(g, z)) {
      if (s.size() >= g.r()) continue;
      auto candidates = gamma(g, z, s);
      if (matching_number(std::span<const Edge>(candidates)) < m) {
        bad = s;
        options = std::move(candidates);
        break;
      }
    }
    if (!bad) {
      cert.terminated = true;
      break;
    }
    if (cert.steps.size() >= cert.step_cap) {
      cert.step_cap_hit = true;
      break;
    }
    CoverStep step;
    step.z = z;
    step.s = *bad;
    step.matching = lex_least_maximum_matching(std::span<const Edge>(options));
    std::vector<Vertex> added;
    for (const auto& e : step.matching) added.insert(added.end(), e.begin(), e.end());
    step.w = VertexSet(added);
    added.insert(added.end(), z.begin(), z.end());
    z = VertexSet(std::move(added));
    step.counts_before = counts;
    counts = relevant_counts(g, z);
    step.counts_after = counts;
    cert.steps.push_back(std::move(step));
  }
  cert.y = z;
  return cert;
}

bool counts_decrease(const std::vector<std::uint64_t>& before, const std::vector<std::uint64_t>& after) {
  const std::size_t len = std::min(before.size(), after.size());
  for (std::size_t d = 0; d < len; ++d) {
    if (after[d] < before[d]) return true;
    if (after[d] > before[d]) return false;
  }
  return false;
}

CoverVerdict verify_cover(const Hypergraph& g, const VertexSet& y, std::uint64_t m) {
  if (y.size() > kMaxCoverSize) {
    throw InputError("verify_cover: |Y| = " + std::to_string(y.size()) + " exceeds " +
                     std::to_string(kMaxCoverSize));
  }
  y.require_within(g.n(), "verify_cover");
  CoverVerdict verdict;
  if (!y.empty()) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      auto e = g.edge(i);
      if (std::none_of(e.begin(), e.end(), [&](Vertex v) { return y.contains(v); })) {
        verdict.passed = false;
        verdict.uncovered_edge = Edge(e.begin(), e.end());
        break;
      }
    }
  }
  const auto members = y.members();
  const auto subsets = static_cast<std::int64_t>(1ULL << y.size());
  std::uint64_t first = UINT64_MAX;
#pragma omp parallel for schedule(dynamic) reduction(min : first)
  for (std::int64_t i = 0; i < subsets; ++i) {
    const auto mask = static_cast<std::uint64_t>(i);
    const auto res = residual(g, y, VertexSet(select_by_mask(members, mask)));
    if (res.by_size.empty()) continue;
    const auto& top = res.by_size.rbegin()->second;
    if (matching_number(std::span<const Edge>(top)) < m) first = std::min(first, mask);
  }
  if (first != UINT64_MAX) {
    verdict.passed = false;
    VertexSet x(select_by_mask(members, first));
    const auto res = residual(g, y, x);
    const auto& [size, top] = *res.by_size.rbegin();
    verdict.witness = std::move(x);
    verdict.witness_size = size;
    verdict.witness_matching = matching_number(std::span<const Edge>(top));
  }
  return verdict;
}

}  // namespace edgestat
