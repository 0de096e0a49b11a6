#include "edgestat/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <set>
#include <numeric>
#include <sstream>

#include "edgestat/combinatorics.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

namespace {

std::string edge_to_string(std::span<const Vertex> e) {
  std::string out = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(e[i]);
  }
  return out + "}";
}

}  // namespace

// ---- VertexSet -------------------------------------------------------------

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::interval(Vertex lo, Vertex hi) {
  std::vector<Vertex> m;
  for (Vertex v = lo; v <= hi && hi >= lo; ++v) m.push_back(v);
  return VertexSet(std::move(m));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSet::require_within(std::uint32_t n, std::string_view what) const {
  for (Vertex v : members_) {
    if (v < 1 || v > n) {
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " outside [1," +
                       std::to_string(n) + "]");
    }
  }
}

// ---- Hypergraph ------------------------------------------------------------

std::uint64_t Hypergraph::pack(std::span<const Vertex> sorted_edge) const {
  std::uint64_t key = 0;
  for (Vertex v : sorted_edge) key = (key << key_bits_) | v;
  return key;
}

void Hypergraph::build_keys() {
  keys_.clear();
  key_bits_ = static_cast<unsigned>(std::bit_width(n_));
  if (r_ == 0 || static_cast<std::uint64_t>(key_bits_) * r_ > 64) {
    key_bits_ = 0;
    return;
  }
  keys_.reserve(edge_count());
  for (std::size_t i = 0; i < edge_count(); ++i) keys_.push_back(pack(edge(i)));
}

Hypergraph Hypergraph::from_edges(std::uint32_t n, std::uint32_t r, std::vector<Edge> edges) {
  if (r < 1) throw InputError("uniformity r must be at least 1");
  if (n < r) throw InputError("need n >= r (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  std::vector<Vertex> flat;
  flat.reserve(edges.size() * r);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    if (e.size() != r) {
      throw InputError("edge #" + std::to_string(i + 1) + " " + edge_to_string(e) + " has " +
                       std::to_string(e.size()) + " vertices, expected " + std::to_string(r));
    }
    std::sort(e.begin(), e.end());
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 1 || e[j] > n) {
        throw InputError("edge #" + std::to_string(i + 1) + " " + edge_to_string(e) + ": vertex " +
                         std::to_string(e[j]) + " outside [1," + std::to_string(n) + "]");
      }
      if (j > 0 && e[j] == e[j - 1]) {
        throw InputError("edge #" + std::to_string(i + 1) + " " + edge_to_string(e) +
                         ": repeated vertex " + std::to_string(e[j]));
      }
    }
    flat.insert(flat.end(), e.begin(), e.end());
  }
  const std::size_t before = edges.size();
  Hypergraph g = from_flat_merging(n, r, std::move(flat));
  if (g.edge_count() != before) {
    // Locate the first repeated edge in input order for the message.
    std::set<Edge> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!seen.insert(edges[i]).second) {
        throw InputError("edge #" + std::to_string(i + 1) + " " + edge_to_string(edges[i]) +
                         ": duplicate edge");
      }
    }
  }
  return g;
}

Hypergraph Hypergraph::from_flat_merging(std::uint32_t n, std::uint32_t r, std::vector<Vertex> flat) {
  Hypergraph g(n, r);
  const std::size_t m = r == 0 ? 0 : flat.size() / r;
  for (std::size_t i = 0; i < m; ++i) {
    std::sort(flat.begin() + static_cast<std::ptrdiff_t>(i * r),
              flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
  }
  g.key_bits_ = static_cast<unsigned>(std::bit_width(n));
  if (r > 0 && static_cast<std::uint64_t>(g.key_bits_) * r <= 64) {
    std::vector<std::uint64_t> keys(m);
    for (std::size_t i = 0; i < m; ++i) {
      keys[i] = g.pack(std::span<const Vertex>(flat).subspan(i * r, r));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const std::uint64_t mask = g.key_bits_ == 64 ? ~0ULL : ((1ULL << g.key_bits_) - 1);
    g.flat_.resize(keys.size() * r);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::uint64_t key = keys[i];
      for (std::size_t j = r; j-- > 0;) {
        g.flat_[i * r + j] = static_cast<Vertex>(key & mask);
        key >>= g.key_bits_;
      }
    }
    g.keys_ = std::move(keys);
    return g;
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  const auto edge_at = [&](std::size_t i) {
    return std::span<const Vertex>(flat).subspan(i * r, r);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ea = edge_at(a), eb = edge_at(b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  });
  g.flat_.reserve(flat.size());
  for (std::size_t idx = 0; idx < m; ++idx) {
    auto e = edge_at(order[idx]);
    if (idx > 0 && std::ranges::equal(e, edge_at(order[idx - 1]))) continue;
    g.flat_.insert(g.flat_.end(), e.begin(), e.end());
  }
  g.build_keys();
  return g;
}

Hypergraph Hypergraph::empty(std::uint32_t n, std::uint32_t r) { return from_edges(n, r, {}); }

Hypergraph Hypergraph::complete(std::uint32_t n, std::uint32_t r) {
  if (r < 1 || n < r) throw InputError("complete: need n >= r >= 1");
  std::vector<Vertex> flat;
  auto comb = first_combination(r);
  do {
    flat.insert(flat.end(), comb.begin(), comb.end());
  } while (next_combination(comb, 1, n));
  return from_flat_merging(n, r, std::move(flat));
}

std::vector<Edge> Hypergraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < edge_count(); ++i) {
    auto e = edge(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

bool Hypergraph::contains(std::span<const Vertex> sorted_edge) const {
  if (sorted_edge.size() != r_) return false;
  if (key_bits_ != 0 && !keys_.empty()) {
    for (Vertex v : sorted_edge) {
      if (v < 1 || v > n_) return false;
    }
    return std::binary_search(keys_.begin(), keys_.end(), pack(sorted_edge));
  }
  std::size_t lo = 0, hi = edge_count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto e = edge(mid);
    if (std::lexicographical_compare(e.begin(), e.end(), sorted_edge.begin(), sorted_edge.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < edge_count() && std::ranges::equal(edge(lo), sorted_edge);
}

// ---- induced counts ----------------------------------------------------------

std::uint64_t induced_edge_count(const Hypergraph& g, const VertexSet& u) {
  u.require_within(g.n(), "induced_edge_count");
  const std::uint32_t r = g.r();
  if (u.size() < r || g.empty()) return 0;
  const Integer subsets = binomial(static_cast<std::int64_t>(u.size()), r);
  if (subsets <= Integer(static_cast<unsigned long>(g.edge_count()))) {
    // Probe every r-subset of U.
    std::uint64_t count = 0;
    auto idx = first_combination(r, 0);
    std::vector<Vertex> probe(r);
    const auto members = u.members();
    do {
      for (std::uint32_t j = 0; j < r; ++j) probe[j] = members[idx[j]];
      if (g.contains(probe)) ++count;
    } while (next_combination(idx, 0, static_cast<std::uint32_t>(u.size() - 1)));
    return count;
  }
  std::vector<char> in_u(static_cast<std::size_t>(g.n()) + 1, 0);
  for (Vertex v : u) in_u[v] = 1;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto e = g.edge(i);
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in_u[v] != 0; })) ++count;
  }
  return count;
}

// ---- matchings ---------------------------------------------------------------

namespace {

// Edges as fixed-width bitmasks over the vertex range they use.
class MatchingSolver {
 public:
  explicit MatchingSolver(std::span<const Edge> sorted_edges) {
    Vertex max_v = 0;
    for (const Edge& e : sorted_edges) {
      if (e.empty()) throw InputError("matching: empty edge");
      for (Vertex v : e) max_v = std::max(max_v, v);
    }
    words_ = max_v / 64 + 1;
    count_ = sorted_edges.size();
    masks_.assign(count_ * words_, 0);
    sizes_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (Vertex v : sorted_edges[i]) masks_[i * words_ + v / 64] |= 1ULL << (v % 64);
      sizes_[i] = static_cast<unsigned>(sorted_edges[i].size());
    }
  }

  bool disjoint(std::size_t a, std::size_t b) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (masks_[a * words_ + w] & masks_[b * words_ + w]) return false;
    }
    return true;
  }

  /// Maximum matching among the candidate edges.
  std::uint64_t solve(const std::vector<std::size_t>& candidates) {
    best_ = greedy(candidates);
    branch(candidates, 0);
    return best_;
  }

 private:
  std::uint64_t greedy(const std::vector<std::size_t>& cand) const {
    std::vector<std::size_t> chosen;
    for (std::size_t c : cand) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t x) { return disjoint(c, x); })) {
        chosen.push_back(c);
      }
    }
    return chosen.size();
  }

  std::uint64_t upper_bound(const std::vector<std::size_t>& cand) const {
    if (cand.empty()) return 0;
    std::vector<std::uint64_t> uni(words_, 0);
    unsigned min_size = ~0U;
    for (std::size_t c : cand) {
      for (std::size_t w = 0; w < words_; ++w) uni[w] |= masks_[c * words_ + w];
      min_size = std::min(min_size, sizes_[c]);
    }
    std::uint64_t covered = 0;
    for (auto w : uni) covered += static_cast<std::uint64_t>(std::popcount(w));
    return std::min<std::uint64_t>(cand.size(), covered / min_size);
  }

  void branch(const std::vector<std::size_t>& cand, std::uint64_t size) {
    if (cand.empty()) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + upper_bound(cand) <= best_) return;
    const std::size_t first = cand.front();
    std::vector<std::size_t> with;
    with.reserve(cand.size());
    for (std::size_t i = 1; i < cand.size(); ++i) {
      if (disjoint(first, cand[i])) with.push_back(cand[i]);
    }
    branch(with, size + 1);
    std::vector<std::size_t> without(cand.begin() + 1, cand.end());
    branch(without, size);
  }

  std::size_t words_ = 1;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<unsigned> sizes_;
  std::uint64_t best_ = 0;
};

std::vector<Edge> sorted_unique(std::span<const Edge> edges) {
  std::vector<Edge> out(edges.begin(), edges.end());
  for (Edge& e : out) std::sort(e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::uint64_t matching_number(std::span<const Edge> edges) {
  const std::vector<Edge> sorted = sorted_unique(edges);
  if (sorted.empty()) return 0;
  MatchingSolver solver(sorted);
  std::vector<std::size_t> all(sorted.size());
  std::iota(all.begin(), all.end(), 0);
  return solver.solve(all);
}

std::uint64_t matching_number(const Hypergraph& g) {
  const std::vector<Edge> edges = g.edge_list();
  return matching_number(edges);
}

std::vector<Edge> lex_least_maximum_matching(std::span<const Edge> edges) {
  const std::vector<Edge> sorted = sorted_unique(edges);
  std::vector<Edge> result;
  if (sorted.empty()) return result;
  MatchingSolver solver(sorted);
  std::vector<std::size_t> remaining(sorted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::uint64_t need = solver.solve(remaining);
  while (need > 0) {
    bool placed = false;
    for (std::size_t pos = 0; pos < remaining.size() && !placed; ++pos) {
      const std::size_t e = remaining[pos];
      std::vector<std::size_t> rest;
      for (std::size_t j = pos + 1; j < remaining.size(); ++j) {
        if (solver.disjoint(e, remaining[j])) rest.push_back(remaining[j]);
      }
      const std::uint64_t extend = rest.empty() ? 0 : MatchingSolver(sorted).solve(rest);
      if (1 + extend == need) {
        result.push_back(sorted[e]);
        remaining = std::move(rest);
        --need;
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("lex_least_maximum_matching: inconsistent matching size");
  }
  return result;
}

Hypergraph complement(const Hypergraph& g) {
  std::vector<Vertex> flat;
  auto comb = first_combination(g.r());
  do {
    if (!g.contains(comb)) flat.insert(flat.end(), comb.begin(), comb.end());
  } while (next_combination(comb, 1, g.n()));
  return Hypergraph::from_flat_merging(g.n(), g.r(), std::move(flat));
}

// ---- constructions -------------------------------------------------------------

Hypergraph lift_from_base(const Hypergraph& base, std::uint32_t r) {
  const std::uint32_t n = base.n();
  const std::uint32_t s = base.r();
  if (r < s || r > n) throw InputError("lift: need base uniformity <= r <= n");
  std::vector<Vertex> flat;
  const std::uint32_t extra = r - s;
  std::vector<Vertex> others;
  others.reserve(n);
  for (std::size_t i = 0; i < base.edge_count(); ++i) {
    auto f = base.edge(i);
    others.clear();
    for (Vertex v = 1; v <= n; ++v) {
      if (!std::binary_search(f.begin(), f.end(), v)) others.push_back(v);
    }
    if (extra == 0) {
      flat.insert(flat.end(), f.begin(), f.end());
      continue;
    }
    auto idx = first_combination(extra, 0);
    do {
      flat.insert(flat.end(), f.begin(), f.end());
      for (std::uint32_t j : idx) flat.push_back(others[j]);
    } while (next_combination(idx, 0, static_cast<std::uint32_t>(others.size() - 1)));
  }
  return Hypergraph::from_flat_merging(n, r, std::move(flat));
}

LiftConstruction construct_lift(std::uint32_t n, std::uint32_t k, std::uint32_t s, std::uint32_t r,
                                std::uint64_t seed) {
  if (!(1 <= s && s <= r && r <= k && k <= n)) {
    throw InputError("construct lift: need 1 <= s <= r <= k <= n");
  }
  const std::uint64_t inv_prob = binomial_u64(k, s);
  Rng rng(seed);
  std::vector<Vertex> base_flat;
  auto comb = first_combination(s);
  do {
    if (rng.bernoulli(1, inv_prob)) base_flat.insert(base_flat.end(), comb.begin(), comb.end());
  } while (next_combination(comb, 1, n));
  Hypergraph base = Hypergraph::from_flat_merging(n, s, std::move(base_flat));
  Hypergraph graph = lift_from_base(base, r);
  return LiftConstruction{std::move(base), std::move(graph), binomial(k - s, r - s)};
}

Hypergraph random_hypergraph(std::uint32_t n, std::uint32_t r, std::uint64_t num, std::uint64_t den,
                             std::uint64_t seed) {
  if (r < 1 || r > n) throw InputError("random hypergraph: need 1 <= r <= n");
  if (den == 0 || num > den) throw InputError("random hypergraph: probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Vertex> flat;
  auto comb = first_combination(r);
  do {
    if (rng.bernoulli(num, den)) flat.insert(flat.end(), comb.begin(), comb.end());
  } while (next_combination(comb, 1, n));
  return Hypergraph::from_flat_merging(n, r, std::move(flat));
}

Hypergraph construct_split(std::uint32_t n, const VertexSet& part, std::uint32_t r) {
  if (r < 1 || r > n) throw InputError("construct split: need 1 <= r <= n");
  part.require_within(n, "construct split");
  std::vector<Vertex> outside;
  for (Vertex v = 1; v <= n; ++v) {
    if (!part.contains(v)) outside.push_back(v);
  }
  std::vector<Vertex> flat;
  const std::uint32_t extra = r - 1;
  if (extra > outside.size()) return Hypergraph::from_flat_merging(n, r, {});
  for (Vertex v : part) {
    if (extra == 0) {
      flat.push_back(v);
      continue;
    }
    auto idx = first_combination(extra, 0);
    do {
      flat.push_back(v);
      for (std::uint32_t j : idx) flat.push_back(outside[j]);
    } while (next_combination(idx, 0, static_cast<std::uint32_t>(outside.size() - 1)));
  }
  return Hypergraph::from_flat_merging(n, r, std::move(flat));
}

Integer split_target_level(std::uint32_t k, std::uint32_t j, std::uint32_t r) {
  if (j > k) return 0;
  return Integer(j) * binomial(k - j, static_cast<std::int64_t>(r) - 1);
}

// ---- .hg format ------------------------------------------------------------------

Hypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint32_t n = 0, r = 0;
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> first_line;
  const auto fail = [&](const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  const auto read_ints = [&](const std::string& s) {
    std::istringstream ls(s);
    std::vector<std::int64_t> vals;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw fail("expected an integer, got '" + tok + "'");
      }
      if (used != tok.size()) throw fail("expected an integer, got '" + tok + "'");
      vals.push_back(v);
    }
    return vals;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto vals = read_ints(line);
    if (!have_header) {
      if (vals.size() != 2) throw fail("header must be '<n> <r>'");
      if (vals[1] < 1 || vals[0] < vals[1] || vals[0] > 0xFFFFFFFFLL) {
        throw fail("header requires n >= r >= 1");
      }
      n = static_cast<std::uint32_t>(vals[0]);
      r = static_cast<std::uint32_t>(vals[1]);
      have_header = true;
      continue;
    }
    if (vals.size() != r) {
      throw fail("edge has " + std::to_string(vals.size()) + " vertices, expected " + std::to_string(r));
    }
    Edge e;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (vals[j] < 1 || vals[j] > n) throw fail("vertex " + std::to_string(vals[j]) + " outside [1," + std::to_string(n) + "]");
      if (j > 0 && vals[j] <= vals[j - 1]) throw fail("vertex ids must be strictly ascending");
      e.push_back(static_cast<Vertex>(vals[j]));
    }
    if (auto [it, fresh] = first_line.emplace(e, line_no); !fresh) {
      throw fail("duplicate edge " + edge_to_string(e) + " (first seen on line " +
                 std::to_string(it->second) + ")");
    }
    edges.push_back(std::move(e));
  }
  if (!have_header) throw InputError("line 1: missing '<n> <r>' header");
  return Hypergraph::from_edges(n, r, std::move(edges));
}

Hypergraph read_hypergraph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open hypergraph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_hypergraph(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_hypergraph(const Hypergraph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.r()) + "\n";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto e = g.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(e[j]);
    }
    out += '\n';
  }
  return out;
}

void write_hypergraph_file(const std::filesystem::path& path, const Hypergraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write hypergraph file " + path.string());
  out << format_hypergraph(g);
}

}  // namespace edgestat
