#include "edgestat/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edgestat {

// ---- MultilinearPoly ---------------------------------------------------------

void MultilinearPoly::add_term(Monomial vars, const Rational& c) {
  std::sort(vars.begin(), vars.end());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 1 || vars[i] > n_) {
      throw InputError("variable x" + std::to_string(vars[i]) + " outside [1," + std::to_string(n_) + "]");
    }
    if (i > 0 && vars[i] == vars[i - 1]) {
      throw InputError("variable x" + std::to_string(vars[i]) + " repeated in a multilinear term");
    }
  }
  if (c == 0) return;
  auto [it, fresh] = coeffs_.emplace(std::move(vars), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Rational MultilinearPoly::coefficient(const Monomial& vars) const {
  Monomial key = vars;
  std::sort(key.begin(), key.end());
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

unsigned MultilinearPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : coeffs_) d = std::max(d, w.size());
  return static_cast<unsigned>(d);
}

std::vector<Vertex> MultilinearPoly::active_variables() const {
  std::vector<Vertex> vars;
  for (const auto& [w, c] : coeffs_) vars.insert(vars.end(), w.begin(), w.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MultilinearPoly lambda_of(const Hypergraph& g) {
  MultilinearPoly p(g.n());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto e = g.edge(i);
    p.add_term(Monomial(e.begin(), e.end()), 1);
  }
  return p;
}

Rational evaluate(const MultilinearPoly& p, std::span<const Rational> x) {
  if (x.size() != p.n()) {
    throw InputError("evaluate: got " + std::to_string(x.size()) + " values for " +
                     std::to_string(p.n()) + " variables");
  }
  Rational total = 0;
  Rational term;
  for (const auto& [w, c] : p.coeffs()) {
    term = c;
    for (Vertex v : w) {
      term *= x[v - 1];
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

Rational evaluate_indicator(const MultilinearPoly& p, const VertexSet& ones) {
  Rational total = 0;
  for (const auto& [w, c] : p.coeffs()) {
    if (std::all_of(w.begin(), w.end(), [&](Vertex v) { return ones.contains(v); })) total += c;
  }
  return total;
}

Hypergraph threshold_hypergraph(const MultilinearPoly& p, const Rational& a, std::uint32_t d) {
  if (d < 1) throw InputError("threshold_hypergraph: use threshold_constant_nonempty for d = 0");
  if (a < 0) throw InputError("threshold_hypergraph: threshold must be nonnegative");
  if (p.n() < d) throw InputError("threshold_hypergraph: d exceeds the number of variables");
  std::vector<Edge> edges;
  for (const auto& [w, c] : p.coeffs()) {
    if (w.size() == d && abs_rat(c) > a) edges.push_back(w);
  }
  return Hypergraph::from_edges(p.n(), d, std::move(edges));
}

bool threshold_constant_nonempty(const MultilinearPoly& p, const Rational& a) {
  return abs_rat(p.coefficient({})) > a;
}

MultilinearPoly restrict(const MultilinearPoly& p, const std::map<Vertex, Rational>& assignment) {
  for (const auto& [v, value] : assignment) {
    if (v < 1 || v > p.n()) throw InputError("restrict: variable x" + std::to_string(v) + " out of range");
  }
  MultilinearPoly out(p.n());
  for (const auto& [w, c] : p.coeffs()) {
    Rational coeff = c;
    Monomial rest;
    for (Vertex v : w) {
      if (auto it = assignment.find(v); it != assignment.end()) {
        coeff *= it->second;
      } else {
        rest.push_back(v);
      }
    }
    out.add_term(std::move(rest), coeff);
  }
  return out;
}

MultilinearPoly multiply_sign_reduced(const MultilinearPoly& a, const MultilinearPoly& b) {
  MultilinearPoly out(std::max(a.n(), b.n()));
  Monomial sym;
  for (const auto& [wa, ca] : a.coeffs()) {
    for (const auto& [wb, cb] : b.coeffs()) {
      sym.clear();
      std::set_symmetric_difference(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(sym));
      out.add_term(sym, ca * cb);
    }
  }
  return out;
}

MultilinearPoly linear_form(std::uint32_t m) {
  MultilinearPoly p(m);
  for (Vertex v = 1; v <= m; ++v) p.add_term({v}, 1);
  return p;
}

MultilinearPoly multilinearized_power(std::uint32_t m, std::uint32_t d) {
  MultilinearPoly out(m);
  out.add_term({}, 1);
  const MultilinearPoly base = linear_form(m);
  for (std::uint32_t i = 0; i < d; ++i) out = multiply_sign_reduced(out, base);
  return out;
}

// ---- ValueDistribution -------------------------------------------------------

Rational ValueDistribution::probability_of(const Rational& value) const {
  auto it = atoms.find(value);
  return it == atoms.end() ? Rational(0) : it->second;
}

Rational ValueDistribution::probability_within(const Rational& center, const Rational& radius) const {
  Rational total = 0;
  for (auto it = atoms.lower_bound(Rational(center - radius)); it != atoms.end(); ++it) {
    if (it->first > center + radius) break;
    total += it->second;
  }
  return total;
}

std::pair<Rational, Rational> ValueDistribution::sup_point() const {
  // (probability, value); atoms ascend by value, so strict > keeps the smallest tied value
  std::pair<Rational, Rational> best{0, 0};
  bool first = true;
  for (const auto& [value, prob] : atoms) {
    if (first || prob > best.first) {
      best = {prob, value};
      first = false;
    }
  }
  return best;
}

Rational ValueDistribution::total_mass() const {
  Rational total = 0;
  for (const auto& [value, prob] : atoms) total += prob;
  return total;
}

// ---- exhaustive distributions ------------------------------------------------

namespace {

struct ActiveLayout {
  std::vector<Vertex> vars;                   // active variable ids
  std::vector<std::uint32_t> masks;           // per term, bitmask over active positions
  std::vector<Rational> coeffs;               // per term
};

ActiveLayout layout_of(const MultilinearPoly& p) {
  ActiveLayout layout;
  layout.vars = p.active_variables();
  if (layout.vars.size() > kMaxActiveVariables) {
    throw InputError("exhaustive_distribution: " + std::to_string(layout.vars.size()) +
                     " active variables exceeds the limit of " + std::to_string(kMaxActiveVariables));
  }
  for (const auto& [w, c] : p.coeffs()) {
    std::uint32_t mask = 0;
    for (Vertex v : w) {
      auto pos = std::lower_bound(layout.vars.begin(), layout.vars.end(), v) - layout.vars.begin();
      mask |= 1U << pos;
    }
    layout.masks.push_back(mask);
    layout.coeffs.push_back(c);
  }
  return layout;
}

const Rational* bernoulli_p(const InputLaw& law) {
  if (const auto* b = std::get_if<Bernoulli>(&law)) {
    if (b->p < 0 || b->p > 1) throw InputError("Bernoulli parameter must lie in [0, 1]");
    return &b->p;
  }
  return nullptr;
}

// Converts a histogram keyed by (scaled value, number of set bits) into atoms.
template <typename Histogram>
ValueDistribution to_distribution(const Histogram& hist, const Rational& scale, unsigned s,
                                  const Rational* p) {
  std::vector<Rational> weight(s + 1);
  if (p == nullptr) {
    const Rational uniform(Integer(1), pow_int(2, s));
    for (auto& w : weight) w = uniform;
  } else {
    const Rational q = 1 - *p;
    for (unsigned h = 0; h <= s; ++h) weight[h] = pow_rat(*p, h) * pow_rat(q, s - h);
  }
  ValueDistribution dist;
  for (const auto& [key, count] : hist) {
    const Rational mass = weight[key.second] * Rational(Integer(static_cast<unsigned long>(count)));
    if (mass == 0) continue;
    Rational value = Rational(key.first) / scale;
    dist.atoms[value] += mass;
  }
  return dist;
}

struct KeyHash {
  std::size_t operator()(const std::pair<std::int64_t, unsigned>& k) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ULL ^ k.second);
  }
};

}  // namespace

ValueDistribution exhaustive_distribution_reference(const MultilinearPoly& p, const InputLaw& law) {
  const ActiveLayout layout = layout_of(p);
  const Rational* bern = bernoulli_p(law);
  const auto s = static_cast<unsigned>(layout.vars.size());
  std::vector<Rational> x(p.n(), Rational(0));
  ValueDistribution dist;
  for (std::uint64_t assign = 0; assign < (1ULL << s); ++assign) {
    Rational weight = 1;
    for (unsigned j = 0; j < s; ++j) {
      const bool set = (assign >> j) & 1U;
      if (bern == nullptr) {
        x[layout.vars[j] - 1] = set ? -1 : 1;
        weight /= 2;
      } else {
        x[layout.vars[j] - 1] = set ? 1 : 0;
        weight *= set ? *bern : Rational(1 - *bern);
      }
    }
    if (weight == 0) continue;
    dist.atoms[evaluate(p, x)] += weight;
  }
  return dist;
}

ValueDistribution exhaustive_distribution(const MultilinearPoly& p, const InputLaw& law) {
  const ActiveLayout layout = layout_of(p);
  const Rational* bern = bernoulli_p(law);
  const bool rademacher = bern == nullptr;
  const auto s = static_cast<unsigned>(layout.vars.size());
  const std::size_t terms = layout.masks.size();

  // Common denominator; integer coefficients must keep every partial sum in 62 bits.
  Integer scale = 1;
  for (const Rational& c : layout.coeffs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::int64_t> icoeff(terms);
  Integer abs_sum = 0;
  for (std::size_t t = 0; t < terms; ++t) {
    const Integer scaled = layout.coeffs[t].get_num() * (scale / layout.coeffs[t].get_den());
    abs_sum += abs(scaled);
    if (scaled.fits_slong_p()) icoeff[t] = scaled.get_si();
  }
  if (abs_sum >= pow_int(2, 62)) return exhaustive_distribution_reference(p, law);

  // Terms touching each active variable.
  std::vector<std::vector<std::uint32_t>> touching(s);
  for (std::size_t t = 0; t < terms; ++t) {
    for (unsigned j = 0; j < s; ++j) {
      if ((layout.masks[t] >> j) & 1U) touching[j].push_back(static_cast<std::uint32_t>(t));
    }
  }

  using Key = std::pair<std::int64_t, unsigned>;
  const unsigned block_bits = std::min(s, 6U);
  const unsigned low_bits = s - block_bits;
  const std::int64_t blocks = std::int64_t{1} << block_bits;
  std::map<Key, std::uint64_t> merged;

#pragma omp parallel
  {
    std::unordered_map<Key, std::uint64_t, KeyHash> local;
    std::vector<std::int8_t> sign(terms);
    std::vector<std::uint8_t> missing(terms);

#pragma omp for schedule(dynamic)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint32_t prefix = static_cast<std::uint32_t>(b) << low_bits;
      std::uint32_t assign = prefix;
      std::int64_t value = 0;
      for (std::size_t t = 0; t < terms; ++t) {
        if (rademacher) {
          sign[t] = (std::popcount(layout.masks[t] & assign) & 1) ? -1 : 1;
          value += sign[t] * icoeff[t];
        } else {
          missing[t] = static_cast<std::uint8_t>(std::popcount(layout.masks[t] & ~assign));
          if (missing[t] == 0) value += icoeff[t];
        }
      }
      const std::uint64_t steps = std::uint64_t{1} << low_bits;
      for (std::uint64_t i = 0;; ++i) {
        ++local[{value, rademacher ? 0U : static_cast<unsigned>(std::popcount(assign))}];
        if (i + 1 == steps) break;
        // Gray code: flip the lowest set bit position of i+1.
        const unsigned j = static_cast<unsigned>(std::countr_zero(i + 1));
        const bool now_set = ((assign >> j) & 1U) == 0;
        assign ^= 1U << j;
        for (std::uint32_t t : touching[j]) {
          if (rademacher) {
            value -= 2 * sign[t] * icoeff[t];
            sign[t] = static_cast<std::int8_t>(-sign[t]);
          } else if (now_set) {
            if (--missing[t] == 0) value += icoeff[t];
          } else {
            if (missing[t]++ == 0) value -= icoeff[t];
          }
        }
      }
    }
#pragma omp critical
    for (const auto& [key, count] : local) merged[key] += count;
  }
  return to_distribution(merged, Rational(scale), s, bern);
}

// ---- .mlp format ---------------------------------------------------------------

MultilinearPoly parse_polynomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  MultilinearPoly p;
  std::map<Monomial, std::size_t> first_line;
  const auto fail = [&](const std::string& msg) {
    return InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_header) {
      std::istringstream ls(line);
      long long n = -1;
      std::string extra;
      if (!(ls >> n) || (ls >> extra) || n < 0 || n > 0xFFFFFFFFLL) throw fail("header must be '<n>'");
      p = MultilinearPoly(static_cast<std::uint32_t>(n));
      have_header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw fail("expected '<num>/<den> : v1 v2 ...'");
    Rational c;
    try {
      c = parse_rational(line.substr(0, colon));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
    std::istringstream vs(line.substr(colon + 1));
    Monomial vars;
    std::string tok;
    while (vs >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw fail("bad variable id '" + tok + "'");
      }
      if (used != tok.size() || v < 1 || v > p.n()) throw fail("variable id '" + tok + "' outside [1," + std::to_string(p.n()) + "]");
      vars.push_back(static_cast<Vertex>(v));
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) throw fail("repeated variable in a term");
    if (auto [it, fresh] = first_line.emplace(vars, line_no); !fresh) {
      throw fail("duplicate monomial (first seen on line " + std::to_string(it->second) + ")");
    }
    p.add_term(std::move(vars), c);
  }
  if (!have_header) throw InputError("line 1: missing '<n>' header");
  return p;
}

MultilinearPoly read_polynomial_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open polynomial file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_polynomial(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_polynomial(const MultilinearPoly& p) {
  std::string out = std::to_string(p.n()) + "\n";
  for (const auto& [w, c] : p.coeffs()) {
    out += to_fraction_string(c) + " :";
    for (Vertex v : w) out += " " + std::to_string(v);
    out += '\n';
  }
  return out;
}

void write_polynomial_file(const std::filesystem::path& path, const MultilinearPoly& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write polynomial file " + path.string());
  out << format_polynomial(p);
}

}  // namespace edgestat
