#pragma once

// Sparse multilinear polynomials with exact rational coefficients, their
// threshold hypergraphs, substitution, and exact value distributions under
// independent Rademacher or Bernoulli inputs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/hypergraph.hpp"

namespace edgestat {

/// Sorted, duplicate-free list of variable ids in [1, n]; {} is the constant term.
using Monomial = std::vector<Vertex>;

class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  explicit MultilinearPoly(std::uint32_t n) : n_(n) {}

  /// Adds c * x^vars (vars in any order, distinct, within [1, n]).
  /// Coefficients of the same monomial accumulate; zeros are dropped.
  void add_term(Monomial vars, const Rational& c);

  std::uint32_t n() const { return n_; }
  const std::map<Monomial, Rational>& coeffs() const { return coeffs_; }
  Rational coefficient(const Monomial& vars) const;
  unsigned degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }

  /// Variables occurring in some nonzero term, ascending.
  std::vector<Vertex> active_variables() const;

  bool operator==(const MultilinearPoly&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::map<Monomial, Rational> coeffs_;
};

/// Σ_{W ∈ E(G)} x^W.
MultilinearPoly lambda_of(const Hypergraph& g);

/// Exact value at x (x.size() must equal P.n(); x[i] is variable i+1).
Rational evaluate(const MultilinearPoly& p, std::span<const Rational> x);

/// Value at the 0/1 indicator vector of `ones`.
Rational evaluate_indicator(const MultilinearPoly& p, const VertexSet& ones);

/// d-uniform hypergraph of monomials of size d (d >= 1) with |coefficient| > a.
Hypergraph threshold_hypergraph(const MultilinearPoly& p, const Rational& a, std::uint32_t d);

/// The d = 0 case: whether |constant term| > a (its hypergraph has at most one edge).
bool threshold_constant_nonempty(const MultilinearPoly& p, const Rational& a);

/// Substitutes x_i := value for every assigned i.
MultilinearPoly restrict(const MultilinearPoly& p, const std::map<Vertex, Rational>& assignment);

/// Product with the reduction x_i^2 = 1.
MultilinearPoly multiply_sign_reduced(const MultilinearPoly& a, const MultilinearPoly& b);

/// x_1 + ... + x_m.
MultilinearPoly linear_form(std::uint32_t m);

/// (x_1 + ... + x_m)^d multilinearized with x_i^2 = 1.
MultilinearPoly multilinearized_power(std::uint32_t m, std::uint32_t d);

struct Rademacher {};
struct Bernoulli {
  Rational p;
};
using InputLaw = std::variant<Rademacher, Bernoulli>;

/// Finite law on exact rationals; every stored probability is positive.
struct ValueDistribution {
  std::map<Rational, Rational> atoms;

  Rational probability_of(const Rational& value) const;
  /// Pr[|X - center| <= radius].
  Rational probability_within(const Rational& center, const Rational& radius) const;
  /// Largest point probability and the smallest value attaining it.
  std::pair<Rational, Rational> sup_point() const;
  Rational total_mass() const;

  bool operator==(const ValueDistribution&) const = default;
};

inline constexpr unsigned kMaxActiveVariables = 24;

/// Exact law of P over all 2^s assignments of its s active variables.
/// Parallel Gray-code walk over integer-scaled coefficients; falls back to
/// exact rational evaluation when the scaled values do not fit in 62 bits.
ValueDistribution exhaustive_distribution(const MultilinearPoly& p, const InputLaw& law);

/// Serial reference: evaluates P exactly at every assignment.
ValueDistribution exhaustive_distribution_reference(const MultilinearPoly& p, const InputLaw& law);

// ---- .mlp text format ------------------------------------------------------
// line 1: "<n>"; then "<num>/<den> : v1 v2 ..." per term (no ids for the
// constant term); '#' comments and blank lines ignored.

MultilinearPoly parse_polynomial(std::string_view text);
MultilinearPoly read_polynomial_file(const std::filesystem::path& path);
std::string format_polynomial(const MultilinearPoly& p);
void write_polynomial_file(const std::filesystem::path& path, const MultilinearPoly& p);

}  // namespace edgestat
