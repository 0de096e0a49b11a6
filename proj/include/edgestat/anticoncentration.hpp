#pragma once

// Exact anticoncentration and slice-vs-product comparisons: hypergeometric
// vs binomial total variation, the Bin(n, p) point-one maximum, point
// probabilities of nonnegative polynomials of Bernoulli inputs, juntas on
// the slice, and slice moments.

#include <cstdint>
#include <optional>
#include <vector>

#include "edgestat/exact.hpp"
#include "edgestat/multilinear.hpp"

namespace edgestat {

struct TVReport {
  Rational tv;
  Rational bound;
  bool precondition_met = false;
  bool ok() const { return !precondition_met || tv <= bound; }
};

/// d_TV(Hyp(n, k, t), Bin(t, k/n)); bound (t-1)/(n-1); precondition (k/n)(1-k/n) t >= 1.
/// Requires n >= 2 (the bound divides by n - 1).
TVReport hypergeom_binom_tv(std::uint32_t n, std::uint32_t k, std::uint32_t t);

struct EhmRow {
  std::uint32_t n = 0, k = 0, t = 0;
  TVReport report;
};

/// Every (n, k, t) with 2 <= n <= n_max, 1 <= k <= n/2, 1 <= t <= n whose
/// precondition holds, in lexicographic order.
std::vector<EhmRow> ehm_sweep(std::uint32_t n_max);

inline constexpr std::uint64_t kMaxPointOneArgmax = 1'000'000;

/// max over n >= 1 of n p (1-p)^(n-1), attained at n = floor((1-p)/p) + 1.
Rational max_binom_point_one(const Rational& p);
std::uint64_t max_binom_point_one_argmax(const Rational& p);

struct PoissonReport {
  Rational probability;        // Pr[|F(beta) - l| <= t]
  Rational sharp_bound;        // max_binom_point_one(p)
  std::uint32_t active = 0;    // s
  bool precondition_met = false;  // l > 3^s t
  std::optional<bool> below_e_gamma;  // probability <= 1/e + gamma, when gamma is given
  bool ok() const { return !precondition_met || probability <= sharp_bound; }
};

inline constexpr unsigned kMaxPoissonVariables = 20;

PoissonReport poisson_check(const MultilinearPoly& f, const Rational& p, const Rational& l, const Rational& t,
                            std::optional<double> gamma = std::nullopt);

inline constexpr unsigned kMaxJuntaCoordinates = 14;

/// F is given by its values on the subsets of an s-set S (index = bitmask).
/// Compares F(sigma|S), sigma ~ Slice(n, k), with F(beta|S), beta i.i.d.
/// Bernoulli(k/n). Bound (max(s, 2n/k) - 1)/(n - 1); precondition 1 <= k <= n/2.
TVReport junta_tv(const std::vector<Rational>& table, std::uint32_t n, std::uint32_t k);

/// E[sigma^W] on Slice(n, k): (k)_w / (n)_w.
Rational slice_monomial_mean(std::uint32_t n, std::uint32_t k, std::uint32_t w);

/// Cov(sigma^W, sigma^T) on Slice(n, k).
Rational slice_covariance(std::uint32_t n, std::uint32_t k, const VertexSet& w, const VertexSet& t);

struct SliceMoments {
  Rational mean;
  Rational variance;
  bool operator==(const SliceMoments&) const = default;
};

/// Exact mean and variance of lambda(sigma), sigma ~ Slice(n, k), grouping
/// pairs of monomials by sizes and overlap through sums over common subsets.
SliceMoments slice_moments(const MultilinearPoly& lambda, std::uint32_t n, std::uint32_t k);

/// Reference: the double sum over pairs of monomials.
SliceMoments slice_moments_reference(const MultilinearPoly& lambda, std::uint32_t n, std::uint32_t k);

}  // namespace edgestat
