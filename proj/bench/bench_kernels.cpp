// Parallel kernels against their serial references on fixed seeded inputs.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "edgestat/cover.hpp"
#include "edgestat/discrepancy.hpp"
#include "edgestat/edge_statistics.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/slice_coupling.hpp"

using namespace edgestat;

namespace {

const Hypergraph& profile_graph() {
  static const Hypergraph g = random_hypergraph(24, 3, 1, 4, 1);
  return g;
}

const Hypergraph& sample_graph() {
  static const Hypergraph g = random_hypergraph(200, 3, 1, 100, 2);
  return g;
}

const Hypergraph& discrepancy_graph() {
  static const Hypergraph g = random_hypergraph(14, 2, 1, 2, 3);
  return g;
}

const MultilinearPoly& dense_poly() {
  static const MultilinearPoly p = [] {
    MultilinearPoly q = multilinearized_power(18, 2);
    q.add_term({1, 2, 3}, make_rational(1, 3));
    return q;
  }();
  return p;
}

const Hypergraph& cover_graph() {
  static const Hypergraph g = random_hypergraph(16, 3, 1, 8, 4);
  return g;
}

const VertexSet& cover_set() {
  static const VertexSet y = VertexSet::interval(1, 16);
  return y;
}

void BM_profile(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(exact_profile(profile_graph(), 8));
}
void BM_profile_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(exact_profile_reference(profile_graph(), 8));
}

void BM_estimate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(estimate_point(sample_graph(), 40, 3, 20000, 7));
}
void BM_estimate_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(estimate_point_reference(sample_graph(), 40, 3, 20000, 7));
}

void BM_distribution(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(exhaustive_distribution(dense_poly(), Rademacher{}));
}
void BM_distribution_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(exhaustive_distribution_reference(dense_poly(), Rademacher{}));
}

void BM_identity(benchmark::State& st) {
  const auto lambda = lambda_of(random_hypergraph(24, 2, 1, 2, 5));
  const auto pairs = sample_coupling(24, 12, 6).pairs;
  for (auto _ : st) benchmark::DoNotOptimize(identity_check(lambda, pairs));
}
void BM_identity_reference(benchmark::State& st) {
  const auto lambda = lambda_of(random_hypergraph(24, 2, 1, 2, 5));
  const auto pairs = sample_coupling(24, 12, 6).pairs;
  for (auto _ : st) benchmark::DoNotOptimize(identity_check_reference(lambda, pairs));
}

void BM_discrepancy(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(q_discrepancy(discrepancy_graph(), 2));
}
void BM_discrepancy_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(q_discrepancy_reference(discrepancy_graph(), 2));
}

void BM_verify(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_cover(cover_graph(), cover_set(), 1));
}

}  // namespace

BENCHMARK(BM_profile)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_profile_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_estimate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_estimate_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distribution)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distribution_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_identity)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_identity_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_discrepancy)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_discrepancy_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
