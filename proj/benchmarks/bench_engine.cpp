#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "gbnl/fastbetti.hpp"
#include "gbnl/featurize.hpp"
#include "gbnl/learn/gbdt.hpp"
#include "gbnl/oracle.hpp"

namespace {

gbnl::PositionCloud cloud(std::size_t n, gbnl::Position window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<gbnl::Position> chosen;
  while (chosen.size() < n) chosen.insert(static_cast<gbnl::Position>(1 + rng() % static_cast<std::uint64_t>(window)));
  return gbnl::PositionCloud(std::vector<gbnl::Position>(chosen.begin(), chosen.end()));
}

void BM_FastEngine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = cloud(n, static_cast<gbnl::Position>(3 * n), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gbnl::graded_betti_fast(c, 4));
}
BENCHMARK(BM_FastEngine)->Arg(8)->Arg(12)->Arg(35)->Arg(93);

void BM_Oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = cloud(n, static_cast<gbnl::Position>(3 * n), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gbnl::graded_betti_bruteforce(gbnl::GapGraph(c, 4)));
}
BENCHMARK(BM_Oracle)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ComponentDistribution(benchmark::State& state) {
  const auto c = cloud(93, 200, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gbnl::component_distribution(c, 5));
}
BENCHMARK(BM_ComponentDistribution)->Unit(benchmark::kMillisecond);

void BM_SequenceCurves(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::string seq;
  for (int k = 0; k < 120; ++k) seq += "ACGT"[rng() % 4];
  const auto grid = gbnl::grid_range(0, 9);
  for (auto _ : state) benchmark::DoNotOptimize(gbnl::sequence_curves(seq, grid));
}
BENCHMARK(BM_SequenceCurves)->Unit(benchmark::kMillisecond);

void BM_GbdtTrain(benchmark::State& state) {
  std::mt19937_64 rng(4);
  gbnl::Matrix x(186, 400);
  std::vector<double> y(186);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) = static_cast<double>(rng() % 100);
    y[r] = x(r, 0) - 0.5 * x(r, 1);
  }
  gbnl::learn::GbdtConfig config;
  config.n_estimators = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gbnl::learn::gbdt_train(x, y, config));
}
BENCHMARK(BM_GbdtTrain)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
