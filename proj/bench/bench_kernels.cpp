#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tensorspec/kernels.hpp"
#include "tensorspec/multi_index.hpp"
#include "tensorspec/tensor.hpp"

namespace ts = tensorspec;
namespace k = tensorspec::kernels;

namespace {

ts::SymTensor random_tensor(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ts::SymTensor::Builder b(m, n);
  ts::for_each_sorted_index(n, m, [&](std::span<const int> idx) {
    b.set(ts::MultiIndex(idx.begin(), idx.end()), normal(rng));
  });
  return b.build();
}

std::vector<int> all_sorted(int m, int n) {
  std::vector<int> out;
  ts::for_each_sorted_index(n, m, [&](std::span<const int> idx) {
    out.insert(out.end(), idx.begin(), idx.end());
  });
  return out;
}

template <bool Parallel>
void BM_Transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_tensor(4, n, 1);
  const ts::Matrix p = ts::Matrix::Random(n, n);
  const auto idx = all_sorted(4, n);
  for (auto _ : state) {
    auto r = Parallel ? k::omp::transform_entries(a, p, idx)
                      : k::serial::transform_entries(a, p, idx);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_AngleResiduals(benchmark::State& state) {
  const auto a = random_tensor(static_cast<int>(state.range(0)), 2, 2);
  std::vector<double> thetas(4097);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    thetas[i] = std::numbers::pi * static_cast<double>(i) / 4096.0;
  }
  for (auto _ : state) {
    auto r = Parallel ? k::omp::angle_residuals(a, thetas) : k::serial::angle_residuals(a, thetas);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_SphereSeeds(benchmark::State& state) {
  const auto a = random_tensor(static_cast<int>(state.range(0)), 3, 3);
  std::vector<ts::Vector> seeds;
  for (int j = 0; j < 64; ++j) {
    const double theta = (j + 0.5) * 0.5 * std::numbers::pi / 64;
    for (int i = 0; i < 256; ++i) {
      const double phi = i * 2.0 * std::numbers::pi / 256;
      ts::Vector x(3);
      x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
      seeds.push_back(x);
    }
  }
  const k::NewtonOptions opts;
  for (auto _ : state) {
    auto r = Parallel ? k::omp::polish_sphere_seeds(a, seeds, opts)
                      : k::serial::polish_sphere_seeds(a, seeds, opts);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_MultilinearRestarts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_tensor(4, n, 4);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<std::vector<ts::Vector>> starts(32);
  for (auto& s : starts) {
    for (int mode = 0; mode < 4; ++mode) {
      ts::Vector v(n);
      for (int i = 0; i < n; ++i) v[i] = normal(rng);
      s.push_back(v.normalized());
    }
  }
  for (auto _ : state) {
    auto r = Parallel ? k::omp::multilinear_restarts(a, starts, 500, 1e-15)
                      : k::serial::multilinear_restarts(a, starts, 500, 1e-15);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_Transform<false>)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Transform<true>)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AngleResiduals<false>)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AngleResiduals<true>)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_SphereSeeds<false>)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SphereSeeds<true>)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MultilinearRestarts<false>)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultilinearRestarts<true>)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
