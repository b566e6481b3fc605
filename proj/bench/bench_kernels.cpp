// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>

#include "rotinv/kernels.hpp"

using namespace rotinv;
using namespace rotinv::kernels;

namespace {

template <RealMatrix (*F)(int, int, double)>
void BM_PairingSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int l = 2 * (n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(F(n, l, -0.5));
}

std::vector<std::vector<int>> all_perms(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> full(p);
    for (int q = n; q < total; ++q) full.push_back(q);
    out.push_back(full);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

template <Matrix (*F)(const Matrix&, int, const std::vector<std::vector<int>>&)>
void BM_PermutationSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto perms = all_perms(n, n + 2);
  const Matrix x = Matrix::Random(1 << (n + 2), 1 << (n + 2));
  for (auto _ : state) benchmark::DoNotOptimize(F(x, n + 2, perms));
}

template <RealMatrix (*F)(const std::vector<Matrix>&, const std::vector<SparseMatrix>&,
                          const std::vector<std::pair<int, int>>&)>
void BM_CommutatorBatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto dim = static_cast<Eigen::Index>(1) << n;
  std::vector<Matrix> lhs;
  for (int i = 0; i < 16; ++i) {
    Matrix a = Matrix::Random(dim, dim);
    lhs.push_back(a - a.adjoint());
  }
  std::vector<SparseMatrix> rhs;
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) rhs.push_back((exchange_op(n, r, s).matrix() * Complex(0, 1)).sparseView());
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < static_cast<int>(rhs.size()); ++j) pairs.emplace_back(i, j);
  }
  for (auto _ : state) benchmark::DoNotOptimize(F(lhs, rhs, pairs));
}

template <std::vector<Matrix> (*F)(const Matrix&, int)>
void BM_PauliSplit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = Matrix::Random(1 << n, 1 << n);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, n));
}

}  // namespace

BENCHMARK(BM_PairingSum<serial::pairing_sum>)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairingSum<parallel::pairing_sum>)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationSum<serial::permutation_sum>)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationSum<parallel::permutation_sum>)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorBatch<serial::commutator_batch>)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorBatch<parallel::commutator_batch>)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliSplit<serial::pauli_weight_split>)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliSplit<parallel::pauli_weight_split>)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
