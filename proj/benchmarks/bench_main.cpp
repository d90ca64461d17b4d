#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/kempf_ness.hpp"
#include "orbitkit/lattice_cone.hpp"
#include "orbitkit/measure_mult.hpp"
#include "orbitkit/polynomial.hpp"

using namespace orbitkit;

namespace {

std::vector<WeightSemigroup> random_systems(int count, int dim, int gens) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::vector<WeightSemigroup> out;
  for (int i = 0; i < count; ++i) {
    std::vector<WeightVector> rows;
    for (int j = 0; j < gens; ++j) {
      WeightVector row(dim);
      for (auto& x : row) x = entry(rng);
      rows.push_back(std::move(row));
    }
    out.push_back(WeightSemigroup::from_generators(dim, std::move(rows)));
  }
  return out;
}

void BM_ConePointedness(benchmark::State& state) {
  const auto systems = random_systems(64, static_cast<int>(state.range(0)), 6);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_is_pointed(systems[i++ % systems.size()]));
  }
}
BENCHMARK(BM_ConePointedness)->Arg(2)->Arg(4);

void BM_SemigroupEnumerate(benchmark::State& state) {
  const auto s = WeightSemigroup::from_generators(2, {{2, -1}, {-1, 2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(semigroup_enumerate(s, state.range(0), 5'000'000));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SemigroupEnumerate)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_HaarSampleU4(benchmark::State& state) {
  const auto g = CompactMatrixGroup::unitary_group(4);
  RandomStream rs(SamplerState{1, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_sample(g, rs));
  }
}
BENCHMARK(BM_HaarSampleU4);

void BM_MonomialEvalAll(benchmark::State& state) {
  const MonomialTable table = MonomialTable::build(3, 6, 100000);
  Eigen::VectorXcd z(3);
  z << std::complex<double>(0.3, 0.1), std::complex<double>(-0.2, 0.8),
      std::complex<double>(0.9, -0.4);
  std::vector<std::complex<double>> values;
  for (auto _ : state) {
    table.eval_all(z, values);
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(BM_MonomialEvalAll);

void BM_OrbitAverageSphere(benchmark::State& state) {
  const auto g = sphere_fixture_group();
  const Eigen::VectorXcd v = sphere_fixture_vector();
  const Polynomial p = Polynomial::monomial(2, {1, 1});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        orbit_average(g, v, p, static_cast<std::uint64_t>(state.range(0)),
                      SamplerState{seed++, 0}));
  }
}
BENCHMARK(BM_OrbitAverageSphere)->Arg(4096)->Arg(16384);

void BM_FlowToZero(benchmark::State& state) {
  const auto g = CompactMatrixGroup::torus_group(TorusAction::create(1, {{1}, {2}}));
  Eigen::VectorXcd v(2);
  v << std::complex<double>(1.0, 0.0), std::complex<double>(1.0, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_minimize(g, v));
  }
}
BENCHMARK(BM_FlowToZero);

}  // namespace

BENCHMARK_MAIN();
