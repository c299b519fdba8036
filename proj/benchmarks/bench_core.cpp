#include <benchmark/benchmark.h>

#include "k3cert/classifier.hpp"
#include "k3cert/conditions.hpp"
#include "k3cert/positivity.hpp"
#include "k3cert/qform.hpp"

using namespace k3cert;

static void BM_SlabEnumerationU(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("U");
  for (auto _ : state) {
    auto roots = qform::enumerate_norm_vectors(entry.ample, -2, state.range(0));
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_SlabEnumerationU)->Arg(10)->Arg(40)->Arg(160);

static void BM_SlabEnumerationRank4(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("rank4-exceptional-1");
  for (auto _ : state) {
    auto roots = qform::enumerate_norm_vectors(entry.ample, -2, state.range(0));
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_SlabEnumerationRank4)->Arg(5)->Arg(10)->Arg(20);

static void BM_IsotropyClosedForm(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("bryan-leung");
  for (auto _ : state) {
    auto verdict = qform::isotropic_exists(entry.lattice);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_IsotropyClosedForm);

static void BM_IsotropyLocalGlobal(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("rank4-exceptional-1");
  for (auto _ : state) {
    auto verdict = qform::isotropic_exists(entry.lattice);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_IsotropyLocalGlobal);

static void BM_RepresentsDescent(benchmark::State& state) {
  auto lattice = Lattice::make({{2, 0}, {0, -6}});
  for (auto _ : state) {
    auto result = qform::represents(lattice, -2);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RepresentsDescent);

static void BM_MinimalNefDecompose(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("U");
  const DivisorClass d(entry.lattice, {Int(state.range(0)), Int(state.range(0) + 1)});
  for (auto _ : state) {
    auto decomposition = positivity::minimal_nef_decompose(d, entry.roots);
    benchmark::DoNotOptimize(decomposition);
  }
}
BENCHMARK(BM_MinimalNefDecompose)->Arg(1)->Arg(3)->Arg(6);

static void BM_CheckA2(benchmark::State& state) {
  const auto& entry = classifier::corpus_entry("bryan-leung");
  const DivisorClass l(entry.lattice, {3, 9});
  for (auto _ : state) {
    auto witness = conditions::check_A2(l, entry.roots);
    benchmark::DoNotOptimize(witness);
  }
}
BENCHMARK(BM_CheckA2);

static void BM_ClassifyCorpus(benchmark::State& state) {
  const auto& entries = classifier::corpus();
  for (auto _ : state) {
    for (const auto& entry : entries) {
      auto cert = classifier::classify(entry.ample, entry.ample * 3, 0, entry.roots);
      benchmark::DoNotOptimize(cert);
    }
  }
}
BENCHMARK(BM_ClassifyCorpus);

BENCHMARK_MAIN();
