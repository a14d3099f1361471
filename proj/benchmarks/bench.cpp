// Microbenchmarks for the hot paths: parsing, symbolic extraction,
// polynomial evaluation, brute-force enumeration and the fit.

#include <benchmark/benchmark.h>

#include <random>

#include "kernelcost/enumerate.hpp"
#include "kernelcost/model.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/props.hpp"
#include "kernelcost/simdevice.hpp"
#include "kernelcost/suite.hpp"

namespace kc = kernelcost;

namespace {

const kc::SuiteLibrary& suite() {
  static const kc::SuiteLibrary lib = kc::build_suite();
  return lib;
}

const std::string& tiled_text() {
  static const std::string text =
      suite().find("matmul_tiled_g16x16")->text;
  return text;
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    kc::KernelIR k = kc::parse_kernel(tiled_text());
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_Parse);

void BM_ExtractSymbolic(benchmark::State& state) {
  const kc::KernelIR k = kc::parse_kernel(tiled_text());
  for (auto _ : state) {
    kc::PropertyVector pv = kc::extract_properties(k);
    benchmark::DoNotOptimize(pv);
  }
}
BENCHMARK(BM_ExtractSymbolic);

void BM_EvaluateProperties(benchmark::State& state) {
  const kc::KernelIR k = kc::parse_kernel(tiled_text());
  const kc::PropertyVector pv = kc::extract_properties(k);
  const kc::Binding b{{"n", 1024}, {"m", 1024}, {"l", 1024}};
  for (auto _ : state) {
    kc::PropertyVector bound = kc::evaluate_properties(k, pv, b);
    benchmark::DoNotOptimize(bound);
  }
}
BENCHMARK(BM_EvaluateProperties);

void BM_Enumerate(benchmark::State& state) {
  const kc::KernelIR k = kc::parse_kernel(tiled_text());
  const kc::Binding b{{"n", kc::Int(16 * state.range(0))},
                      {"m", kc::Int(16 * state.range(0))},
                      {"l", kc::Int(16 * state.range(0))}};
  kc::Int points = 0;
  for (auto _ : state) {
    kc::EnumTally t = kc::enumerate_points(k, b, kc::Int(100000000));
    points = t.points;
    benchmark::DoNotOptimize(t);
  }
  state.counters["points"] =
      static_cast<double>(kc::to_int64(points));
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2)->Arg(4);

void BM_Fit(benchmark::State& state) {
  const kc::SimDevice dev = kc::SimDevice::reference();
  const auto& lib = suite();
  std::vector<kc::FitCase> cases;
  for (const auto& c : lib.measurement_cases()) {
    const kc::SuiteKernel* sk = lib.find(c.kernel_id);
    const kc::KernelIR k = kc::parse_kernel(sk->text);
    const auto pv = kc::extract_properties(k, c.binding, kc::Int(20000000));
    cases.push_back({pv, kc::noiseless_time(dev, pv)});
    if (cases.size() >= 120) break;  // keep setup bounded
  }
  const auto d = kc::build_design_matrix(cases);
  for (auto _ : state) {
    auto fit = kc::fit_weights(d, "bench");
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_Fit);

}  // namespace

BENCHMARK_MAIN();
