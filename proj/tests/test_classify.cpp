#include "doctest.h"
#include "kernelcost/classify.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/props.hpp"
#include "kernelcost/suite.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;

TEST_CASE("ratio classification against hand counts") {
  auto cls = [](long s, long cells, long fill) {
    return kc::classify_ratio(Int(s), Int(cells), Int(fill));
  };
  CHECK(cls(0, 1, 1) == "uniform");
  CHECK(cls(1, 100, 100) == "1/1");
  CHECK(cls(1, 100, 199) == "1/1");  // utilization ignored at stride 1

  CHECK(cls(2, 257, 514) == "1/2");  // exactly half utilized
  CHECK(cls(2, 257, 512) == "2/2");  // just above half
  CHECK(cls(2, 100, 100) == "2/2");

  CHECK(cls(3, 100, 298) == "2/3");  // vector op shape: u = n/(3n-2)
  CHECK(cls(3, 100, 300) == "1/3");  // exactly one third
  CHECK(cls(3, 100, 100) == "3/3");

  CHECK(cls(4, 100, 400) == "1/4");
  CHECK(cls(4, 100, 100) == "4/4");

  CHECK(cls(5, 100, 100) == "4/>4");   // q clamps at 4
  CHECK(cls(7, 100, 694) == "2/>4");
  CHECK(cls(100, 100, 9999) == "2/>4");
  CHECK(cls(100, 1, 1) == "4/>4");
}

TEST_CASE("quantization matches the closed form bound") {
  // q = ceil(cells * s / fill) = (cells*s + fill - 1) / fill, clamped to 4
  for (long s = 2; s <= 9; ++s)
    for (long cells = 1; cells <= 40; ++cells)
      for (long fill = cells; fill <= 3 * cells; fill += 3) {
        long q = static_cast<long>((cells * s + fill - 1) / fill);
        q = std::max(1L, std::min(4L, q));
        const std::string denom = s <= 4 ? std::to_string(s) : ">4";
        CHECK(kc::classify_ratio(Int(s), Int(cells), Int(fill)) ==
              std::to_string(q) + "/" + denom);
      }
}

TEST_CASE("symbolic classification proves the vector op shape") {
  // stride 2, cells n, fill 2n-1: u > 1/2 for every n >= 1, so 2/2
  const kc::KernelIR k = kc::parse_kernel(
      "kernel t\nparam n\nassume n >= 1\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n");
  const auto actx = kc::build_assume_ctx(k);
  const kc::DecideCtx dc(actx);
  const CountExpr n = CountExpr::var("n");
  const CountExpr two = CountExpr::from_int(2);

  CHECK(kc::classify_symbolic(two, n,
                              n.scaled(kc::Rat(2)) - CountExpr::from_int(1),
                              dc) == "2/2");
  // stride 3, cells n, fill 3n-2: q flips from 3 at n=1 to 2 from n=2 on,
  // so it only resolves under the tighter assumption
  CHECK_THROWS_AS(kc::classify_symbolic(CountExpr::from_int(3), n,
                                        n.scaled(kc::Rat(3)) - two, dc),
                  kc::Error);
  const kc::KernelIR k2 = kc::parse_kernel(
      "kernel t\nparam n\nassume n >= 2\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n");
  const auto actx2 = kc::build_assume_ctx(k2);
  const kc::DecideCtx dc2(actx2);
  CHECK(kc::classify_symbolic(CountExpr::from_int(3), n,
                              n.scaled(kc::Rat(3)) - two, dc2) == "2/3");
  // dense: fill == cells
  CHECK(kc::classify_symbolic(CountExpr::from_int(3), n, n, dc) == "3/3");
  // parametric stride needs a lower bound proof for the >4 bucket
  CHECK_THROWS_AS(kc::classify_symbolic(n, n, n, dc), kc::Error);

  const kc::KernelIR k5 = kc::parse_kernel(
      "kernel t\nparam n\nassume n >= 5\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n");
  const auto actx5 = kc::build_assume_ctx(k5);
  const kc::DecideCtx dc5(actx5);
  CHECK(kc::classify_symbolic(n, n, n, dc5) == "4/>4");
}

TEST_CASE("boundary kernels classify through full extraction") {
  // 257 cells in a fill of 514: exactly 50% utilized at stride 2
  const kc::KernelIR half = kc::parse_kernel(
      "kernel half\n"
      "array a : f32 [514] global row_major in\n"
      "array o : f32 [256] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 256\n"
      "o[l0] = a[2*l0] + a[513]\n");
  const kc::PropertyVector pv = kc::extract_properties(half, {});
  CHECK(pv.at("mem.global.load.s32.1/2").evaluate({}) == 256);
  CHECK(pv.at("mem.global.load.s32.uniform").evaluate({}) == 256);
  CHECK(pv.at("mem.global.load.s32.2/2").is_zero());

  // 257 cells in a fill of 512: 50% + epsilon, one step up
  const kc::KernelIR above = kc::parse_kernel(
      "kernel above\n"
      "array a : f32 [512] global row_major in\n"
      "array o : f32 [256] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 256\n"
      "o[l0] = a[2*l0] + a[511]\n");
  const kc::PropertyVector pv2 = kc::extract_properties(above, {});
  CHECK(pv2.at("mem.global.load.s32.2/2").evaluate({}) == 256);
  CHECK(pv2.at("mem.global.load.s32.1/2").is_zero());
}

TEST_CASE("transpose direct kernels hit the saturated bucket") {
  const kc::SuiteLibrary lib = kc::build_suite();
  const kc::KernelIR gather =
      kc::parse_kernel(lib.find("transpose_gather_g16x16")->text);
  const kc::PropertyVector pv = kc::extract_properties(gather);
  const kc::Binding b{{"n", 128}};
  // gather: load column-wise (stride n), store row-wise
  CHECK(pv.at("mem.global.load.s32.4/>4").evaluate(b) == 128 * 128);
  CHECK(pv.at("mem.global.store.s32.1/1").evaluate(b) == 128 * 128);
  CHECK(pv.at("mem.global.load.s32.1/1").is_zero());

  const kc::KernelIR scatter =
      kc::parse_kernel(lib.find("transpose_scatter_g16x16")->text);
  const kc::PropertyVector pv2 = kc::extract_properties(scatter);
  CHECK(pv2.at("mem.global.store.s32.4/>4").evaluate(b) == 128 * 128);
  CHECK(pv2.at("mem.global.load.s32.1/1").evaluate(b) == 128 * 128);
}

TEST_CASE("element size picks the schema size bucket") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel w\nparam n\nassume n % 64 == 0 and n >= 64\n"
      "array a : f64 [n] global row_major in\n"
      "array b : i32 [n] global row_major in\n"
      "array o : f64 [n] global row_major out\n"
      "axis g0 = group(0) extent n // 64\naxis l0 = local(0) extent 64\n"
      "o[64*g0 + l0] = a[64*g0 + l0] + 1.0 * b[64*g0 + l0]\n");
  const kc::Binding b{{"n", 128}};
  const kc::PropertyVector pv = kc::extract_properties(k, b);
  CHECK(pv.at("mem.global.load.s64.1/1").evaluate(b) == 128);
  CHECK(pv.at("mem.global.load.s32.1/1").evaluate(b) == 128);
  CHECK(pv.at("mem.global.store.s64.1/1").evaluate(b) == 128);
  CHECK(pv.at("mem.minls.s64.1/1").evaluate(b) == 128);
  CHECK(pv.at("mem.minls.s32.1/1").is_zero());  // no s32 stores
}
