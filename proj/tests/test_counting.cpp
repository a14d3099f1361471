#include <random>

#include "doctest.h"
#include "kernelcost/counting.hpp"
#include "kernelcost/enumerate.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/parser.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;

namespace {

// Count of the single innermost assign statement.
CountExpr symbolic_count(const kc::KernelIR& k) {
  const kc::Stmt* leaf = nullptr;
  kc::walk_stmts(k, [&](const kc::Stmt& s, const auto&) {
    if (s.kind == kc::Stmt::Kind::assign) leaf = &s;
  });
  REQUIRE(leaf != nullptr);
  return kc::count_points(kc::stmt_domain(k, *leaf),
                          kc::build_assume_ctx(k));
}

Int enumerated_count(const kc::KernelIR& k, const kc::Binding& b) {
  const kc::Stmt* leaf = nullptr;
  kc::walk_stmts(k, [&](const kc::Stmt& s, const auto&) {
    if (s.kind == kc::Stmt::Kind::assign) leaf = &s;
  });
  Int visited = 0;
  return kc::domain_point_count(kc::stmt_domain(k, *leaf), b,
                                Int(100000000), visited);
}

kc::KernelIR triangle_kernel() {
  return kc::parse_kernel(
      "kernel tri\nparam n\nassume n >= 1\n"
      "array o : f32 [n, n] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 1\n"
      "loop i = 0 .. n\nloop j = 0 .. i + 1\n"
      "o[i, j] = 1.0\nend\nend\n");
}

}  // namespace

TEST_CASE("triangular domain counts n(n+1)/2") {
  const kc::KernelIR k = triangle_kernel();
  const CountExpr c = symbolic_count(k);
  CHECK(c.evaluate({{"n", 4}}) == 10);
  CHECK(c.evaluate({{"n", 7}}) == 28);
  CHECK(enumerated_count(k, {{"n", 4}}) == 10);
  CHECK(enumerated_count(k, {{"n", 7}}) == 28);
}

TEST_CASE("depth three simplex counts binomial(n,3)") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel simplex\nparam n\nassume n >= 3\n"
      "array o : f32 [n, n] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 1\n"
      "loop i = 0 .. n\nloop j = 0 .. i\nloop p = 0 .. j\n"
      "o[i, j] = 1.0\nend\nend\nend\n");
  const CountExpr c = symbolic_count(k);
  CHECK(c.evaluate({{"n", 7}}) == 35);
  CHECK(c.evaluate({{"n", 3}}) == 1);
  CHECK(enumerated_count(k, {{"n", 7}}) == 35);
}

TEST_CASE("symbolic equals enumeration on random triangle sizes") {
  const kc::KernelIR k = triangle_kernel();
  const CountExpr c = symbolic_count(k);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 15; ++t) {
    const Int n = Int(1 + rng() % 60);
    const kc::Binding b{{"n", n}};
    CHECK(c.evaluate(b) == enumerated_count(k, b));
  }
}

TEST_CASE("counts grow monotonically in the parameter") {
  const CountExpr c = symbolic_count(triangle_kernel());
  Int prev = 0;
  for (long n = 1; n <= 40; ++n) {
    const Int cur = c.evaluate({{"n", Int(n)}});
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("guards fold into exact bounds") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel g\nparam n\nassume n % 16 == 0 and n >= 16\n"
      "array o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent n // 16\naxis l0 = local(0) extent 16\n"
      "guard l0 >= 2 and l0 <= 13\n"
      "o[16*g0 + l0] = 1.0\nend\n");
  const CountExpr c = symbolic_count(k);
  // 12 of 16 lanes survive per group
  CHECK(c.evaluate({{"n", 32}}) == 24);
  CHECK(enumerated_count(k, {{"n", 32}}) == 24);
  CHECK(c.evaluate({{"n", 160}}) == 120);
}

TEST_CASE("floordiv loop bounds simplify under divisibility") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel f\nparam n, m\nassume n >= 1 and m % 16 == 0 and m >= 16\n"
      "array o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n"
      "loop kk = 0 .. m // 16\no[g0] = 1.0\nend\n");
  const CountExpr c = symbolic_count(k);
  // n * m/16, an honest polynomial (no floor atom survives)
  CHECK(c.vars() == std::vector<std::string>{"m", "n"});
  CHECK(c.evaluate({{"n", 3}, {"m", 64}}) == 12);
  CHECK(enumerated_count(k, {{"n", 3}, {"m", 64}}) == 12);
}

TEST_CASE("cross parameter guards keep min max atoms that evaluate") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel mm\nparam n, m\nassume n >= 1 and m >= 1\n"
      "array o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 1\n"
      "loop i = 0 .. n\nguard i < m\no[i] = 1.0\nend\nend\n");
  const CountExpr c = symbolic_count(k);
  for (const auto& [nv, mv, want] :
       std::vector<std::tuple<long, long, long>>{
           {5, 3, 3}, {3, 5, 3}, {4, 4, 4}, {1, 9, 1}}) {
    const kc::Binding b{{"n", Int(nv)}, {"m", Int(mv)}};
    CHECK(c.evaluate(b) == Int(want));
    CHECK(enumerated_count(k, b) == Int(want));
  }
}

TEST_CASE("empty loop ranges count zero") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel e\nparam n\nassume n >= 1\n"
      "array o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent 1\naxis l0 = local(0) extent 1\n"
      "loop i = 0 .. 0\no[i] = 1.0\nend\n");
  CHECK(symbolic_count(k).is_zero());
}

TEST_CASE("enumeration respects the work cap") {
  const kc::KernelIR k = triangle_kernel();
  CHECK_THROWS_AS(kc::enumerate_points(k, {{"n", 4000}}, Int(1000)),
                  kc::Error);
  try {
    kc::enumerate_points(k, {{"n", 4000}}, Int(1000));
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::cap_exceeded);
  }
}
