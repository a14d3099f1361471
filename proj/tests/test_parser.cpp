#include "doctest.h"
#include "kernelcost/error.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/printer.hpp"
#include "kernelcost/suite.hpp"
#include "kernelcost/validate.hpp"

namespace kc = kernelcost;

namespace {

const char* kFull = R"(# demo kernel
kernel demo
param n, m
assume n % 16 == 0 and n >= 16 and m >= 1
array a : f32 [n, m] global row_major in
array b : f64 [n] global column_major out
array t : f32 [16, 16] local row_major temp
axis g0 = group(0) extent n // 16
axis l0 = local(0) extent 16
axis l1 = local(1) extent 16

loop kk = 0 .. m
guard l1 == 0 and l0 <= 14
t[l1, l0] = a[16*g0 + l0, kk]
end
barrier
b[16*g0 + l0] = t[0, l0] * 2.5 + pow(1.5, 2.0) ^ 0.5 - rsqrt(3.0)
end
)";

}  // namespace

TEST_CASE("full grammar parses into the expected structure") {
  const kc::KernelIR k = kc::parse_kernel(kFull);
  CHECK(k.name == "demo");
  REQUIRE(k.params.size() == 2);
  CHECK(k.assumptions.size() == 3);
  REQUIRE(k.arrays.size() == 3);
  CHECK(k.arrays[0].dtype == kc::DType::f32);
  CHECK(k.arrays[1].dtype == kc::DType::f64);
  CHECK(k.arrays[1].layout == kc::Layout::column_major);
  CHECK(k.arrays[2].space == kc::Space::local);
  REQUIRE(k.axes.size() == 3);
  CHECK(k.axes[0].is_group);
  CHECK(k.axes[0].extent.has_floordiv());
  REQUIRE(k.body.size() == 1);
  CHECK(k.body[0].kind == kc::Stmt::Kind::loop);
  REQUIRE(k.body[0].body.size() == 3);
  CHECK(k.body[0].body[0].kind == kc::Stmt::Kind::guard);
  CHECK(k.body[0].body[0].conds.size() == 2);
  CHECK(k.body[0].body[1].kind == kc::Stmt::Kind::barrier);
  CHECK(k.body[0].body[2].kind == kc::Stmt::Kind::assign);
  CHECK(kc::validate(k).empty());
}

TEST_CASE("print then parse is a fixpoint on every bundled kernel") {
  const kc::SuiteLibrary lib = kc::build_suite();
  REQUIRE(lib.kernels.size() == 61);
  for (const auto& sk : lib.kernels) {
    CAPTURE(sk.id);
    const kc::KernelIR k1 = kc::parse_kernel(sk.text);
    const std::string p1 = kc::print_kernel(k1);
    const kc::KernelIR k2 = kc::parse_kernel(p1);
    const std::string p2 = kc::print_kernel(k2);
    CHECK(p1 == p2);
  }
}

TEST_CASE("print then parse is a fixpoint on the demo kernel") {
  const std::string p1 = kc::print_kernel(kc::parse_kernel(kFull));
  const std::string p2 = kc::print_kernel(kc::parse_kernel(p1));
  CHECK(p1 == p2);
}

TEST_CASE("integer and float literals lex distinctly") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel t\nparam n\narray o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n"
      "o[g0] = 2.0 + 1.5e1\n");
  const auto& rhs = *k.body[0].rhs;
  REQUIRE(rhs.kind == kc::Expr::Kind::binop);
  CHECK_FALSE(rhs.args[0]->literal_is_int);
  CHECK_FALSE(rhs.args[1]->literal_is_int);
  CHECK(rhs.args[1]->literal_value == kc::Rat(15));
}

TEST_CASE("power is right associative") {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel t\nparam n\narray o : f32 [n] global row_major out\n"
      "axis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n"
      "o[g0] = 2.0 ^ 3.0 ^ 2.0\n");
  const auto& rhs = *k.body[0].rhs;
  REQUIRE(rhs.kind == kc::Expr::Kind::binop);
  CHECK(rhs.op == '^');
  CHECK(rhs.args[0]->kind == kc::Expr::Kind::literal);
  CHECK(rhs.args[1]->kind == kc::Expr::Kind::binop);  // 3^2 grouped right
}

TEST_CASE("parse errors carry 1-based positions") {
  try {
    kc::parse_kernel("kernel t\nparam n\nbogus line here\n");
    FAIL("expected ParseError");
  } catch (const kc::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3:") == 0);
  }
}

TEST_CASE("undeclared identifiers are rejected at parse time") {
  CHECK_THROWS_AS(kc::parse_kernel(
                      "kernel t\nparam n\n"
                      "array o : f32 [n] global row_major out\n"
                      "axis g0 = group(0) extent n\n"
                      "axis l0 = local(0) extent 1\n"
                      "o[g0] = q\n"),
                  kc::ParseError);
}

TEST_CASE("non affine indices are rejected") {
  CHECK_THROWS_AS(kc::parse_kernel(
                      "kernel t\nparam n\n"
                      "array o : f32 [n] global row_major out\n"
                      "axis g0 = group(0) extent n\n"
                      "axis l0 = local(0) extent 4\n"
                      "o[g0 * l0] = 1.0\n"),
                  kc::ParseError);
}

TEST_CASE("missing end is rejected") {
  CHECK_THROWS_AS(kc::parse_kernel(
                      "kernel t\nparam n\n"
                      "array o : f32 [n] global row_major out\n"
                      "axis g0 = group(0) extent n\n"
                      "axis l0 = local(0) extent 1\n"
                      "loop i = 0 .. n\no[g0] = 1.0\n"),
                  kc::ParseError);
}

TEST_CASE("unknown callee is rejected") {
  CHECK_THROWS_AS(kc::parse_kernel(
                      "kernel t\nparam n\n"
                      "array o : f32 [n] global row_major out\n"
                      "axis g0 = group(0) extent n\n"
                      "axis l0 = local(0) extent 1\n"
                      "o[g0] = tan(1.0)\n"),
                  kc::ParseError);
}

TEST_CASE("parse_kernel_file reports missing files as io errors") {
  try {
    kc::parse_kernel_file("/nonexistent/path.knl");
    FAIL("expected Error");
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::io);
  }
}
