#include "doctest.h"
#include "kernelcost/decide.hpp"
#include "kernelcost/ir.hpp"
#include "kernelcost/parser.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;
using kc::Rat;

namespace {

// AssumeCtx as the counting engine sees it for a one-param kernel.
kc::AssumeCtx ctx_for(const std::string& assumes) {
  const kc::KernelIR k = kc::parse_kernel(
      "kernel t\nparam n, m\nassume " + assumes +
      "\naxis g0 = group(0) extent n\naxis l0 = local(0) extent 1\n");
  return kc::build_assume_ctx(k);
}

}  // namespace

TEST_CASE("divisibility facts flow into divides") {
  const auto actx = ctx_for("n % 16 == 0 and n >= 16");
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");
  CHECK(actx.divides(n, Int(16)));
  CHECK(actx.divides(n, Int(8)));   // 16 = 8*2
  CHECK(actx.divides(n * m, Int(16)));
  CHECK(actx.divides(n.scaled(Rat(3)), Int(16)));
  CHECK_FALSE(actx.divides(n, Int(32)));
  CHECK_FALSE(actx.divides(m, Int(2)));
  CHECK(actx.divides(CountExpr::from_int(48), Int(16)));
}

TEST_CASE("make_floordiv divides exactly under divisibility") {
  const auto actx = ctx_for("n % 16 == 0 and n >= 16");
  const CountExpr n = CountExpr::var("n");
  const CountExpr q = kc::make_floordiv(n, Int(16), actx);
  // exact polynomial n/16, no residual atom
  CHECK((q.scaled(Rat(16)) - n).is_zero());
  CHECK(q.evaluate({{"n", 48}}) == 3);
}

TEST_CASE("make_floordiv keeps the non-divisible remainder opaque") {
  const auto actx = ctx_for("n % 16 == 0 and n >= 16");
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");
  const CountExpr q = kc::make_floordiv(n + m, Int(16), actx);
  // n splits out exactly; floor(m/16) stays an atom
  CHECK(q.evaluate({{"n", 32}, {"m", 17}}) == 3);
  CHECK(q.evaluate({{"n", 32}, {"m", 15}}) == 2);
  CHECK(q.degree_of_atom("(fd m 16)") <= 1);  // key shape is internal; just

  // constant remainders fold away entirely
  const CountExpr r =
      kc::make_floordiv(n + CountExpr::from_int(21), Int(16), actx);
  CHECK(r.evaluate({{"n", 16}}) == 2);  // floor(37/16)
  CHECK(r.vars() == std::vector<std::string>{"n"});
}

TEST_CASE("prover handles parameter lower bounds by shifting") {
  const auto actx = ctx_for("n >= 5");
  const kc::DecideCtx dc(actx);
  const CountExpr n = CountExpr::var("n");
  CHECK(dc.proves_nonneg(n - CountExpr::from_int(5)));
  CHECK(dc.proves_nonneg(n * n - CountExpr::from_int(25)));
  CHECK_FALSE(dc.proves_nonneg(n - CountExpr::from_int(6)));
  CHECK(dc.proves_nonpos(CountExpr::from_int(5) - n));
}

TEST_CASE("prover eliminates chain variables at endpoints") {
  const auto actx = ctx_for("n >= 1");
  const CountExpr n = CountExpr::var("n");
  const CountExpr i = CountExpr::var("i");
  const CountExpr j = CountExpr::var("j");
  std::vector<kc::VarRange> chain;
  chain.push_back({"i", CountExpr::from_int(0), n - CountExpr::from_int(1)});
  chain.push_back({"j", CountExpr::from_int(0), i});
  const kc::DecideCtx dc(actx, chain);
  CHECK(dc.proves_nonneg(i - j));           // j <= i by construction
  CHECK(dc.proves_nonneg(n - i - CountExpr::from_int(1)));
  CHECK_FALSE(dc.proves_nonneg(j - i));     // false for i=1, j=0
}

TEST_CASE("prover splits floordiv atoms at their defining interval") {
  // floor(n/16) is relaxed to [(n-15)/16, n/16]; the lower endpoint is
  // nonnegative minus one only from n >= 31 on.
  const auto actx = ctx_for("n >= 31");
  const kc::DecideCtx dc(actx);
  const CountExpr n = CountExpr::var("n");
  const CountExpr fd =
      CountExpr::atom(kc::Atom::make_floordiv(n, Int(16)));
  CHECK(dc.proves_nonneg(fd - CountExpr::from_int(1)));
  CHECK(dc.proves_nonneg(n - fd));
  CHECK_FALSE(dc.proves_nonneg(fd - CountExpr::from_int(2)));
}

TEST_CASE("min and max resolve when provable, else stay atoms") {
  const auto actx = ctx_for("n >= 0");
  const kc::DecideCtx dc(actx);
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");

  CHECK(kc::make_min(n, n.scaled(Rat(2)), dc) == n);
  CHECK(kc::make_max(n, n.scaled(Rat(2)), dc) == n.scaled(Rat(2)));
  CHECK(kc::make_min(n, n, dc) == n);

  const CountExpr unresolved = kc::make_min(n, m, dc);
  CHECK(unresolved.evaluate({{"n", 3}, {"m", 8}}) == 3);
  CHECK(unresolved.evaluate({{"n", 9}, {"m", 8}}) == 8);
}

TEST_CASE("admits rejects bindings that break assumptions") {
  const auto actx = ctx_for("n % 16 == 0 and n >= 16 and m >= 1");
  CHECK(actx.admits({{"n", 32}, {"m", 4}}));
  CHECK_FALSE(actx.admits({{"n", 20}, {"m", 4}}));   // 20 % 16 != 0
  CHECK_FALSE(actx.admits({{"n", 0}, {"m", 4}}));    // n < 16
  CHECK_FALSE(actx.admits({{"n", 32}, {"m", 0}}));   // m < 1
}

TEST_CASE("to_count converts affine with floordiv terms") {
  const auto actx = ctx_for("n % 16 == 0 and n >= 16");
  const kc::LinExpr e = kc::LinExpr::var("n", Rat(2)) +
                        kc::LinExpr::floordiv(kc::LinExpr::var("m"), Int(4));
  const CountExpr c = kc::to_count(e, actx);
  CHECK(c.evaluate({{"n", 16}, {"m", 9}}) == 34);
}
