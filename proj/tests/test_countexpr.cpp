#include <random>

#include "doctest.h"
#include "kernelcost/countexpr.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;
using kc::Rat;

TEST_CASE("polynomial algebra expands and cancels") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");

  const CountExpr sq = (n + CountExpr::from_int(1)) *
                       (n + CountExpr::from_int(1));
  const CountExpr expanded =
      n * n + n.scaled(Rat(2)) + CountExpr::from_int(1);
  CHECK(sq == expanded);

  CHECK((n * n - n * n).is_zero());
  CHECK(((n + m) * (n - m)) == (n * n - m * m));
  CHECK((-n + n).is_zero());
  CHECK(n.pow(3) == n * n * n);
}

TEST_CASE("evaluation is exact at large magnitudes") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr p = n.pow(3) + n.scaled(Rat(7));
  const kc::Binding b{{"n", Int("10000000000")}};
  CHECK(p.evaluate(b) == Int("1000000000000000000070000000000"));
}

TEST_CASE("substitute replaces deeply") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");
  const CountExpr p = n * n + m;
  const CountExpr q = p.substitute("n", m + CountExpr::from_int(1));
  const kc::Binding b{{"m", 3}};
  CHECK(q.evaluate(b) == 19);  // (3+1)^2 + 3
}

TEST_CASE("floordiv atom evaluates with floor semantics") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr fd = CountExpr::atom(kc::Atom::make_floordiv(n, Int(16)));
  CHECK(fd.evaluate({{"n", 32}}) == 2);
  CHECK(fd.evaluate({{"n", 33}}) == 2);
  CHECK(fd.evaluate({{"n", 47}}) == 2);
  CHECK(fd.evaluate({{"n", 48}}) == 3);
}

TEST_CASE("min and max atoms evaluate") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");
  const CountExpr mn = CountExpr::atom(
      kc::Atom::make_minmax(kc::Atom::Kind::min, {n, m}));
  const CountExpr mx = CountExpr::atom(
      kc::Atom::make_minmax(kc::Atom::Kind::max, {n, m}));
  CHECK(mn.evaluate({{"n", 5}, {"m", 9}}) == 5);
  CHECK(mx.evaluate({{"n", 5}, {"m", 9}}) == 9);
}

TEST_CASE("vars and plain_in see atom internals") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr fd = CountExpr::atom(kc::Atom::make_floordiv(
      n + CountExpr::var("m"), Int(4)));
  const auto vs = fd.vars();
  CHECK(vs == std::vector<std::string>{"m", "n"});
  CHECK(fd.references("m"));
  CHECK_FALSE(fd.plain_in("m"));
  CHECK((n * n).plain_in("n"));
}

TEST_CASE("coeffs_in splits by power") {
  const CountExpr n = CountExpr::var("n");
  const CountExpr m = CountExpr::var("m");
  const CountExpr p = n * n * m + n.scaled(Rat(3)) + CountExpr::from_int(5);
  const auto cs = p.coeffs_in("n");
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == CountExpr::from_int(5));
  CHECK(cs[1] == CountExpr::from_int(3));
  CHECK(cs[2] == m);
}

TEST_CASE("canonical text is stable and order independent") {
  const CountExpr a = CountExpr::var("n") + CountExpr::var("m");
  const CountExpr b = CountExpr::var("m") + CountExpr::var("n");
  CHECK(a.str() == b.str());
  CHECK(a.str() == (a + CountExpr::from_int(0)).str());
}

TEST_CASE("power sum coefficients match small cases") {
  // sum_{v=0}^{M} v = M(M+1)/2
  const auto c1 = kc::power_sum_coeffs(1);
  REQUIRE(c1.size() == 3);
  CHECK(c1[0] == Rat(0));
  CHECK(c1[1] == Rat(1, 2));
  CHECK(c1[2] == Rat(1, 2));
  // sum v^2 = M(M+1)(2M+1)/6
  const auto c2 = kc::power_sum_coeffs(2);
  REQUIRE(c2.size() == 4);
  CHECK(c2[1] == Rat(1, 6));
  CHECK(c2[2] == Rat(1, 2));
  CHECK(c2[3] == Rat(1, 3));
}

TEST_CASE("faulhaber_sum matches brute force for degrees up to 4") {
  std::mt19937_64 rng(12345);
  const CountExpr v = CountExpr::var("v");
  for (unsigned deg = 0; deg <= 4; ++deg) {
    const CountExpr P = v.pow(deg) + v.scaled(Rat(2)) +
                        CountExpr::from_int(3);
    const CountExpr S = kc::faulhaber_sum(P, "v", CountExpr::var("lo"),
                                          CountExpr::var("hi"));
    for (int trial = 0; trial < 20; ++trial) {
      const long lo = static_cast<long>(rng() % 19) - 9;
      const long hi = lo - 1 + static_cast<long>(rng() % 25);
      Int want = 0;
      for (long x = lo; x <= hi; ++x)
        want += P.evaluate({{"v", Int(x)}});
      const kc::Binding b{{"lo", Int(lo)}, {"hi", Int(hi)}};
      CHECK(S.evaluate(b) == want);
    }
  }
}

TEST_CASE("faulhaber_sum over an empty range is zero") {
  const CountExpr v = CountExpr::var("v");
  const CountExpr S =
      kc::faulhaber_sum(v * v, "v", CountExpr::from_int(5),
                        CountExpr::from_int(4));
  CHECK(S.is_zero());
}

TEST_CASE("faulhaber_sum keeps parameters symbolic") {
  // sum_{v=0}^{n-1} v = n(n-1)/2
  const CountExpr v = CountExpr::var("v");
  const CountExpr n = CountExpr::var("n");
  const CountExpr S = kc::faulhaber_sum(
      v, "v", CountExpr::from_int(0), n - CountExpr::from_int(1));
  const CountExpr want = (n * n - n).scaled(Rat(1, 2));
  CHECK(S == want);
}
