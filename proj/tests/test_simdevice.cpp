#include <cmath>

#include "doctest.h"
#include "kernelcost/error.hpp"
#include "kernelcost/schema.hpp"
#include "kernelcost/simdevice.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;

namespace {

kc::PropertyVector simple_pv() {
  kc::PropertyVector pv;
  pv.at("launch.const") = CountExpr::from_int(1);
  pv.at("launch.groups") = CountExpr::from_int(1024);
  return pv;
}

}  // namespace

TEST_CASE("reference device carries the frozen cost profile") {
  const kc::SimDevice dev = kc::SimDevice::reference();
  CHECK(dev.name == "simdev-v1");
  CHECK(dev.sigma == 0.0);
  REQUIRE(dev.alpha.size() == kc::schema_size());
  CHECK(dev.alpha[kc::schema_index("launch.const")] == 1.29e-04);
  CHECK(dev.alpha[kc::schema_index("launch.groups")] == 3.75e-09);
  CHECK(dev.alpha[kc::schema_index("flop.f32.addsub")] == 6.81e-13);
  CHECK(dev.alpha[kc::schema_index("mem.local.load")] == -1.76e-12);
  CHECK(dev.alpha[kc::schema_index("mem.global.store.s32.4/>4")] == 3.55e-10);
  CHECK(dev.alpha[kc::schema_index("mem.global.load.s64.1/1")] == 0.0);

  int nonzero = 0;
  for (double a : dev.alpha)
    if (a != 0.0) ++nonzero;
  CHECK(nonzero == 16);
}

TEST_CASE("noiseless time is the plain inner product") {
  const kc::SimDevice dev = kc::SimDevice::reference();
  const double t = kc::noiseless_time(dev, simple_pv());
  CHECK(t == doctest::Approx(1.29e-04 + 1024 * 3.75e-09).epsilon(1e-15));
}

TEST_CASE("keyed gaussian is deterministic and key sensitive") {
  const double a = kc::keyed_gaussian(1, "k|n=64", 0);
  CHECK(a == kc::keyed_gaussian(1, "k|n=64", 0));
  CHECK(a != kc::keyed_gaussian(2, "k|n=64", 0));
  CHECK(a != kc::keyed_gaussian(1, "k|n=65", 0));
  CHECK(a != kc::keyed_gaussian(1, "k|n=64", 1));
}

TEST_CASE("keyed gaussian looks standard normal") {
  double sum = 0, sumsq = 0;
  const int N = 4000;
  for (int i = 0; i < N; ++i) {
    const double g = kc::keyed_gaussian(42, "moment-check", i);
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / N;
  const double var = sumsq / N - mean * mean;
  CHECK(std::abs(mean) < 0.08);
  CHECK(var == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("sigma zero reproduces bit identical times") {
  kc::SimDevice dev = kc::SimDevice::reference();
  const kc::Binding b{{"n", 64}};
  const double t1 = kc::simulate_time(dev, "k", b, simple_pv());
  const double t2 = kc::simulate_time(dev, "k", b, simple_pv());
  CHECK(t1 == t2);
  CHECK(t1 == kc::noiseless_time(dev, simple_pv()));
}

TEST_CASE("two percent noise stays within ten percent nearly always") {
  kc::SimDevice dev = kc::SimDevice::reference();
  dev.sigma = 0.02;
  dev.seed = 9;
  const double base = kc::noiseless_time(dev, simple_pv());
  const auto runs =
      kc::simulate_runs(dev, "k", kc::Binding{{"n", 64}}, simple_pv(), 1000);
  int inside = 0;
  bool all_equal = true;
  for (double t : runs) {
    if (std::abs(t / base - 1.0) <= 0.10) ++inside;
    if (t != runs[0]) all_equal = false;
  }
  CHECK(inside >= 990);
  CHECK_FALSE(all_equal);
}

TEST_CASE("run index keys the noise draw") {
  kc::SimDevice dev = kc::SimDevice::reference();
  dev.sigma = 0.05;
  const kc::Binding b{{"n", 64}};
  const auto runs = kc::simulate_runs(dev, "k", b, simple_pv(), 3);
  REQUIRE(runs.size() == 3);
  // first run shares the counter with the single-shot observation
  CHECK(runs[0] == kc::simulate_time(dev, "k", b, simple_pv()));
  CHECK(runs[0] != runs[1]);
  // and the whole sequence replays exactly
  CHECK(runs == kc::simulate_runs(dev, "k", b, simple_pv(), 3));
}

TEST_CASE("different kernels and bindings draw independent noise") {
  kc::SimDevice dev = kc::SimDevice::reference();
  dev.sigma = 0.02;
  const auto pv = simple_pv();
  const double t1 = kc::simulate_time(dev, "k1", kc::Binding{{"n", 64}}, pv);
  const double t2 = kc::simulate_time(dev, "k2", kc::Binding{{"n", 64}}, pv);
  const double t3 = kc::simulate_time(dev, "k1", kc::Binding{{"n", 128}}, pv);
  CHECK(t1 != t2);
  CHECK(t1 != t3);
}

TEST_CASE("mismatched weight vectors are rejected") {
  kc::SimDevice dev = kc::SimDevice::reference();
  dev.alpha.pop_back();
  CHECK_THROWS_AS(kc::noiseless_time(dev, simple_pv()), kc::Error);
}
