#include <cmath>
#include <random>

#include "doctest.h"
#include "kernelcost/error.hpp"
#include "kernelcost/model.hpp"
#include "kernelcost/schema.hpp"

namespace kc = kernelcost;
using kc::CountExpr;
using kc::Int;

namespace {

kc::PropertyVector pv_with(
    const std::vector<std::pair<std::string, long>>& counts) {
  kc::PropertyVector pv;
  for (const auto& [key, v] : counts)
    pv.at(key) = CountExpr::from_int(Int(v));
  return pv;
}

// Random full-rank design over a few keys; times from known weights.
std::vector<kc::FitCase> synthetic_cases(std::mt19937_64& rng,
                                         const std::map<std::string, double>& w,
                                         int n_cases) {
  std::vector<kc::FitCase> cases;
  for (int i = 0; i < n_cases; ++i) {
    std::vector<std::pair<std::string, long>> counts;
    double t = 0;
    for (const auto& [key, alpha] : w) {
      const long c = static_cast<long>(1 + rng() % 10000);
      counts.emplace_back(key, c);
      t += alpha * static_cast<double>(c);
    }
    cases.push_back({pv_with(counts), t});
  }
  return cases;
}

}  // namespace

TEST_CASE("noiseless recovery of random weights") {
  std::mt19937_64 rng(4242);
  const std::map<std::string, double> truth{
      {"flop.f32.addsub", 6.81e-13},
      {"mem.global.load.s32.1/1", 8.27e-12},
      {"sync.barrier", 4.26e-11},
      {"launch.const", 1.29e-04},
  };
  const auto cases = synthetic_cases(rng, truth, 40);
  const auto d = kc::build_design_matrix(cases);
  const auto [w, rep] = kc::fit_weights(d, "dev");
  CHECK(rep.objective <= 1e-18);
  for (const auto& [key, alpha] : truth) {
    const double got = w.alpha[kc::schema_index(key)];
    CHECK(std::abs(got - alpha) <= 1e-6 * std::abs(alpha));
  }
  CHECK(w.n_cases == 40);
  CHECK(w.schema_version == kc::kSchemaVersion);
}

TEST_CASE("scaling all times scales the weights") {
  std::mt19937_64 rng(7);
  const std::map<std::string, double> truth{
      {"flop.f32.mul", 5.68e-13}, {"launch.groups", 3.75e-09}};
  auto cases = synthetic_cases(rng, truth, 25);
  const auto [w1, r1] = kc::fit_weights(kc::build_design_matrix(cases), "d");
  for (auto& c : cases) c.time_s *= 1000.0;
  const auto [w2, r2] = kc::fit_weights(kc::build_design_matrix(cases), "d");
  for (const auto& [key, alpha] : truth) {
    (void)alpha;
    const std::size_t i = kc::schema_index(key);
    CHECK(w2.alpha[i] == doctest::Approx(1000.0 * w1.alpha[i]).epsilon(1e-9));
  }
}

TEST_CASE("empty columns are uncovered and pinned to zero") {
  std::mt19937_64 rng(11);
  const auto cases =
      synthetic_cases(rng, {{"flop.f32.addsub", 1e-12}}, 10);
  const auto d = kc::build_design_matrix(cases);
  const auto [w, rep] = kc::fit_weights(d, "d");
  CHECK(w.covered[kc::schema_index("flop.f32.addsub")]);
  CHECK_FALSE(w.covered[kc::schema_index("flop.f32.mul")]);
  CHECK(w.alpha[kc::schema_index("flop.f32.mul")] == 0.0);
  CHECK(rep.uncovered.size() == kc::schema_size() - 1);
}

TEST_CASE("duplicate columns split the weight minimally") {
  // two keys always appear with identical counts; min-norm splits evenly
  std::vector<kc::FitCase> cases;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 12; ++i) {
    const long c = static_cast<long>(1 + rng() % 1000);
    const long u = static_cast<long>(1 + rng() % 1000);
    cases.push_back({pv_with({{"flop.f32.addsub", c},
                              {"flop.f32.mul", c},
                              {"sync.barrier", u}}),
                     2e-12 * static_cast<double>(c) +
                         4e-11 * static_cast<double>(u)});
  }
  const auto [w, rep] = kc::fit_weights(kc::build_design_matrix(cases), "d");
  CHECK(rep.objective <= 1e-18);
  const double a = w.alpha[kc::schema_index("flop.f32.addsub")];
  const double m = w.alpha[kc::schema_index("flop.f32.mul")];
  CHECK(a == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK(m == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("fit never beats the data it was given") {
  // inconsistent times: objective is positive but below the zero-model
  std::vector<kc::FitCase> cases;
  cases.push_back({pv_with({{"flop.f32.addsub", 100}}), 1.0});
  cases.push_back({pv_with({{"flop.f32.addsub", 100}}), 2.0});
  const auto [w, rep] = kc::fit_weights(kc::build_design_matrix(cases), "d");
  CHECK(rep.objective > 0.0);
  CHECK(rep.objective < 2.0);  // all-zero weights would score n_cases = 2
  CHECK(rep.residuals.size() == 2);
}

TEST_CASE("nonpositive times and empty inputs are rejected") {
  std::vector<kc::FitCase> cases;
  cases.push_back({pv_with({{"flop.f32.addsub", 1}}), 0.0});
  CHECK_THROWS_AS(kc::build_design_matrix(cases), kc::Error);
  try {
    kc::build_design_matrix(cases);
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::nonpositive_time);
  }
  try {
    kc::build_design_matrix({});
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::empty_input);
  }
}

TEST_CASE("prediction sums covered contributions and warns on the rest") {
  kc::ModelWeights w;
  w.device = "d";
  w.schema_version = kc::kSchemaVersion;
  w.alpha.assign(kc::schema_size(), 0.0);
  w.covered.assign(kc::schema_size(), false);
  const std::size_t ia = kc::schema_index("flop.f32.addsub");
  const std::size_t ib = kc::schema_index("launch.const");
  w.alpha[ia] = 2e-12;
  w.covered[ia] = true;
  w.covered[ib] = true;  // covered with weight zero

  const kc::PropertyVector pv = pv_with(
      {{"flop.f32.addsub", 1000}, {"launch.const", 1}, {"sync.barrier", 5}});
  const kc::Prediction p = kc::predict(w, pv);
  CHECK(p.seconds == doctest::Approx(2e-9).epsilon(1e-12));
  REQUIRE(p.warnings.size() == 1);
  CHECK(p.warnings[0] == "sync.barrier");
  // breakdown covers the nonzero counts
  bool saw_addsub = false;
  for (const auto& [key, sec] : p.breakdown)
    if (key == "flop.f32.addsub") {
      saw_addsub = true;
      CHECK(sec == doctest::Approx(2e-9).epsilon(1e-12));
    }
  CHECK(saw_addsub);
}

TEST_CASE("prediction rejects schema mismatches") {
  kc::ModelWeights w;
  w.device = "d";
  w.schema_version = "v0";
  w.alpha.assign(kc::schema_size(), 0.0);
  w.covered.assign(kc::schema_size(), true);
  CHECK_THROWS_AS(kc::predict(w, kc::PropertyVector()), kc::Error);
}

TEST_CASE("geometric mean error fixtures") {
  CHECK(kc::geometric_mean_error({{1.1, 1.0}, {0.9, 1.0}}) ==
        doctest::Approx(0.10).epsilon(1e-12));
  // exact predictions floor at 1e-12 instead of collapsing to zero
  CHECK(kc::geometric_mean_error({{1.0, 1.0}, {2.0, 1.0}}) ==
        doctest::Approx(std::sqrt(1e-12)).epsilon(1e-9));
  CHECK_THROWS_AS(kc::geometric_mean_error({}), kc::Error);
  CHECK_THROWS_AS(kc::geometric_mean_error({{1.0, 0.0}}), kc::Error);
}
