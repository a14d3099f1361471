#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "kernelcost/campaign.hpp"
#include "kernelcost/ir.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/suite.hpp"
#include "kernelcost/validate.hpp"

namespace kc = kernelcost;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("suite construction is deterministic") {
  const kc::SuiteLibrary a = kc::build_suite();
  const kc::SuiteLibrary b = kc::build_suite();
  REQUIRE(a.kernels.size() == b.kernels.size());
  for (std::size_t i = 0; i < a.kernels.size(); ++i) {
    CHECK(a.kernels[i].id == b.kernels[i].id);
    CHECK(a.kernels[i].text == b.kernels[i].text);
    CHECK(a.kernels[i].cases == b.kernels[i].cases);
  }
}

TEST_CASE("suite shape is frozen") {
  const kc::SuiteLibrary lib = kc::build_suite();
  CHECK(lib.kernels.size() == 61);
  CHECK(lib.measurement_cases().size() == 390);
  CHECK(lib.test_cases().size() == 16);
  int meas = 0, test = 0;
  for (const auto& k : lib.kernels) {
    if (k.role == "measurement") ++meas;
    if (k.role == "test") ++test;
  }
  CHECK(meas == 57);
  CHECK(test == 4);
}

TEST_CASE("every kernel parses, validates, and matches its id") {
  for (const auto& sk : kc::build_suite().kernels) {
    CAPTURE(sk.id);
    const kc::KernelIR k = kc::parse_kernel(sk.text);
    CHECK(k.name == sk.id);
    CHECK(kc::validate(k).empty());
    CHECK_FALSE(sk.group_config.empty());
    CHECK_FALSE(sk.oracle.empty());
  }
}

TEST_CASE("campaign schedule bindings are admissible") {
  const kc::SuiteLibrary lib = kc::build_suite();
  for (const auto& sk : lib.kernels) {
    CAPTURE(sk.id);
    const kc::KernelIR k = kc::parse_kernel(sk.text);
    const kc::AssumeCtx actx = kc::build_assume_ctx(k);
    REQUIRE_FALSE(sk.cases.empty());
    for (const auto& b : sk.cases) CHECK(actx.admits(b));
  }
}

TEST_CASE("oracle samples are admissible") {
  const kc::SuiteLibrary lib = kc::build_suite();
  std::mt19937_64 rng(2024);
  for (const auto& sk : lib.kernels) {
    CAPTURE(sk.id);
    const kc::KernelIR k = kc::parse_kernel(sk.text);
    const kc::AssumeCtx actx = kc::build_assume_ctx(k);
    for (int i = 0; i < 5; ++i)
      CHECK(actx.admits(kc::sample_oracle_binding(sk, rng)));
  }
}

TEST_CASE("emitted directory matches the built library") {
  const kc::SuiteLibrary lib = kc::build_suite();
  const fs::path dir =
      fs::temp_directory_path() / "kc_suite_emit_check";
  fs::remove_all(dir);
  kc::emit_suite(lib, dir.string());

  for (const auto& sk : lib.kernels) {
    CAPTURE(sk.id);
    CHECK(slurp(dir / (sk.id + ".knl")) == sk.text);
  }
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("bundled kernels on disk are current") {
  // suite_dir() resolves to the committed copies unless overridden;
  // regenerate with: kernelcost suite emit --dir core/kernels/v1
  const kc::SuiteLibrary lib = kc::build_suite();
  const fs::path dir = kc::suite_dir();
  REQUIRE(fs::exists(dir));
  for (const auto& sk : lib.kernels) {
    CAPTURE(sk.id);
    CHECK(slurp(fs::path(kc::resolve_kernel_file(sk.id))) == sk.text);
  }
}

TEST_CASE("campaign runs cleanly on a slice of the schedule") {
  const kc::SuiteLibrary lib = kc::build_suite();
  std::vector<kc::SuiteCase> cases = lib.measurement_cases();
  cases.resize(40);
  const kc::CampaignResult res =
      kc::run_campaign(kc::SimDevice::reference(), lib, cases);
  CHECK(res.diagnostics.empty());
  REQUIRE(res.records.size() == 40);
  for (const auto& r : res.records) {
    CHECK(r.time_s > 0.0);
    CHECK_FALSE(r.group_config.empty());
  }
}

TEST_CASE("campaign surfaces per case failures without aborting") {
  const kc::SuiteLibrary lib = kc::build_suite();
  std::vector<kc::SuiteCase> cases;
  cases.push_back({"stride1_copy_g192", {{"n", 192}}, "192"});
  cases.push_back({"stride1_copy_g192", {{"n", 100}}, "192"});  // bad
  const kc::CampaignResult res =
      kc::run_campaign(kc::SimDevice::reference(), lib, cases);
  CHECK(res.records.size() == 1);
  REQUIRE(res.diagnostics.size() == 1);
  CHECK(res.diagnostics[0].find("stride1_copy_g192") != std::string::npos);
}
