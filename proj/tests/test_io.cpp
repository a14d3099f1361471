#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kernelcost/csvio.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/jsonio.hpp"
#include "kernelcost/model.hpp"
#include "kernelcost/schema.hpp"
#include "kernelcost/simdevice.hpp"

namespace kc = kernelcost;
namespace fs = std::filesystem;
using kc::Int;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("kc_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("binding text round trips with sorted keys") {
  const kc::Binding b{{"n", 1024}, {"m", 12}};
  CHECK(kc::binding_str(b) == "m=12;n=1024");
  CHECK(kc::parse_binding("m=12;n=1024") == b);
  CHECK(kc::parse_binding("n=1024;m=12") == b);
  CHECK(kc::binding_str({}) == "");
  CHECK(kc::parse_binding("") == kc::Binding{});
}

TEST_CASE("measurement csv round trips") {
  TempDir td;
  std::vector<kc::MeasurementRecord> recs{
      {"k1", {{"n", 64}}, "16x16", 1.25e-4},
      {"k2", {{"n", 128}, {"m", 8}}, "256", 3.5e-3},
  };
  const std::string p = td.file("m.csv");
  kc::write_measurements_csv(p, recs);
  const auto back = kc::read_measurements_csv(p);
  REQUIRE(back.size() == 2);
  CHECK(back[0].kernel == "k1");
  CHECK(back[0].binding == recs[0].binding);
  CHECK(back[0].group_config == "16x16");
  CHECK(back[0].time_s == recs[0].time_s);  // exact through %.17g
  CHECK(back[1].binding == recs[1].binding);
}

TEST_CASE("raw runs csv round trips and reduces") {
  TempDir td;
  std::vector<kc::RawRun> runs;
  for (int r = 0; r < 30; ++r) {
    double t = 1e-3 + 1e-6 * ((r * 7) % 13);
    if (r == 2) t = 0.5;  // warm-up outlier, discarded by protocol
    runs.push_back({"k", {{"n", 64}}, "256", r, t});
  }
  const std::string p = td.file("r.csv");
  kc::write_raw_runs_csv(p, runs);
  const auto back = kc::read_raw_runs_csv(p);
  REQUIRE(back.size() == 30);
  CHECK(back[2].time_s == 0.5);

  const auto reduced = kc::reduce_raw_runs(back);
  REQUIRE(reduced.size() == 1);
  // min over runs 4..29 of the fixture formula
  double want = 1.0;
  for (int r = 4; r < 30; ++r)
    want = std::min(want, 1e-3 + 1e-6 * ((r * 7) % 13));
  CHECK(reduced[0].time_s == want);
}

TEST_CASE("reduce_runs drops warmups then takes the minimum") {
  CHECK(kc::reduce_runs({9, 9, 9, 9, 5, 7, 6}) == 5.0);
  CHECK(kc::reduce_runs({1, 1, 1, 1, 2}) == 2.0);  // warm-ups never win
  CHECK(kc::reduce_runs({5, 6}, 0) == 5.0);
  CHECK_THROWS_AS(kc::reduce_runs({1, 2, 3, 4}), kc::Error);
}

TEST_CASE("csv rejects malformed rows") {
  TempDir td;
  const std::string p = td.file("bad.csv");
  {
    std::ofstream out(p);
    out << "kernel,binding,group_config,time_s\n";
    out << "k,n=64,256,notatime\n";
  }
  CHECK_THROWS_AS(kc::read_measurements_csv(p), kc::Error);

  {
    std::ofstream out(p);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(kc::read_measurements_csv(p), kc::Error);
  CHECK_THROWS_AS(kc::read_measurements_csv(td.file("missing.csv")),
                  kc::Error);
}

TEST_CASE("weights json round trips exactly") {
  TempDir td;
  kc::ModelWeights w;
  w.device = "simdev-v1";
  w.schema_version = kc::kSchemaVersion;
  w.alpha.assign(kc::schema_size(), 0.0);
  w.covered.assign(kc::schema_size(), false);
  w.alpha[kc::schema_index("flop.f32.addsub")] = 6.81e-13;
  w.covered[kc::schema_index("flop.f32.addsub")] = true;
  w.covered[kc::schema_index("launch.const")] = true;
  w.objective = 1.5e-22;
  w.n_cases = 390;
  kc::FitReport rep;
  rep.objective = 1.5e-22;

  const std::string p = td.file("w.json");
  kc::write_weights_json(p, w, rep);
  const kc::ModelWeights back = kc::read_weights_json(p);
  CHECK(back.device == w.device);
  CHECK(back.schema_version == w.schema_version);
  CHECK(back.alpha == w.alpha);
  CHECK(back.covered == w.covered);
  CHECK(back.n_cases == 390);
}

TEST_CASE("weights schema version mismatch raises") {
  TempDir td;
  kc::json j;
  j["device"] = "d";
  j["schema_version"] = "v999";
  j["weights"] = kc::json::object();
  j["covered"] = kc::json::object();
  j["fit"] = {{"objective", 0.0}, {"n_cases", 0}};
  const std::string p = td.file("w.json");
  kc::write_json_file(p, j);
  try {
    kc::read_weights_json(p);
    FAIL("expected Error");
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::schema_mismatch);
  }
}

TEST_CASE("device json round trips") {
  TempDir td;
  kc::SimDevice dev = kc::SimDevice::reference();
  dev.sigma = 0.02;
  dev.seed = 1234;
  const std::string p = td.file("dev.json");
  kc::write_device_json(p, dev);
  const kc::SimDevice back = kc::read_device_json(p);
  CHECK(back.name == dev.name);
  CHECK(back.sigma == dev.sigma);
  CHECK(back.seed == dev.seed);
  CHECK(back.alpha == dev.alpha);
}

TEST_CASE("malformed json reports parse errors") {
  TempDir td;
  const std::string p = td.file("bad.json");
  {
    std::ofstream out(p);
    out << "{ not json";
  }
  try {
    kc::read_json_file(p);
    FAIL("expected Error");
  } catch (const kc::Error& e) {
    CHECK(e.code() == kc::Errc::parse);
  }
}

TEST_CASE("json writes leave no temp files behind") {
  TempDir td;
  const std::string p = td.file("out.json");
  kc::write_json_file(p, kc::json{{"x", 1}});
  CHECK(fs::exists(p));
  int entries = 0;
  for (const auto& it : fs::directory_iterator(td.path)) {
    (void)it;
    ++entries;
  }
  CHECK(entries == 1);
}
