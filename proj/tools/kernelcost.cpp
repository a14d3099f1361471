// kernelcost: static cost-model toolkit for the polyhedral kernel IR.
//
// Subcommands: count, footprint, fit, predict, simulate, eval, suite emit.
// stdout carries data, stderr carries diagnostics. Exit codes: 0 success,
// 1 I/O or input-shape errors, 2 kernel errors, 3 symbolic extraction
// needs a binding, 4 schema mismatch.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kernelcost/campaign.hpp"
#include "kernelcost/csvio.hpp"
#include "kernelcost/enumerate.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/footprint.hpp"
#include "kernelcost/jsonio.hpp"
#include "kernelcost/model.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/props.hpp"
#include "kernelcost/schema.hpp"
#include "kernelcost/simdevice.hpp"
#include "kernelcost/suite.hpp"
#include "kernelcost/validate.hpp"

namespace kc = kernelcost;
using kc::json;

namespace {

struct Opts {
  std::uint64_t seed = 0;
  bool seed_set = false;
  long cap = 0;  // 0 = per-command default
  std::string format = "json";
  bool force = false;
};

kc::Int cap_or(const Opts& o, long dflt) {
  return kc::Int(o.cap > 0 ? o.cap : dflt);
}

json int_json(const kc::Int& v) {
  static const kc::Int lo = kc::Int(std::numeric_limits<std::int64_t>::min());
  static const kc::Int hi = kc::Int(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return json(kc::to_int64(v));
  return json(v.str());
}

// Numeric JSON for a count when bound or constant, expression string else.
json count_json(const kc::CountExpr& e, const std::optional<kc::Binding>& b) {
  if (b) return int_json(e.evaluate(*b));
  if (e.is_constant() && kc::rat_is_integer(e.constant_value()))
    return int_json(kc::rat_num(e.constant_value()));
  return json(e.str());
}

std::string json_scalar_str(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

kc::KernelIR load_kernel(const std::string& path) {
  kc::KernelIR k = kc::parse_kernel_file(path);
  if (const auto ds = kc::validate(k); !ds.empty()) {
    std::cerr << kc::format_diagnostics(ds);
    throw kc::Error(kc::Errc::invalid_argument,
                    path + ": kernel failed validation");
  }
  return k;
}

void write_or_print(const json& j, const std::string& out, bool force,
                    const std::string& pretty) {
  if (out.empty()) {
    if (pretty.empty())
      std::cout << j.dump(2) << "\n";
    else
      std::cout << pretty;
    return;
  }
  if (!force && std::filesystem::exists(out))
    throw kc::Error(kc::Errc::io,
                    out + " exists; pass --force to overwrite");
  kc::write_json_file(out, j);
}

std::string pretty_count(const kc::PropertyVector& pv) {
  using kc::rat_str;
  std::string s;
  const auto& keys = kc::schema_keys();
  for (std::size_t i = 0; i < kc::schema_size(); ++i) {
    const auto& e = pv.entries[i];
    if (e.is_zero()) continue;
    std::string v = e.is_constant() ? rat_str(e.constant_value()) : e.str();
    s += keys[i];
    s.append(keys[i].size() < 30 ? 30 - keys[i].size() : 1, ' ');
    s += v + "\n";
  }
  if (s.empty()) s = "(all properties zero)\n";
  return s;
}

kc::PropertyVector extract(const kc::KernelIR& k,
                           const std::optional<kc::Binding>& b,
                           const kc::Int& cap) {
  return b ? kc::extract_properties(k, *b, cap) : kc::extract_properties(k);
}

// Measurement CSV or raw-runs CSV, detected by header.
std::vector<kc::MeasurementRecord> read_any_csv(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw kc::Error(kc::Errc::io, "cannot open: " + path);
  std::string header;
  std::getline(probe, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  probe.close();
  if (header == "kernel,binding,group_config,run_index,time_s")
    return kc::reduce_raw_runs(kc::read_raw_runs_csv(path));
  return kc::read_measurements_csv(path);
}

// Bound property vectors for CSV rows; kernel texts come from the suite
// directory (or --kernels override). Parsed kernels are cached.
struct KernelCache {
  std::string dir;
  std::map<std::string, kc::KernelIR> cache;

  const kc::KernelIR& get(const std::string& id) {
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    const std::string path = dir + "/" + id + ".knl";
    if (!std::filesystem::exists(path))
      throw kc::Error(kc::Errc::invalid_argument,
                      "unknown kernel '" + id + "' (no " + path + ")");
    return cache.emplace(id, load_kernel(path)).first->second;
  }
};

int run_count(const std::string& kernel_path, const std::string& bind,
              const std::string& out, const Opts& opts) {
  const kc::KernelIR k = load_kernel(kernel_path);
  std::optional<kc::Binding> b;
  if (!bind.empty()) b = kc::parse_binding(bind);
  const kc::PropertyVector pv = extract(k, b, cap_or(opts, 1000000));
  const json j = kc::property_report_json(k.name, b ? &*b : nullptr, pv);
  write_or_print(j, out, opts.force,
                 opts.format == "pretty" ? pretty_count(pv) : "");
  return 0;
}

int run_footprint(const std::string& kernel_path, const std::string& bind,
                  const std::string& out, const Opts& opts) {
  const kc::KernelIR k = load_kernel(kernel_path);
  std::optional<kc::Binding> b;
  if (!bind.empty()) b = kc::parse_binding(bind);
  const kc::AssumeCtx actx = kc::build_assume_ctx(k);
  const kc::Int cap = cap_or(opts, 1000000);

  json arrays = json::array();
  std::string pretty;
  for (const auto& arr : k.arrays) {
    if (arr.space != kc::Space::global) continue;
    bool accessed = false;
    for (const auto& acc : kc::collect_accesses(k))
      if (acc.array == &arr) accessed = true;
    if (!accessed) continue;

    json entry;
    entry["array"] = arr.name;
    try {
      const kc::Footprint fp = kc::access_footprint(k, arr, actx);
      const kc::CountExpr fill = kc::fill_footprint(fp);
      json axes = json::array();
      for (const auto& ax : fp.axes) {
        json a;
        a["min"] = count_json(ax.min, b);
        a["max"] = count_json(ax.max, b);
        a["card"] = count_json(ax.card, b);
        a["step"] = int_json(ax.step);
        axes.push_back(std::move(a));
      }
      entry["axes"] = axes;
      entry["cells"] = count_json(fp.cells, b);
      entry["fill"] = count_json(fill, b);
    } catch (const kc::Error& e) {
      if (e.code() != kc::Errc::needs_binding &&
          e.code() != kc::Errc::needs_fallback)
        throw;
      if (!b) throw;  // symbolic request, no binding to fall back on
      kc::Int visited = 0;
      const auto cells = kc::array_cells(k, arr, *b, cap, visited);
      json axes = json::array();
      const std::size_t rank = arr.shape.size();
      for (std::size_t d = 0; d < rank; ++d) {
        kc::Int lo = 0, hi = 0;
        std::set<kc::Int> distinct;
        bool first = true;
        for (const auto& cell : cells) {
          if (first || cell[d] < lo) lo = cell[d];
          if (first || cell[d] > hi) hi = cell[d];
          first = false;
          distinct.insert(cell[d]);
        }
        json a;
        a["min"] = int_json(lo);
        a["max"] = int_json(hi);
        a["card"] = int_json(kc::Int(distinct.size()));
        axes.push_back(std::move(a));
      }
      entry["axes"] = axes;
      entry["cells"] = int_json(kc::Int(cells.size()));
      entry["fill"] = int_json(kc::filled_cells(arr, cells));
      entry["enumerated"] = true;
    }
    pretty += arr.name + ": cells=" + json_scalar_str(entry["cells"]) +
              " fill=" + json_scalar_str(entry["fill"]) + "\n";
    arrays.push_back(std::move(entry));
  }

  json j;
  j["schema_version"] = kc::kSchemaVersion;
  j["kernel"] = k.name;
  if (!bind.empty()) j["binding"] = bind;
  j["arrays"] = arrays;
  write_or_print(j, out, opts.force,
                 opts.format == "pretty" ? pretty : "");
  return 0;
}

int run_fit(const std::string& csv, const std::string& kernels_dir,
            const std::string& device_name, const std::string& out,
            const Opts& opts) {
  const auto records = read_any_csv(csv);
  KernelCache kc_cache{kernels_dir.empty() ? kc::suite_dir() : kernels_dir,
                       {}};
  const kc::Int cap = cap_or(opts, 20000000);
  std::vector<kc::FitCase> cases;
  cases.reserve(records.size());
  for (const auto& r : records) {
    const kc::KernelIR& k = kc_cache.get(r.kernel);
    cases.push_back({kc::extract_properties(k, r.binding, cap), r.time_s});
  }
  const auto d = kc::build_design_matrix(cases);
  auto [w, rep] = kc::fit_weights(d, device_name);
  if (out.empty()) {
    // mirror the weights-file layout on stdout
    json weights = json::object();
    const auto& keys = kc::schema_keys();
    for (std::size_t i = 0; i < kc::schema_size(); ++i)
      if (w.covered[i]) weights[keys[i]] = w.alpha[i];
    json j;
    j["device"] = w.device;
    j["schema_version"] = w.schema_version;
    j["weights"] = weights;
    j["fit"] = {{"objective", rep.objective}, {"n_cases", w.n_cases}};
    std::cout << j.dump(2) << "\n";
  } else {
    if (!opts.force && std::filesystem::exists(out))
      throw kc::Error(kc::Errc::io,
                      out + " exists; pass --force to overwrite");
    kc::write_weights_json(out, w, rep);
  }
  std::cerr << "fit: " << w.n_cases << " cases, objective " << rep.objective
            << ", " << rep.uncovered.size() << " uncovered keys\n";
  return 0;
}

int run_predict(const std::string& kernel_path, const std::string& weights,
                const std::string& bind, bool breakdown,
                const std::string& out, const Opts& opts) {
  const kc::KernelIR k = load_kernel(kernel_path);
  const kc::Binding b = kc::parse_binding(bind);
  const kc::ModelWeights w = kc::read_weights_json(weights);
  const kc::PropertyVector pv =
      kc::extract_properties(k, b, cap_or(opts, 1000000));
  const kc::Prediction p = kc::predict(w, pv);
  const json j = kc::prediction_json(k.name, b, p, breakdown);
  std::string pretty;
  if (opts.format == "pretty") {
    pretty = "predicted time: " + std::to_string(p.seconds) + " s\n";
    if (breakdown)
      for (const auto& [key, sec] : p.breakdown)
        pretty += "  " + key + ": " + std::to_string(sec) + " s\n";
  }
  for (const auto& wkey : p.warnings)
    std::cerr << "warning: property " << wkey
              << " not covered by the fit; contributes 0\n";
  write_or_print(j, out, opts.force, pretty);
  return 0;
}

int run_simulate(const std::string& device_path, const std::string& selection,
                 int runs, const std::string& out, const Opts& opts) {
  kc::SimDevice dev = device_path.empty() ? kc::SimDevice::reference()
                                          : kc::read_device_json(device_path);
  if (opts.seed_set) dev.seed = opts.seed;
  const kc::SuiteLibrary lib = kc::build_suite();
  std::vector<kc::SuiteCase> cases;
  if (selection == "measurement")
    cases = lib.measurement_cases();
  else if (selection == "test")
    cases = lib.test_cases();
  else if (selection == "all") {
    cases = lib.measurement_cases();
    const auto t = lib.test_cases();
    cases.insert(cases.end(), t.begin(), t.end());
  } else {
    throw kc::Error(kc::Errc::invalid_argument,
                    "--suite must be measurement, test or all");
  }
  const kc::Int cap = cap_or(opts, 20000000);

  if (!out.empty() && !opts.force && std::filesystem::exists(out))
    throw kc::Error(kc::Errc::io, out + " exists; pass --force to overwrite");

  if (runs > 0) {
    std::vector<kc::RawRun> rows;
    std::map<std::string, kc::KernelIR> parsed;
    for (const auto& c : cases) {
      auto it = parsed.find(c.kernel_id);
      if (it == parsed.end()) {
        const kc::SuiteKernel* sk = lib.find(c.kernel_id);
        kc::KernelIR k = kc::parse_kernel(sk->text);
        it = parsed.emplace(c.kernel_id, std::move(k)).first;
      }
      const auto pv = kc::extract_properties(it->second, c.binding, cap);
      const auto times =
          kc::simulate_runs(dev, c.kernel_id, c.binding, pv, runs);
      for (int r = 0; r < runs; ++r)
        rows.push_back({c.kernel_id, c.binding, c.group_config, r,
                        times[static_cast<std::size_t>(r)]});
    }
    if (out.empty()) {
      std::cout.precision(17);
      std::cout << "kernel,binding,group_config,run_index,time_s\n";
      for (const auto& r : rows)
        std::cout << r.kernel << "," << kc::binding_str(r.binding) << ","
                  << r.group_config << "," << r.run_index << "," << r.time_s
                  << "\n";
    } else {
      kc::write_raw_runs_csv(out, rows);
    }
    return 0;
  }

  const kc::CampaignResult res = kc::run_campaign(dev, lib, cases, cap);
  for (const auto& d : res.diagnostics) std::cerr << d << "\n";
  if (out.empty()) {
    std::cout.precision(17);
    std::cout << "kernel,binding,group_config,time_s\n";
    for (const auto& r : res.records)
      std::cout << r.kernel << "," << kc::binding_str(r.binding) << ","
                << r.group_config << "," << r.time_s << "\n";
  } else {
    kc::write_measurements_csv(out, res.records);
  }
  return res.diagnostics.empty() ? 0 : 2;
}

int run_eval(const std::string& weights, const std::string& csv,
             const std::string& kernels_dir, const std::string& out,
             const Opts& opts) {
  const kc::ModelWeights w = kc::read_weights_json(weights);
  const auto records = read_any_csv(csv);
  KernelCache kc_cache{kernels_dir.empty() ? kc::suite_dir() : kernels_dir,
                       {}};
  const kc::Int cap = cap_or(opts, 20000000);

  std::map<std::string, std::vector<std::pair<double, double>>> by_kernel;
  std::vector<std::pair<double, double>> all;
  for (const auto& r : records) {
    const kc::KernelIR& k = kc_cache.get(r.kernel);
    const auto pv = kc::extract_properties(k, r.binding, cap);
    const double pred = kc::predict(w, pv).seconds;
    by_kernel[r.kernel].emplace_back(pred, r.time_s);
    all.emplace_back(pred, r.time_s);
  }
  json per = json::object();
  std::string pretty;
  for (const auto& [id, pairs] : by_kernel) {
    const double gm = kc::geometric_mean_error(pairs);
    per[id] = gm;
    pretty += id + ": " + std::to_string(gm) + "\n";
  }
  const double overall = kc::geometric_mean_error(all);
  pretty += "overall: " + std::to_string(overall) + "\n";
  json j;
  j["per_kernel"] = per;
  j["overall"] = overall;
  j["n_cases"] = records.size();
  write_or_print(j, out, opts.force,
                 opts.format == "pretty" ? pretty : "");
  return 0;
}

int exit_code_for(const kc::Error& e) {
  switch (e.code()) {
    case kc::Errc::needs_binding:
    case kc::Errc::needs_fallback:
      return 3;
    case kc::Errc::schema_mismatch:
      return 4;
    case kc::Errc::parse:
    case kc::Errc::type_conflict:
    case kc::Errc::assumption_violated:
    case kc::Errc::cap_exceeded:
    case kc::Errc::invalid_argument:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"static kernel cost model toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Opts opts;
  app.add_option("--seed", opts.seed, "noise seed override")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  app.add_option("--cap", opts.cap, "enumeration work cap");
  app.add_option("--format", opts.format, "json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}));
  app.add_flag("--force", opts.force, "overwrite existing output files");

  std::string kernel_path, bind, out, weights, csv, kernels_dir, device_path;
  std::string device_name, selection = "measurement", dir;
  bool breakdown = false;
  int runs = 0;

  auto* c_count = app.add_subcommand("count", "extract kernel properties");
  c_count->add_option("kernel", kernel_path, "kernel text file")->required();
  c_count->add_option("--bind", bind, "binding, e.g. n=1024;m=512");
  c_count->add_option("--out", out, "output JSON path");

  auto* c_fp = app.add_subcommand("footprint", "per-array access footprints");
  c_fp->add_option("kernel", kernel_path, "kernel text file")->required();
  c_fp->add_option("--bind", bind, "binding, e.g. n=1024");
  c_fp->add_option("--out", out, "output JSON path");

  auto* c_fit = app.add_subcommand("fit", "fit weights to measurements");
  c_fit->add_option("csv", csv, "measurement CSV (reduced or raw runs)")
      ->required();
  c_fit->add_option("--kernels", kernels_dir, "kernel text directory");
  c_fit->add_option("--device-name", device_name,
                    "device label for the weights file");
  c_fit->add_option("--out", out, "weights JSON path");

  auto* c_pred = app.add_subcommand("predict", "predict a kernel time");
  c_pred->add_option("kernel", kernel_path, "kernel text file")->required();
  c_pred->add_option("--weights", weights, "weights JSON")->required();
  c_pred->add_option("--bind", bind, "binding")->required();
  c_pred->add_flag("--breakdown", breakdown, "per-property contributions");
  c_pred->add_option("--out", out, "output JSON path");

  auto* c_sim = app.add_subcommand("simulate", "run the synthetic campaign");
  c_sim->add_option("--device", device_path, "device spec JSON");
  c_sim->add_option("--suite", selection, "measurement, test or all");
  c_sim->add_option("--runs", runs, "emit N raw runs per case");
  c_sim->add_option("--out", out, "output CSV path");

  auto* c_eval = app.add_subcommand("eval", "evaluate predictions vs times");
  c_eval->add_option("csv", csv, "observed times CSV (reduced or raw runs)")
      ->required();
  c_eval->add_option("--weights", weights, "weights JSON")->required();
  c_eval->add_option("--kernels", kernels_dir, "kernel text directory");
  c_eval->add_option("--out", out, "output JSON path");

  auto* c_suite = app.add_subcommand("suite", "suite utilities");
  c_suite->require_subcommand(1);
  auto* c_emit = c_suite->add_subcommand("emit", "write kernel texts");
  c_emit->add_option("--dir", dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_count->parsed()) return run_count(kernel_path, bind, out, opts);
    if (c_fp->parsed()) return run_footprint(kernel_path, bind, out, opts);
    if (c_fit->parsed())
      return run_fit(csv, kernels_dir, device_name, out, opts);
    if (c_pred->parsed())
      return run_predict(kernel_path, weights, bind, breakdown, out, opts);
    if (c_sim->parsed())
      return run_simulate(device_path, selection, runs, out, opts);
    if (c_eval->parsed()) return run_eval(weights, csv, kernels_dir, out, opts);
    if (c_suite->parsed()) {
      kc::emit_suite(kc::build_suite(), dir);
      std::cerr << "suite written to " << dir << "\n";
      return 0;
    }
  } catch (const kc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
