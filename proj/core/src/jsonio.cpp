#include "kernelcost/jsonio.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "kernelcost/csvio.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/schema.hpp"

namespace kernelcost {

namespace {

json count_to_json(const CountExpr& e) {
  if (e.is_constant()) {
    const Rat v = e.constant_value();
    if (rat_is_integer(v)) {
      static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
      static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
      const Int iv = rat_num(v);
      if (iv >= lo && iv <= hi) return json(to_int64(iv));
      return json(iv.str());
    }
    return json(rat_str(v));
  }
  return json(e.str());
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open for writing: " + tmp);
    out << content;
    if (!out.flush()) throw Error(Errc::io, "write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::io, "cannot rename " + tmp + " to " + path);
}

}  // namespace

json property_report_json(const std::string& kernel, const Binding* binding,
                          const PropertyVector& pv) {
  json props = json::object();
  const auto& keys = schema_keys();
  for (std::size_t i = 0; i < schema_size(); ++i)
    props[keys[i]] = count_to_json(pv.entries[i]);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["kernel"] = kernel;
  if (binding) {
    json b = json::object();
    for (const auto& [k, v] : *binding) b[k] = count_to_json(CountExpr::from_int(v));
    out["binding"] = b;
  }
  out["properties"] = props;
  return out;
}

json prediction_json(const std::string& kernel, const Binding& binding,
                     const Prediction& p, bool breakdown) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["kernel"] = kernel;
  json b = json::object();
  for (const auto& [k, v] : binding) b[k] = count_to_json(CountExpr::from_int(v));
  out["binding"] = b;
  out["predicted_time_s"] = p.seconds;
  if (breakdown) {
    json parts = json::object();
    for (const auto& [key, sec] : p.breakdown) parts[key] = sec;
    out["breakdown"] = parts;
  }
  if (!p.warnings.empty()) out["uncovered_keys"] = p.warnings;
  return out;
}

void write_json_file(const std::string& path, const json& j) {
  atomic_write(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
}

void write_weights_json(const std::string& path, const ModelWeights& w,
                        const FitReport& rep) {
  if (w.alpha.size() != schema_size())
    throw Error(Errc::schema_mismatch, "weight vector size");
  json weights = json::object();
  json covered = json::object();
  const auto& keys = schema_keys();
  for (std::size_t i = 0; i < schema_size(); ++i) {
    weights[keys[i]] = w.alpha[i];
    covered[keys[i]] = static_cast<bool>(w.covered[i]);
  }
  json out;
  out["device"] = w.device;
  out["schema_version"] = w.schema_version;
  out["weights"] = weights;
  out["covered"] = covered;
  out["fit"] = {{"objective", rep.objective}, {"n_cases", w.n_cases}};
  write_json_file(path, out);
}

ModelWeights read_weights_json(const std::string& path) {
  const json j = read_json_file(path);
  ModelWeights w;
  try {
    w.device = j.value("device", std::string());
    w.schema_version = j.at("schema_version").get<std::string>();
    if (w.schema_version != kSchemaVersion)
      throw Error(Errc::schema_mismatch,
                  path + ": schema '" + w.schema_version + "', expected '" +
                      kSchemaVersion + "'");
    w.alpha.assign(schema_size(), 0.0);
    w.covered.assign(schema_size(), false);
    for (const auto& [key, val] : j.at("weights").items()) {
      w.alpha[schema_index(key)] = val.get<double>();
      w.covered[schema_index(key)] = true;
    }
    if (j.contains("covered"))
      for (const auto& [key, val] : j.at("covered").items())
        w.covered[schema_index(key)] = val.get<bool>();
    if (j.contains("fit")) {
      w.objective = j["fit"].value("objective", 0.0);
      w.n_cases = j["fit"].value("n_cases", std::size_t{0});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
  return w;
}

void write_device_json(const std::string& path, const SimDevice& dev) {
  if (dev.alpha.size() != schema_size())
    throw Error(Errc::schema_mismatch, "device weight vector size");
  json weights = json::object();
  const auto& keys = schema_keys();
  for (std::size_t i = 0; i < schema_size(); ++i)
    if (dev.alpha[i] != 0.0) weights[keys[i]] = dev.alpha[i];
  json out;
  out["name"] = dev.name;
  out["sigma"] = dev.sigma;
  out["seed"] = dev.seed;
  out["weights"] = weights;
  write_json_file(path, out);
}

SimDevice read_device_json(const std::string& path) {
  const json j = read_json_file(path);
  SimDevice dev;
  dev.alpha.assign(schema_size(), 0.0);
  try {
    dev.name = j.value("name", std::string("simdev"));
    dev.sigma = j.value("sigma", 0.0);
    dev.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("weights"))
      for (const auto& [key, val] : j.at("weights").items())
        dev.alpha[schema_index(key)] = val.get<double>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
  return dev;
}

}  // namespace kernelcost
