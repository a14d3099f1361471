#include "kernelcost/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "kernelcost/error.hpp"

namespace kernelcost {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

void check_field(const std::string& f) {
  if (f.find(',') != std::string::npos || f.find('\n') != std::string::npos)
    throw Error(Errc::invalid_argument,
                "csv field may not contain a comma or newline: " + f);
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

double parse_time(const std::string& s, const std::string& path, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::parse, path + ": line " + std::to_string(line) +
                                 ": bad time value '" + s + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_time(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

}  // namespace

std::string binding_str(const Binding& b) {
  std::string out;
  for (const auto& [k, v] : b) {
    if (!out.empty()) out += ';';
    out += k + "=" + v.str();
  }
  return out;
}

Binding parse_binding(const std::string& s) {
  Binding b;
  if (s.empty()) return b;
  for (const std::string& part : split(s, ';')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::parse, "bad binding entry '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    try {
      b[key] = Int(val);
    } catch (const std::exception&) {
      throw Error(Errc::parse, "bad binding value '" + part + "'");
    }
  }
  return b;
}

void write_measurements_csv(const std::string& path,
                            const std::vector<MeasurementRecord>& recs) {
  std::string out = "kernel,binding,group_config,time_s\n";
  for (const auto& r : recs) {
    check_field(r.kernel);
    check_field(r.group_config);
    out += r.kernel + "," + binding_str(r.binding) + "," + r.group_config +
           "," + fmt_time(r.time_s) + "\n";
  }
  atomic_write(path, out);
}

std::vector<MeasurementRecord> read_measurements_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  std::vector<MeasurementRecord> recs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "kernel,binding,group_config,time_s")
        throw Error(Errc::parse, path + ": unexpected header '" + line + "'");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4)
      throw Error(Errc::parse, path + ": line " + std::to_string(line_no) +
                                   ": expected 4 fields, got " +
                                   std::to_string(f.size()));
    MeasurementRecord r;
    r.kernel = f[0];
    r.binding = parse_binding(f[1]);
    r.group_config = f[2];
    r.time_s = parse_time(f[3], path, line_no);
    recs.push_back(std::move(r));
  }
  return recs;
}

void write_raw_runs_csv(const std::string& path,
                        const std::vector<RawRun>& runs) {
  std::string out = "kernel,binding,group_config,run_index,time_s\n";
  for (const auto& r : runs) {
    check_field(r.kernel);
    check_field(r.group_config);
    out += r.kernel + "," + binding_str(r.binding) + "," + r.group_config +
           "," + std::to_string(r.run_index) + "," + fmt_time(r.time_s) + "\n";
  }
  atomic_write(path, out);
}

std::vector<RawRun> read_raw_runs_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  std::vector<RawRun> runs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "kernel,binding,group_config,run_index,time_s")
        throw Error(Errc::parse, path + ": unexpected header '" + line + "'");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 5)
      throw Error(Errc::parse, path + ": line " + std::to_string(line_no) +
                                   ": expected 5 fields, got " +
                                   std::to_string(f.size()));
    RawRun r;
    r.kernel = f[0];
    r.binding = parse_binding(f[1]);
    r.group_config = f[2];
    try {
      r.run_index = std::stoi(f[3]);
    } catch (const std::exception&) {
      throw Error(Errc::parse, path + ": line " + std::to_string(line_no) +
                                   ": bad run index '" + f[3] + "'");
    }
    r.time_s = parse_time(f[4], path, line_no);
    runs.push_back(std::move(r));
  }
  return runs;
}

double reduce_runs(const std::vector<double>& ordered_times, int discard) {
  if (discard < 0)
    throw Error(Errc::invalid_argument, "negative discard count");
  if (ordered_times.size() <= static_cast<std::size_t>(discard))
    throw Error(Errc::invalid_argument,
                "need more than " + std::to_string(discard) +
                    " runs, got " + std::to_string(ordered_times.size()));
  return *std::min_element(ordered_times.begin() + discard,
                           ordered_times.end());
}

std::vector<MeasurementRecord> reduce_raw_runs(const std::vector<RawRun>& runs,
                                               int discard) {
  std::map<std::tuple<std::string, std::string, std::string>,
           std::vector<std::pair<int, double>>>
      groups;
  for (const auto& r : runs)
    groups[{r.kernel, binding_str(r.binding), r.group_config}].emplace_back(
        r.run_index, r.time_s);
  std::vector<MeasurementRecord> out;
  for (auto& [key, samples] : groups) {
    std::sort(samples.begin(), samples.end());
    std::vector<double> times;
    times.reserve(samples.size());
    for (const auto& [idx, t] : samples) times.push_back(t);
    MeasurementRecord rec;
    rec.kernel = std::get<0>(key);
    rec.binding = parse_binding(std::get<1>(key));
    rec.group_config = std::get<2>(key);
    rec.time_s = reduce_runs(times, discard);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace kernelcost
