#pragma once

#include <string>
#include <vector>

#include "kernelcost/countexpr.hpp"

namespace kernelcost {

/// One reduced timing observation for a kernel at a concrete binding.
struct MeasurementRecord {
  std::string kernel;
  Binding binding;
  std::string group_config;  // e.g. "16x16" or "256"
  double time_s = 0.0;
};

/// One raw timing sample; run_index starts at 0 and orders the runs.
struct RawRun {
  std::string kernel;
  Binding binding;
  std::string group_config;
  int run_index = 0;
  double time_s = 0.0;
};

// Canonical binding text: "m=12;n=1024", keys sorted. Round-trips through
// parse_binding. Empty string for an empty binding.
std::string binding_str(const Binding& b);
Binding parse_binding(const std::string& s);

// kernel,binding,group_config,time_s
void write_measurements_csv(const std::string& path,
                            const std::vector<MeasurementRecord>& recs);
std::vector<MeasurementRecord> read_measurements_csv(const std::string& path);

// kernel,binding,group_config,run_index,time_s
void write_raw_runs_csv(const std::string& path,
                        const std::vector<RawRun>& runs);
std::vector<RawRun> read_raw_runs_csv(const std::string& path);

/// Collapse ordered per-run times into one observation: the first
/// `discard` runs are warm-up and are dropped, the minimum of the rest
/// is kept. Throws E_INVALID_ARGUMENT when no runs survive.
double reduce_runs(const std::vector<double>& ordered_times, int discard = 4);

/// Group raw runs by (kernel, binding, group_config) and reduce each
/// group. Output is sorted by kernel, then binding text.
std::vector<MeasurementRecord> reduce_raw_runs(const std::vector<RawRun>& runs,
                                               int discard = 4);

}  // namespace kernelcost
