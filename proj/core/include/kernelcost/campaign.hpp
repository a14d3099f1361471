#pragma once

#include <string>
#include <vector>

#include "kernelcost/csvio.hpp"
#include "kernelcost/simdevice.hpp"
#include "kernelcost/suite.hpp"

namespace kernelcost {

struct CampaignResult {
  std::vector<MeasurementRecord> records;  // case order
  std::vector<std::string> diagnostics;    // one entry per failed case
};

/// Runs every case on the device: parse (cached per kernel), extract
/// bound properties (cached per case), simulate one observation.
/// Per-case failures become diagnostics instead of aborting the run.
CampaignResult run_campaign(const SimDevice& dev, const SuiteLibrary& lib,
                            const std::vector<SuiteCase>& cases,
                            const Int& cap = Int(20000000));

}  // namespace kernelcost
