#include "kernelcost/campaign.hpp"

#include <map>

#include "kernelcost/error.hpp"
#include "kernelcost/parser.hpp"
#include "kernelcost/validate.hpp"

namespace kernelcost {

CampaignResult run_campaign(const SimDevice& dev, const SuiteLibrary& lib,
                            const std::vector<SuiteCase>& cases,
                            const Int& cap) {
  CampaignResult res;
  std::map<std::string, KernelIR> parsed;
  for (const SuiteCase& c : cases) {
    try {
      auto it = parsed.find(c.kernel_id);
      if (it == parsed.end()) {
        const SuiteKernel* sk = lib.find(c.kernel_id);
        if (!sk)
          throw Error(Errc::invalid_argument,
                      "unknown suite kernel '" + c.kernel_id + "'");
        KernelIR k = parse_kernel(sk->text);
        if (const auto ds = validate(k); !ds.empty())
          throw Error(Errc::invalid_argument, format_diagnostics(ds));
        it = parsed.emplace(c.kernel_id, std::move(k)).first;
      }
      const PropertyVector props =
          extract_properties(it->second, c.binding, cap);
      MeasurementRecord rec;
      rec.kernel = c.kernel_id;
      rec.binding = c.binding;
      rec.group_config = c.group_config;
      rec.time_s = simulate_time(dev, c.kernel_id, c.binding, props);
      res.records.push_back(std::move(rec));
    } catch (const Error& e) {
      res.diagnostics.push_back(c.kernel_id + " [" + binding_str(c.binding) +
                                "]: " + e.what());
    }
  }
  return res;
}

}  // namespace kernelcost
