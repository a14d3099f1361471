#pragma once

#include <string>

#include "json.hpp"
#include "kernelcost/model.hpp"
#include "kernelcost/props.hpp"
#include "kernelcost/simdevice.hpp"

namespace kernelcost {

using json = nlohmann::json;

/// {schema_version, kernel, binding?, properties:{key: count}}. Bound
/// counts appear as numbers when they fit in 64 bits, otherwise as decimal
/// strings; symbolic counts appear as canonical expression strings.
json property_report_json(const std::string& kernel, const Binding* binding,
                          const PropertyVector& pv);

json prediction_json(const std::string& kernel, const Binding& binding,
                     const Prediction& p, bool breakdown);

/// Atomic write (temp file + rename), 2-space indent, trailing newline.
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);  // E_IO / E_PARSE

void write_weights_json(const std::string& path, const ModelWeights& w,
                        const FitReport& rep);
ModelWeights read_weights_json(const std::string& path);

void write_device_json(const std::string& path, const SimDevice& dev);
SimDevice read_device_json(const std::string& path);

}  // namespace kernelcost
