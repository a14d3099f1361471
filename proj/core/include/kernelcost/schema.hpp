#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kernelcost {

inline constexpr const char* kSchemaVersion = "v1";

/// Utilization classes in schema order. "uniform" marks lane-invariant
/// addresses; "q/s" reads q useful lanes out of a stride-s transaction
/// group; ">4" is the saturated denominator for strides above four.
const std::vector<std::string>& schema_classes();

/// The fixed ordered key list. Loads, then stores, over sizes s32/s64/s128
/// and the fifteen classes; min(load,store) counterparts; local loads; flop
/// kinds per float width; barrier, group and constant launch terms.
const std::vector<std::string>& schema_keys();

size_t schema_size();

/// Position of key in schema order; throws Error(Errc::schema_mismatch)
/// for anything else.
size_t schema_index(const std::string& key);

bool is_schema_key(const std::string& key);

std::string global_key(bool store, int bits, const std::string& cls);
std::string minls_key(int bits, const std::string& cls);

}  // namespace kernelcost
