#include "kernelcost/schema.hpp"

#include <unordered_map>

#include "kernelcost/error.hpp"

namespace kernelcost {

const std::vector<std::string>& schema_classes() {
  static const std::vector<std::string> classes = {
      "uniform", "1/1", "1/2", "2/2",  "1/3",  "2/3",  "3/3", "1/4",
      "2/4",     "3/4", "4/4", "1/>4", "2/>4", "3/>4", "4/>4"};
  return classes;
}

const std::vector<std::string>& schema_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    const char* sizes[] = {"s32", "s64", "s128"};
    for (const char* dir : {"load", "store"})
      for (const char* sz : sizes)
        for (const auto& cls : schema_classes())
          k.push_back(std::string("mem.global.") + dir + "." + sz + "." +
                      cls);
    for (const char* sz : sizes)
      for (const auto& cls : schema_classes())
        k.push_back(std::string("mem.minls.") + sz + "." + cls);
    k.push_back("mem.local.load");
    for (const char* dt : {"f32", "f64"})
      for (const char* kind : {"addsub", "mul", "div", "pow", "special"})
        k.push_back(std::string("flop.") + dt + "." + kind);
    k.push_back("sync.barrier");
    k.push_back("launch.groups");
    k.push_back("launch.const");
    return k;
  }();
  return keys;
}

size_t schema_size() { return schema_keys().size(); }

size_t schema_index(const std::string& key) {
  static const std::unordered_map<std::string, size_t> index = [] {
    std::unordered_map<std::string, size_t> m;
    const auto& keys = schema_keys();
    for (size_t i = 0; i < keys.size(); ++i) m.emplace(keys[i], i);
    return m;
  }();
  auto it = index.find(key);
  if (it == index.end())
    throw Error(Errc::schema_mismatch, "unknown property key '" + key + "'");
  return it->second;
}

bool is_schema_key(const std::string& key) {
  const auto& keys = schema_keys();
  for (const auto& k : keys)
    if (k == key) return true;
  return false;
}

std::string global_key(bool store, int bits, const std::string& cls) {
  return std::string("mem.global.") + (store ? "store" : "load") + ".s" +
         std::to_string(bits) + "." + cls;
}

std::string minls_key(int bits, const std::string& cls) {
  return "mem.minls.s" + std::to_string(bits) + "." + cls;
}

}  // namespace kernelcost
