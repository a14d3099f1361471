#include "kernelcost/simdevice.hpp"

#include <cmath>

#include "kernelcost/csvio.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/schema.hpp"

namespace kernelcost {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double unit_interval(std::uint64_t bits) {
  // 53 mantissa bits -> [0, 1)
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double keyed_gaussian(std::uint64_t seed, const std::string& key,
                      std::uint64_t counter) {
  std::uint64_t state = fnv1a(key) ^ (seed * 0x9e3779b97f4a7c15ULL) ^
                        (counter * 0xd1342543de82ef95ULL);
  double u1 = unit_interval(splitmix64(state));
  const double u2 = unit_interval(splitmix64(state));
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

SimDevice SimDevice::reference() {
  SimDevice dev;
  dev.name = "simdev-v1";
  dev.sigma = 0.0;
  dev.seed = 0;
  dev.alpha.assign(schema_size(), 0.0);
  const auto set = [&](const std::string& key, double v) {
    dev.alpha[schema_index(key)] = v;
  };
  set("flop.f32.addsub", 6.81e-13);
  set("flop.f32.mul", 5.68e-13);
  set("flop.f32.pow", 3.91e-13);
  set("flop.f32.special", 1.61e-12);
  set("mem.local.load", -1.76e-12);
  set("mem.global.load.s32.1/1", 8.27e-12);
  set("mem.global.load.s32.2/2", 9.82e-13);
  set("mem.global.load.s32.2/3", 2.89e-11);
  set("mem.global.load.s32.3/3", 9.30e-13);
  set("mem.global.load.s32.4/>4", 2.67e-12);
  set("mem.global.store.s32.1/1", 6.52e-12);
  set("mem.global.store.s32.4/>4", 3.55e-10);
  set("mem.minls.s32.1/1", -6.63e-12);
  set("sync.barrier", 4.26e-11);
  set("launch.groups", 3.75e-09);
  set("launch.const", 1.29e-04);
  return dev;
}

double noiseless_time(const SimDevice& dev, const PropertyVector& bound) {
  if (dev.alpha.size() != schema_size())
    throw Error(Errc::schema_mismatch,
                "device weight vector does not match schema v1");
  if (!bound.is_bound())
    throw Error(Errc::invalid_argument,
                "property vector must be bound to simulate a time");
  double t = 0.0;
  for (std::size_t i = 0; i < schema_size(); ++i) {
    if (dev.alpha[i] == 0.0) continue;
    const Rat v = bound.entries[i].evaluate_rat({});
    t += dev.alpha[i] * static_cast<double>(v.convert_to<double>());
  }
  return t;
}

static std::string noise_key(const std::string& kernel, const Binding& b) {
  return kernel + "|" + binding_str(b);
}

double simulate_time(const SimDevice& dev, const std::string& kernel,
                     const Binding& b, const PropertyVector& bound) {
  const double t0 = noiseless_time(dev, bound);
  if (dev.sigma == 0.0) return t0;
  const double g = keyed_gaussian(dev.seed, noise_key(kernel, b), 0);
  return t0 * std::exp(dev.sigma * g);
}

double simulate_time(const SimDevice& dev, const KernelIR& k, const Binding& b,
                     const Int& cap) {
  return simulate_time(dev, k.name, b, extract_properties(k, b, cap));
}

std::vector<double> simulate_runs(const SimDevice& dev,
                                  const std::string& kernel, const Binding& b,
                                  const PropertyVector& bound, int runs) {
  if (runs <= 0)
    throw Error(Errc::invalid_argument, "run count must be positive");
  const double t0 = noiseless_time(dev, bound);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(runs));
  const std::string key = noise_key(kernel, b);
  for (int r = 0; r < runs; ++r) {
    double t = t0;
    if (dev.sigma != 0.0) {
      const double g =
          keyed_gaussian(dev.seed, key, static_cast<std::uint64_t>(r));
      t *= std::exp(dev.sigma * g);
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace kernelcost
