#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kernelcost/ir.hpp"
#include "kernelcost/numeric.hpp"
#include "kernelcost/props.hpp"

namespace kernelcost {

/// Synthetic timing device. Wall time is the inner product of the bound
/// property vector with fixed per-unit costs, optionally wrapped in
/// multiplicative lognormal noise: T = (sum alpha_i p_i) * exp(sigma * g)
/// where g is a standard normal drawn deterministically from
/// (seed, kernel, binding, run). sigma == 0 gives bit-reproducible times.
struct SimDevice {
  std::string name = "simdev";
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> alpha;  // schema-indexed, seconds per unit

  /// Built-in cost profile used by the bundled suite.
  static SimDevice reference();
};

/// Deterministic standard normal for (seed, key, counter).
double keyed_gaussian(std::uint64_t seed, const std::string& key,
                      std::uint64_t counter);

/// Inner product only, no noise. Requires a bound property vector.
double noiseless_time(const SimDevice& dev, const PropertyVector& bound);

/// One observation per the device model; props must already be bound.
double simulate_time(const SimDevice& dev, const std::string& kernel,
                     const Binding& b, const PropertyVector& bound);

/// Convenience: extract properties at the binding, then simulate.
double simulate_time(const SimDevice& dev, const KernelIR& k, const Binding& b,
                     const Int& cap = Int(1000000));

/// `runs` observations with independent noise draws (run index keys the
/// noise counter), in run order.
std::vector<double> simulate_runs(const SimDevice& dev,
                                  const std::string& kernel, const Binding& b,
                                  const PropertyVector& bound, int runs);

}  // namespace kernelcost
