#pragma once

#include <random>
#include <string>
#include <vector>

#include "kernelcost/countexpr.hpp"

namespace kernelcost {

/// One admissible-lattice dimension for oracle sampling: the parameter
/// takes values unit * u for u in [lo, hi].
struct OracleDim {
  std::string param;
  Int unit = 1;
  long lo = 1;
  long hi = 1;
};

/// Parameter fixed by another one (e.g. m = 8 * n in the skinny case).
struct DerivedParam {
  std::string param;
  Int factor = 1;
  std::string source;
};

struct SuiteKernel {
  std::string id;
  std::string role;          // "measurement" or "test"
  std::string group_config;  // "16x12", "256", ...
  std::string text;
  std::vector<OracleDim> oracle;
  std::vector<DerivedParam> derived;
  std::vector<Binding> cases;  // campaign schedule, deterministic order
};

struct SuiteCase {
  std::string kernel_id;
  Binding binding;
  std::string group_config;
};

struct SuiteLibrary {
  std::vector<SuiteKernel> kernels;

  const SuiteKernel* find(const std::string& id) const;
  std::vector<SuiteCase> measurement_cases() const;
  std::vector<SuiteCase> test_cases() const;
};

/// Builds every bundled kernel text plus its campaign schedule and oracle
/// lattice. Deterministic: two calls produce identical libraries.
SuiteLibrary build_suite();

/// Draws one admissible binding from the kernel's oracle lattice.
Binding sample_oracle_binding(const SuiteKernel& k, std::mt19937_64& rng);

/// Writes <id>.knl per kernel plus manifest.json into dir (created if
/// missing). Existing files are overwritten.
void emit_suite(const SuiteLibrary& lib, const std::string& dir);

/// KERNELCOST_SUITE_DIR env var if set, else the bundled directory.
std::string suite_dir();

/// Path of a bundled kernel text: suite_dir()/<id>.knl. E_IO if absent.
std::string resolve_kernel_file(const std::string& id);

}  // namespace kernelcost
