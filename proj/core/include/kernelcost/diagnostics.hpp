#pragma once

#include <string>
#include <vector>

namespace kernelcost {

/// Structural finding from validate(); code values are stable strings used
/// in tests and CLI output.
struct Diagnostic {
  std::string code;
  std::string where;  // offending identifier or "line N"
  std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& ds);

}  // namespace kernelcost
