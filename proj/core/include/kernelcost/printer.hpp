#pragma once

#include <string>

#include "kernelcost/ir.hpp"

namespace kernelcost {

/// Canonical textual form in the kernel grammar; parse(print(k)) yields a
/// kernel with identical structure and counts.
std::string print_kernel(const KernelIR& k);

/// Expression text with minimal parentheses (round-trips through the
/// expression parser to the identical tree).
std::string print_expr(const Expr& e);

}  // namespace kernelcost
