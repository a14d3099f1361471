#pragma once

#include <string>

#include "kernelcost/ir.hpp"

namespace kernelcost {

/// Parses kernel text in the line-oriented grammar. Throws ParseError for
/// syntax errors and construction-blocking semantic errors (undeclared
/// identifiers, non-affine or non-integer indices, rank mismatches), all
/// with 1-based line/column positions. Structural invariants that leave the
/// IR well formed (intent misuse, axis limits, duplicates) are deferred to
/// validate().
KernelIR parse_kernel(const std::string& source);

/// Reads and parses a kernel file; throws Error(Errc::io) when unreadable.
KernelIR parse_kernel_file(const std::string& path);

}  // namespace kernelcost
