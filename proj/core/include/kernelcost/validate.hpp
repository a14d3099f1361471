#pragma once

#include <vector>

#include "kernelcost/diagnostics.hpp"
#include "kernelcost/ir.hpp"

namespace kernelcost {

/// Structural validation; empty result means all IR invariants hold.
/// Codes: E_DUP_IDENT, E_AXIS_LIMIT, E_AXIS_INDEX_DUP, E_LOCAL_EXTENT_PARAM,
/// E_LOCAL_SHAPE_PARAM, E_LOCAL_INTENT, E_WRITE_READONLY, E_RANK_MISMATCH.
std::vector<Diagnostic> validate(const KernelIR& k);

}  // namespace kernelcost
