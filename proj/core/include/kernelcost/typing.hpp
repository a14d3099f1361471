#pragma once

#include <unordered_map>

#include "kernelcost/ir.hpp"

namespace kernelcost {

using TypeMap = std::unordered_map<const Expr*, DType>;

/// Types every Expr node. Promotion: i32 with f32 -> f32, f32 with f64 ->
/// f64; literals adopt the widest float dtype among sibling operands
/// (default f32 for float-lexed, i32 for integer-lexed literals); calls are
/// float-valued, at least f32. Throws Error(Errc::type_conflict) when an
/// assignment would narrow (float into i32, f64 into f32).
TypeMap infer_types(const KernelIR& k);

}  // namespace kernelcost
