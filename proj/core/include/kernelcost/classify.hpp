#pragma once

#include <string>

#include "kernelcost/countexpr.hpp"
#include "kernelcost/decide.hpp"
#include "kernelcost/footprint.hpp"
#include "kernelcost/ir.hpp"

namespace kernelcost {

/// Memory-access category: direction, element size and the utilization
/// class label used in property keys.
struct AccessClass {
  bool store = false;
  int bits = 32;
  CountExpr stride;  // |lane coefficient| in element units; 0 = uniform
  std::string cls;   // "uniform", "1/1", ..., "4/>4"
};

/// Class label from concrete stride and per-array cell/fill counts:
/// q = clamp(ceil(u*s), 1, 4) with u = cells/fill, denominator s capped at
/// ">4". Strides 0 and 1 ignore utilization.
std::string classify_ratio(const Int& s, const Int& cells, const Int& fill);

/// Symbolic counterpart: decides ceil(u*s) through nonnegativity proofs on
/// s*cells - k*fill. Throws Error(Errc::needs_binding) when the stride
/// bucket or the quantized numerator cannot be decided.
std::string classify_symbolic(const CountExpr& stride, const CountExpr& cells,
                              const CountExpr& fill, const DecideCtx& dc);

/// Full classification of one global-array access; cells/fill describe the
/// whole array's footprint (utilization is a per-array quantity).
AccessClass classify_access(const KernelIR& k, const AccessRef& acc,
                            const CountExpr& cells, const CountExpr& fill,
                            const AssumeCtx& actx);

}  // namespace kernelcost
