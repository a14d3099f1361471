#pragma once

#include <string>
#include <vector>

#include "kernelcost/counting.hpp"
#include "kernelcost/ir.hpp"

namespace kernelcost {

/// Value set of one array dimension across the accesses: an arithmetic
/// progression {min, min+step, ..., max} with card elements. step is 1 for
/// dense or single-value images.
struct AxisImage {
  CountExpr min;
  CountExpr max;
  CountExpr card;
  Int step = 1;
  std::vector<std::string> support;  // domain vars feeding this dimension
};

struct Footprint {
  const ArrayDecl* array = nullptr;
  std::vector<AxisImage> axes;  // one per array dimension
  CountExpr cells;              // |F|: distinct cells over all accesses
};

/// Symbolic footprint of all accesses to the array. Requires identical
/// per-axis images across accesses and variable-disjoint dimensions;
/// otherwise throws Error(Errc::needs_binding) and the caller enumerates at
/// a concrete binding.
Footprint access_footprint(const KernelIR& k, const ArrayDecl& arr,
                           const AssumeCtx& actx);

/// Stride-filled cell count: the fastest-varying layout dimension's image
/// is replaced by the full interval [min, max]; other dimensions keep their
/// cardinalities.
CountExpr fill_footprint(const Footprint& f);

/// Index of the fastest-varying dimension in address order (last for
/// row_major, first for column_major).
size_t fastest_axis(const ArrayDecl& arr);

/// |coefficient| of the lane axis (local(0)) in the linearized element
/// address; 0 when absent (uniform access). Symbolic when array extents are
/// parametric. Throws Error(Errc::needs_binding) if the sign of the
/// coefficient cannot be decided symbolically.
CountExpr lane_stride(const KernelIR& k, const AccessRef& acc,
                      const AssumeCtx& actx);

/// Same coefficient before taking the absolute value; evaluable at a
/// binding, which sidesteps the symbolic sign decision.
CountExpr lane_stride_signed(const KernelIR& k, const AccessRef& acc,
                             const AssumeCtx& actx);

/// Image of a single affine index expression over a statement domain;
/// building block of access_footprint, exposed for testing.
AxisImage index_image(const LinExpr& idx, const StmtDomain& dom,
                      const AssumeCtx& actx);

}  // namespace kernelcost
