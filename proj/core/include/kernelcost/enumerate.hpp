#pragma once

#include <set>
#include <vector>

#include "kernelcost/counting.hpp"
#include "kernelcost/ir.hpp"
#include "kernelcost/props.hpp"

namespace kernelcost {

/// Result of brute-force enumeration: a bound property vector plus the
/// number of lattice points visited (leaves and guard-pruned assignments).
struct EnumTally {
  PropertyVector props;
  Int points = 0;
};

/// Brute-force oracle over every statement domain at the binding. Shares
/// the classification arithmetic with extraction; only the counting
/// differs. Throws Error(Errc::cap_exceeded) when traversal work exceeds
/// cap and Error(Errc::assumption_violated) for inadmissible bindings.
EnumTally enumerate_points(const KernelIR& k, const Binding& b,
                           const Int& cap = Int(1000000));

/// Guard-satisfying integer points of one statement domain at the binding.
/// `visited` accumulates traversal work and is checked against cap.
Int domain_point_count(const StmtDomain& d, const Binding& b, const Int& cap,
                       Int& visited);

/// Distinct cells touched by all of the array's accesses at the binding.
std::set<std::vector<Int>> array_cells(const KernelIR& k,
                                       const ArrayDecl& arr, const Binding& b,
                                       const Int& cap, Int& visited);

/// Stride-filled cell count of an enumerated footprint: the fastest layout
/// axis spans its full [min, max] interval; other axes keep their distinct
/// coordinate tuples.
Int filled_cells(const ArrayDecl& arr,
                 const std::set<std::vector<Int>>& cells);

}  // namespace kernelcost
