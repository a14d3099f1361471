#pragma once

#include <map>
#include <string>
#include <vector>

#include "kernelcost/countexpr.hpp"
#include "kernelcost/ir.hpp"
#include "kernelcost/schema.hpp"
#include "kernelcost/typing.hpp"

namespace kernelcost {

/// Schema-indexed count vector; "bound" when every entry is a constant
/// integer. Immutable once produced by extraction.
struct PropertyVector {
  std::vector<CountExpr> entries;  // one per schema key, in schema order

  PropertyVector();

  CountExpr& at(const std::string& key);
  const CountExpr& at(const std::string& key) const;

  bool is_bound() const;
  /// All entries as integers; requires is_bound().
  std::vector<Int> integers() const;
};

/// Per-point floating-point operation counts of one right-hand side, keyed
/// by flop.* schema keys. Integer-typed operations are not counted.
std::map<std::string, Int> rhs_op_counts(const Expr& rhs, const TypeMap& tm);

/// Symbolic extraction over the parameters. Throws
/// Error(Errc::needs_fallback) when a domain count cannot be expressed and
/// Error(Errc::needs_binding) when a footprint or classification is not
/// symbolically decidable; messages name the statement or array.
PropertyVector extract_properties(const KernelIR& k);

/// Bound-mode extraction: symbolic sub-results are evaluated at the
/// binding; undecidable ones are enumerated (cap limits the enumeration).
/// Throws Error(Errc::assumption_violated) for inadmissible bindings and
/// Error(Errc::cap_exceeded) when enumeration exceeds cap.
PropertyVector extract_properties(const KernelIR& k, const Binding& b,
                                  const Int& cap = Int(1000000));

/// Evaluates every entry at the binding. Throws
/// Error(Errc::assumption_violated) when the binding breaks an assume
/// clause; idempotent on bound vectors.
PropertyVector evaluate_properties(const KernelIR& k,
                                   const PropertyVector& pv, const Binding& b);

}  // namespace kernelcost
