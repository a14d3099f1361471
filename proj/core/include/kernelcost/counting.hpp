#pragma once

#include <string>
#include <vector>

#include "kernelcost/decide.hpp"
#include "kernelcost/ir.hpp"

namespace kernelcost {

/// One domain variable: a grid axis or an enclosing sequential loop.
struct DomainVar {
  std::string name;
  LinExpr lower;       // inclusive
  LinExpr upper_excl;  // exclusive
  bool is_axis = false;
  bool is_group_axis = false;
};

/// Iteration domain of one statement: group axes, local axes, then
/// enclosing loop variables outermost-first, plus accumulated guards.
/// Bounds are triangular: each variable's bounds reference only parameters
/// and variables listed before it.
struct StmtDomain {
  std::vector<DomainVar> vars;
  std::vector<LinCmp> guards;
};

/// Domain of a statement given its enclosing loop/guard chain (as produced
/// by walk_stmts / collect_accesses).
StmtDomain stmt_domain(const KernelIR& k, const Stmt& stmt,
                       const std::vector<const Stmt*>& enclosing);

/// Locates the statement in the kernel and builds its domain. The statement
/// must be reachable from k.body.
StmtDomain stmt_domain(const KernelIR& k, const Stmt& stmt);

/// Exact symbolic point count. Guards fold into bounds at the deepest
/// variable they reference (integer-exact for any coefficient via floordiv
/// atoms); min/max resolution and emptiness are decided under the kernel's
/// assumptions. Throws Error(Errc::needs_fallback) when a guard cannot be
/// folded or emptiness cannot be decided.
CountExpr count_points(const StmtDomain& d, const AssumeCtx& actx);

/// Convenience: inclusive-bound variable chain of the domain for the
/// decision procedure (no guard folding applied).
std::vector<VarRange> domain_chain(const StmtDomain& d, const AssumeCtx& actx);

}  // namespace kernelcost
