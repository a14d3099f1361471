#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kernelcost/countexpr.hpp"
#include "kernelcost/linexpr.hpp"

namespace kernelcost {

/// Facts about one parameter distilled from `assume` lines. Parameters are
/// nonnegative integers by default; assumptions can only tighten.
struct ParamFacts {
  Int lo = 0;
  std::optional<Int> hi;
  std::vector<std::pair<Int, Int>> congr;  // (mod, rem): p % mod == rem
};

class AssumeCtx {
 public:
  void declare_param(const std::string& p);
  bool is_param(const std::string& p) const;

  void set_lower(const std::string& p, const Int& lo);
  void set_upper(const std::string& p, const Int& hi);
  void add_congruence(const std::string& p, const Int& mod, const Int& rem);

  /// Retains a raw constraint for admissibility checking; constraints that
  /// fit the single-parameter shapes should also be distilled via the
  /// setters above.
  void add_raw(LinCmp c);

  /// Distills a constraint into parameter facts where its shape allows and
  /// records it raw either way.
  void add_constraint(const LinCmp& c);

  const ParamFacts* facts(const std::string& p) const;
  Int lower(const std::string& p) const;  // 0 when no fact recorded

  /// Residue of variable v modulo d, when congruence facts pin it.
  std::optional<Int> var_residue(const std::string& v, const Int& d) const;

  /// True when integer-coefficient polynomial e is divisible by d at every
  /// admissible binding. Sound, not complete.
  bool divides(const CountExpr& e, const Int& d) const;

  /// True when the binding satisfies every recorded constraint.
  bool admits(const Binding& b) const;

 private:
  std::set<std::string> params_;
  std::map<std::string, ParamFacts> facts_;
  std::vector<LinCmp> raw_;
};

/// One domain variable with inclusive polynomial bounds. Bounds reference
/// only parameters and variables earlier in the chain.
struct VarRange {
  std::string name;
  CountExpr lo;
  CountExpr hi;
};

/// Sound, incomplete prover for "P >= 0 at every admissible parameter
/// binding and every variable assignment within the chain ranges".
/// Strategy: eliminate chain variables innermost-out (exact endpoint split
/// for linear occurrences, monotonicity for higher degree), relax floordiv
/// atoms to their defining interval, resolve min/max atoms by case
/// decomposition, then shift parameters to their lower bounds and test for
/// nonnegative coefficients. A false result means "could not prove".
class DecideCtx {
 public:
  explicit DecideCtx(const AssumeCtx& actx,
                     std::vector<VarRange> chain = {});

  bool proves_nonneg(const CountExpr& p) const;
  bool proves_nonpos(const CountExpr& p) const { return proves_nonneg(-p); }

  const AssumeCtx& assumptions() const { return *actx_; }
  const std::vector<VarRange>& chain() const { return chain_; }

 private:
  bool nonneg_rec(const CountExpr& p, size_t vars_left, int depth) const;

  const AssumeCtx* actx_;
  std::vector<VarRange> chain_;  // outermost first
};

/// Floor division simplified under assumptions: divisible monomials are
/// divided exactly and split out of the atom; a constant remainder folds
/// away entirely.
CountExpr make_floordiv(const CountExpr& num, const Int& den,
                        const AssumeCtx& actx);

/// min/max resolved when the decision procedure orders the operands,
/// otherwise kept as symbolic atoms.
CountExpr make_min(const CountExpr& a, const CountExpr& b,
                   const DecideCtx& ctx);
CountExpr make_max(const CountExpr& a, const CountExpr& b,
                   const DecideCtx& ctx);

/// Affine-to-polynomial conversion; floordiv terms pass through
/// make_floordiv for assumption-aware simplification.
CountExpr to_count(const LinExpr& e, const AssumeCtx& actx);

}  // namespace kernelcost
