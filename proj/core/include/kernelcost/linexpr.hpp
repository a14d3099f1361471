#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kernelcost/numeric.hpp"

namespace kernelcost {

struct LinExpr;
using LinExprPtr = std::shared_ptr<const LinExpr>;

/// Linear expression over named variables with rational coefficients, plus
/// optional floor-division terms floor(inner/den) treated as opaque atoms.
/// Floordiv terms are legal in axis extents and loop bounds only; array
/// indices must be pure integer-affine (checked by the parser).
struct LinExpr {
  struct FdTerm {
    LinExprPtr num;
    Int den;  // > 0
    Rat coeff;
  };

  std::map<std::string, Rat> coeffs;
  std::map<std::string, FdTerm> fd;  // keyed by canonical text for dedup
  Rat constant;

  LinExpr() = default;
  explicit LinExpr(Rat c) : constant(std::move(c)) {}

  static LinExpr var(const std::string& name, Rat coeff = Rat(1));
  static LinExpr floordiv(const LinExpr& num, const Int& den);

  bool is_constant() const { return coeffs.empty() && fd.empty(); }
  bool has_floordiv() const { return !fd.empty(); }

  /// True when every coefficient and the constant are integers and no
  /// floordiv term is present (the form required of array indices).
  bool is_integer_affine() const;

  Rat coeff_of(const std::string& name) const;

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr operator-() const;
  LinExpr scaled(const Rat& f) const;

  /// Exact evaluation; floordiv terms floor their argument.
  Rat evaluate(const std::map<std::string, Int>& env) const;

  void collect_vars(std::vector<std::string>& out) const;
  bool references(const std::string& name) const;

  /// Canonical text, used for printing and structural comparison.
  std::string str() const;

  bool operator==(const LinExpr& o) const { return str() == o.str(); }
};

/// Comparison operators appearing in assume/guard clauses.
enum class CmpOp { lt, le, gt, ge, eq };

/// One affine constraint `lhs op rhs`, or a divisibility constraint
/// `lhs % mod == rem` when mod > 0.
struct LinCmp {
  LinExpr lhs;
  CmpOp op = CmpOp::lt;
  LinExpr rhs;
  Int mod;  // 0 for relational constraints
  Int rem;

  bool is_divisibility() const { return mod > 0; }
  bool evaluate(const std::map<std::string, Int>& env) const;
  std::string str() const;
};

}  // namespace kernelcost
