#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kernelcost/decide.hpp"
#include "kernelcost/linexpr.hpp"

namespace kernelcost {

enum class DType { f32, f64, i32 };
enum class Space { global, local };
enum class Layout { row_major, column_major };
enum class Intent { in, out, inout, temp };

const char* dtype_name(DType t);
const char* space_name(Space s);
const char* layout_name(Layout l);
const char* intent_name(Intent i);

/// Element size in bits; selects the access-size category of the schema.
int dtype_bits(DType t);

struct ParamDecl {
  std::string name;
};

struct ArrayDecl {
  std::string name;
  DType dtype = DType::f32;
  std::vector<LinExpr> shape;  // affine in params; constants for local
  Space space = Space::global;
  Layout layout = Layout::row_major;
  Intent intent = Intent::in;
};

struct AxisDecl {
  std::string name;
  bool is_group = true;  // group(k) vs local(k)
  int index = 0;         // 0..2, unique per role
  LinExpr extent;        // local extents are constants
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Right-hand-side expression node. Indices of accesses are affine and live
/// outside the Expr tree proper.
struct Expr {
  enum class Kind { literal, scalar, access, neg, binop, call };

  Kind kind = Kind::literal;

  // literal
  Rat literal_value;
  bool literal_is_int = true;  // lexed without '.' or exponent
  std::string literal_text;    // verbatim spelling for printing

  // scalar: a param, axis, or loop variable used as a value (i32)
  std::string name;

  // access
  std::string array;
  std::vector<LinExpr> indices;

  // neg/binop/call
  char op = 0;               // '+', '-', '*', '/', '^'
  std::string callee;        // rsqrt sqrt exp sin cos pow
  std::vector<ExprPtr> args;

  static ExprPtr literal(Rat v, bool is_int, std::string text);
  static ExprPtr scalar(std::string name);
  static ExprPtr access(std::string array, std::vector<LinExpr> idx);
  static ExprPtr neg(ExprPtr a);
  static ExprPtr binop(char op, ExprPtr a, ExprPtr b);
  static ExprPtr call(std::string callee, std::vector<ExprPtr> args);
};

struct Stmt {
  enum class Kind { loop, guard, assign, barrier };

  Kind kind = Kind::assign;
  int line = 0;  // 1-based source line for diagnostics

  // loop: for var in [lower, upper)
  std::string loop_var;
  LinExpr lower;
  LinExpr upper;

  // guard
  std::vector<LinCmp> conds;

  // assign
  std::string lhs_array;
  std::vector<LinExpr> lhs_indices;
  ExprPtr rhs;

  // loop/guard body
  std::vector<Stmt> body;
};

struct KernelIR {
  std::string name;
  std::vector<ParamDecl> params;
  std::vector<LinCmp> assumptions;
  std::vector<ArrayDecl> arrays;
  std::vector<AxisDecl> axes;
  std::vector<Stmt> body;

  const ArrayDecl* find_array(const std::string& n) const;
  const AxisDecl* find_axis(const std::string& n) const;
  bool is_param(const std::string& n) const;

  /// Axes with is_group set, ordered by axis index.
  std::vector<const AxisDecl*> group_axes() const;
  std::vector<const AxisDecl*> local_axes() const;

  /// The SIMD-lane axis (local index 0), or null when absent.
  const AxisDecl* lane_axis() const;
};

/// Parameter facts distilled from the kernel's assume clauses; params are
/// declared so the decision procedure knows the nonnegative-variable set.
AssumeCtx build_assume_ctx(const KernelIR& k);

/// Statement path: index into nested bodies, used to address a statement
/// stably (for diagnostics and walking).
using StmtPath = std::vector<size_t>;

/// Depth-first visit of all statements; fn receives each statement and the
/// chain of enclosing loop/guard statements (outermost first).
void walk_stmts(
    const KernelIR& k,
    const std::function<void(const Stmt&, const std::vector<const Stmt*>&)>&
        fn);

/// One array access inside some assignment (LHS store or RHS load).
struct AccessRef {
  const Stmt* stmt = nullptr;  // enclosing Assign
  std::vector<const Stmt*> enclosing;  // loop/guard chain, outermost first
  const ArrayDecl* array = nullptr;
  const std::vector<LinExpr>* indices = nullptr;
  bool is_store = false;
};

/// All array accesses in the kernel, in statement order, stores before the
/// loads of the same statement.
std::vector<AccessRef> collect_accesses(const KernelIR& k);

}  // namespace kernelcost
