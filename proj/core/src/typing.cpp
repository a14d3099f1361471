#include "kernelcost/typing.hpp"

#include "kernelcost/error.hpp"
#include "kernelcost/printer.hpp"

namespace kernelcost {

namespace {

bool is_float(DType t) { return t == DType::f32 || t == DType::f64; }

DType promote(DType a, DType b) {
  if (a == DType::f64 || b == DType::f64) return DType::f64;
  if (a == DType::f32 || b == DType::f32) return DType::f32;
  return DType::i32;
}

struct Typer {
  const KernelIR& k;
  TypeMap types;

  DType record(const Expr* e, DType t) {
    types[e] = t;
    return t;
  }

  /// Provisional dtype before sibling adoption; literals report their
  /// lexical default.
  DType visit(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::literal:
        return record(&e, e.literal_is_int ? DType::i32 : DType::f32);
      case Expr::Kind::scalar:
        return record(&e, DType::i32);
      case Expr::Kind::access: {
        const ArrayDecl* a = k.find_array(e.array);
        return record(&e, a ? a->dtype : DType::f32);
      }
      case Expr::Kind::neg:
        return record(&e, visit(*e.args[0]));
      case Expr::Kind::binop: {
        const DType tl = visit(*e.args[0]);
        const DType tr = visit(*e.args[1]);
        adopt(*e.args[0], tr);
        adopt(*e.args[1], tl);
        return record(&e, promote(types[e.args[0].get()],
                                  types[e.args[1].get()]));
      }
      case Expr::Kind::call: {
        DType t = DType::f32;  // calls are float-valued
        for (const auto& a : e.args) t = promote(t, visit(*a));
        for (const auto& a : e.args) adopt(*a, t);
        return record(&e, t);
      }
    }
    return DType::f32;
  }

  /// Literal operands widen to the widest float dtype among their siblings.
  void adopt(const Expr& e, DType sibling) {
    if (!is_float(sibling)) return;
    auto it = types.find(&e);
    if (it == types.end()) return;
    if (e.kind == Expr::Kind::literal) {
      it->second = promote(it->second, sibling);
    } else if (e.kind == Expr::Kind::neg) {
      adopt(*e.args[0], sibling);
      it->second = types[e.args[0].get()];
    }
  }
};

}  // namespace

TypeMap infer_types(const KernelIR& k) {
  Typer ty{k, {}};
  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>&) {
    if (s.kind != Stmt::Kind::assign) return;
    const ArrayDecl* lhs = k.find_array(s.lhs_array);
    if (!lhs) return;
    const DType rt = ty.visit(*s.rhs);
    const DType lt = lhs->dtype;
    const bool narrowing =
        (rt == DType::f64 && lt == DType::f32) ||
        (is_float(rt) && lt == DType::i32);
    if (narrowing)
      throw Error(Errc::type_conflict,
                  "line " + std::to_string(s.line) + ": cannot assign " +
                      dtype_name(rt) + " into " + dtype_name(lt) + " array '" +
                      s.lhs_array + "'");
  });
  return std::move(ty.types);
}

}  // namespace kernelcost
