#include "kernelcost/printer.hpp"

#include <sstream>

namespace kernelcost {

namespace {

// Precedence levels: additive 1, multiplicative 2, power 3, unary 4.
void emit_expr(std::ostream& os, const Expr& e, int parent_prec) {
  auto paren = [&](int prec, auto&& body) {
    const bool wrap = prec < parent_prec;
    if (wrap) os << "(";
    body();
    if (wrap) os << ")";
  };
  switch (e.kind) {
    case Expr::Kind::literal:
      os << e.literal_text;
      break;
    case Expr::Kind::scalar:
      os << e.name;
      break;
    case Expr::Kind::access: {
      os << e.array << "[";
      for (size_t i = 0; i < e.indices.size(); ++i) {
        if (i) os << ", ";
        os << e.indices[i].str();
      }
      os << "]";
      break;
    }
    case Expr::Kind::neg:
      paren(4, [&] {
        os << "-";
        emit_expr(os, *e.args[0], 4);
      });
      break;
    case Expr::Kind::binop: {
      const int prec = (e.op == '+' || e.op == '-') ? 1
                       : (e.op == '*' || e.op == '/') ? 2
                                                      : 3;
      paren(prec, [&] {
        if (e.op == '^') {
          // right-associative
          emit_expr(os, *e.args[0], prec + 1);
          os << " ^ ";
          emit_expr(os, *e.args[1], prec);
        } else {
          emit_expr(os, *e.args[0], prec);
          os << " " << e.op << " ";
          emit_expr(os, *e.args[1], prec + 1);
        }
      });
      break;
    }
    case Expr::Kind::call: {
      os << e.callee << "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        emit_expr(os, *e.args[i], 0);
      }
      os << ")";
      break;
    }
  }
}

void emit_stmts(std::ostream& os, const std::vector<Stmt>& body, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  for (const auto& s : body) {
    switch (s.kind) {
      case Stmt::Kind::loop:
        os << pad << "loop " << s.loop_var << " = " << s.lower.str() << " .. "
           << s.upper.str() << "\n";
        emit_stmts(os, s.body, depth + 1);
        os << pad << "end\n";
        break;
      case Stmt::Kind::guard: {
        os << pad << "guard ";
        for (size_t i = 0; i < s.conds.size(); ++i) {
          if (i) os << " and ";
          os << s.conds[i].str();
        }
        os << "\n";
        emit_stmts(os, s.body, depth + 1);
        os << pad << "end\n";
        break;
      }
      case Stmt::Kind::barrier:
        os << pad << "barrier\n";
        break;
      case Stmt::Kind::assign: {
        os << pad << s.lhs_array << "[";
        for (size_t i = 0; i < s.lhs_indices.size(); ++i) {
          if (i) os << ", ";
          os << s.lhs_indices[i].str();
        }
        os << "] = ";
        emit_expr(os, *s.rhs, 0);
        os << "\n";
        break;
      }
    }
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  emit_expr(os, e, 0);
  return os.str();
}

std::string print_kernel(const KernelIR& k) {
  std::ostringstream os;
  os << "kernel " << k.name << "\n";
  if (!k.params.empty()) {
    os << "param ";
    for (size_t i = 0; i < k.params.size(); ++i) {
      if (i) os << ", ";
      os << k.params[i].name;
    }
    os << "\n";
  }
  for (const auto& a : k.assumptions) os << "assume " << a.str() << "\n";
  for (const auto& a : k.arrays) {
    os << "array " << a.name << " : " << dtype_name(a.dtype) << "[";
    for (size_t i = 0; i < a.shape.size(); ++i) {
      if (i) os << ", ";
      os << a.shape[i].str();
    }
    os << "] " << space_name(a.space) << " " << layout_name(a.layout) << " "
       << intent_name(a.intent) << "\n";
  }
  for (const auto& ax : k.axes) {
    os << "axis " << ax.name << " = " << (ax.is_group ? "group" : "local")
       << "(" << ax.index << ") extent " << ax.extent.str() << "\n";
  }
  emit_stmts(os, k.body, 0);
  return os.str();
}

}  // namespace kernelcost
