#include "kernelcost/ir.hpp"

#include <algorithm>
#include <functional>

namespace kernelcost {

const char* dtype_name(DType t) {
  switch (t) {
    case DType::f32: return "f32";
    case DType::f64: return "f64";
    case DType::i32: return "i32";
  }
  return "?";
}

const char* space_name(Space s) {
  return s == Space::global ? "global" : "local";
}

const char* layout_name(Layout l) {
  return l == Layout::row_major ? "row_major" : "column_major";
}

const char* intent_name(Intent i) {
  switch (i) {
    case Intent::in: return "in";
    case Intent::out: return "out";
    case Intent::inout: return "inout";
    case Intent::temp: return "temp";
  }
  return "?";
}

int dtype_bits(DType t) {
  switch (t) {
    case DType::f32: return 32;
    case DType::f64: return 64;
    case DType::i32: return 32;
  }
  return 32;
}

ExprPtr Expr::literal(Rat v, bool is_int, std::string text) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::literal;
  e->literal_value = std::move(v);
  e->literal_is_int = is_int;
  e->literal_text = std::move(text);
  return e;
}

ExprPtr Expr::scalar(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::scalar;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::access(std::string array, std::vector<LinExpr> idx) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::access;
  e->array = std::move(array);
  e->indices = std::move(idx);
  return e;
}

ExprPtr Expr::neg(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::neg;
  e->args.push_back(std::move(a));
  return e;
}

ExprPtr Expr::binop(char op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::binop;
  e->op = op;
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  return e;
}

ExprPtr Expr::call(std::string callee, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::call;
  e->callee = std::move(callee);
  e->args = std::move(args);
  return e;
}

const ArrayDecl* KernelIR::find_array(const std::string& n) const {
  for (const auto& a : arrays)
    if (a.name == n) return &a;
  return nullptr;
}

const AxisDecl* KernelIR::find_axis(const std::string& n) const {
  for (const auto& a : axes)
    if (a.name == n) return &a;
  return nullptr;
}

bool KernelIR::is_param(const std::string& n) const {
  for (const auto& p : params)
    if (p.name == n) return true;
  return false;
}

std::vector<const AxisDecl*> KernelIR::group_axes() const {
  std::vector<const AxisDecl*> out;
  for (const auto& a : axes)
    if (a.is_group) out.push_back(&a);
  std::sort(out.begin(), out.end(),
            [](const AxisDecl* x, const AxisDecl* y) {
              return x->index < y->index;
            });
  return out;
}

std::vector<const AxisDecl*> KernelIR::local_axes() const {
  std::vector<const AxisDecl*> out;
  for (const auto& a : axes)
    if (!a.is_group) out.push_back(&a);
  std::sort(out.begin(), out.end(),
            [](const AxisDecl* x, const AxisDecl* y) {
              return x->index < y->index;
            });
  return out;
}

const AxisDecl* KernelIR::lane_axis() const {
  for (const auto& a : axes)
    if (!a.is_group && a.index == 0) return &a;
  return nullptr;
}

AssumeCtx build_assume_ctx(const KernelIR& k) {
  AssumeCtx ctx;
  for (const auto& p : k.params) ctx.declare_param(p.name);
  for (const auto& c : k.assumptions) ctx.add_constraint(c);
  return ctx;
}

namespace {

void walk_rec(const std::vector<Stmt>& body, std::vector<const Stmt*>& chain,
              const std::function<void(const Stmt&,
                                       const std::vector<const Stmt*>&)>& fn) {
  for (const auto& s : body) {
    fn(s, chain);
    if (s.kind == Stmt::Kind::loop || s.kind == Stmt::Kind::guard) {
      chain.push_back(&s);
      walk_rec(s.body, chain, fn);
      chain.pop_back();
    }
  }
}

void collect_loads(const KernelIR& k, const Stmt& s,
                   const std::vector<const Stmt*>& chain, const Expr& e,
                   std::vector<AccessRef>& out) {
  switch (e.kind) {
    case Expr::Kind::access: {
      AccessRef r;
      r.stmt = &s;
      r.enclosing.assign(chain.begin(), chain.end());
      r.array = k.find_array(e.array);
      r.indices = &e.indices;
      r.is_store = false;
      out.push_back(std::move(r));
      break;
    }
    case Expr::Kind::neg:
    case Expr::Kind::binop:
    case Expr::Kind::call:
      for (const auto& a : e.args) collect_loads(k, s, chain, *a, out);
      break;
    case Expr::Kind::literal:
    case Expr::Kind::scalar:
      break;
  }
}

}  // namespace

void walk_stmts(
    const KernelIR& k,
    const std::function<void(const Stmt&, const std::vector<const Stmt*>&)>&
        fn) {
  std::vector<const Stmt*> chain;
  walk_rec(k.body, chain, fn);
}

std::vector<AccessRef> collect_accesses(const KernelIR& k) {
  std::vector<AccessRef> out;
  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (s.kind != Stmt::Kind::assign) return;
    AccessRef store;
    store.stmt = &s;
    store.enclosing.assign(chain.begin(), chain.end());
    store.array = k.find_array(s.lhs_array);
    store.indices = &s.lhs_indices;
    store.is_store = true;
    out.push_back(std::move(store));
    collect_loads(k, s, chain, *s.rhs, out);
  });
  return out;
}

}  // namespace kernelcost
