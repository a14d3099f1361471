#include "kernelcost/counting.hpp"

#include <algorithm>
#include <stdexcept>

#include "kernelcost/error.hpp"

namespace kernelcost {

namespace {

void append_axis_vars(const KernelIR& k, StmtDomain& d) {
  for (const AxisDecl* ax : k.group_axes()) {
    DomainVar v;
    v.name = ax->name;
    v.lower = LinExpr(Rat(0));
    v.upper_excl = ax->extent;
    v.is_axis = true;
    v.is_group_axis = true;
    d.vars.push_back(std::move(v));
  }
  for (const AxisDecl* ax : k.local_axes()) {
    DomainVar v;
    v.name = ax->name;
    v.lower = LinExpr(Rat(0));
    v.upper_excl = ax->extent;
    v.is_axis = true;
    v.is_group_axis = false;
    d.vars.push_back(std::move(v));
  }
}

}  // namespace

StmtDomain stmt_domain(const KernelIR& k, const Stmt& stmt,
                       const std::vector<const Stmt*>& enclosing) {
  (void)stmt;
  StmtDomain d;
  append_axis_vars(k, d);
  for (const Stmt* s : enclosing) {
    if (s->kind == Stmt::Kind::loop) {
      DomainVar v;
      v.name = s->loop_var;
      v.lower = s->lower;
      v.upper_excl = s->upper;
      d.vars.push_back(std::move(v));
    } else if (s->kind == Stmt::Kind::guard) {
      for (const auto& c : s->conds) d.guards.push_back(c);
    }
  }
  return d;
}

StmtDomain stmt_domain(const KernelIR& k, const Stmt& stmt) {
  bool found = false;
  StmtDomain result;
  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (&s == &stmt && !found) {
      found = true;
      result = stmt_domain(k, s, chain);
    }
  });
  if (!found)
    throw std::logic_error("stmt_domain: statement not found in kernel");
  return result;
}

std::vector<VarRange> domain_chain(const StmtDomain& d,
                                   const AssumeCtx& actx) {
  std::vector<VarRange> chain;
  chain.reserve(d.vars.size());
  for (const auto& v : d.vars) {
    VarRange r;
    r.name = v.name;
    r.lo = to_count(v.lower, actx);
    r.hi = to_count(v.upper_excl, actx) - CountExpr::from_int(1);
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {

/// Normalized guard constraint: poly >= 0 with integer coefficients over
/// domain variables and parameters.
struct NormGuard {
  CountExpr poly;
  int line_hint = 0;
};

/// Multiplies through by the positive lcm of coefficient denominators so
/// folding arithmetic stays integral.
CountExpr integerize(const CountExpr& e) {
  Int lcm = 1;
  for (const auto& [m, c] : e.terms()) {
    (void)m;
    const Int den = rat_den(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  return lcm == 1 ? e : e.scaled(Rat(lcm));
}

/// Deepest domain variable referenced by the polynomial; -1 when none.
int deepest_var(const CountExpr& p, const std::vector<VarRange>& chain) {
  for (int i = static_cast<int>(chain.size()) - 1; i >= 0; --i)
    if (p.references(chain[static_cast<size_t>(i)].name)) return i;
  return -1;
}

[[noreturn]] void fallback(const std::string& why) {
  throw Error(Errc::needs_fallback, why);
}

}  // namespace

CountExpr count_points(const StmtDomain& d, const AssumeCtx& actx) {
  std::vector<VarRange> chain = domain_chain(d, actx);

  // Normalize guards to "poly >= 0" form. Equalities produce two
  // constraints; divisibility guards over parameters are discharged by the
  // assumption context, anything else falls back.
  std::vector<NormGuard> guards;
  for (const auto& g : d.guards) {
    if (g.is_divisibility()) {
      CountExpr lhs = to_count(g.lhs, actx);
      const int dv = deepest_var(lhs, chain);
      if (dv >= 0)
        fallback("divisibility guard over domain variables: " + g.str());
      CountExpr shifted = lhs - CountExpr::from_int(g.rem);
      if (actx.divides(shifted, g.mod)) continue;  // always true: drop
      fallback("cannot discharge divisibility guard: " + g.str());
    }
    const CountExpr l = to_count(g.lhs, actx);
    const CountExpr r = to_count(g.rhs, actx);
    const CountExpr one = CountExpr::from_int(1);
    switch (g.op) {
      case CmpOp::lt:
        guards.push_back({integerize(r - l - one)});
        break;
      case CmpOp::le:
        guards.push_back({integerize(r - l)});
        break;
      case CmpOp::gt:
        guards.push_back({integerize(l - r - one)});
        break;
      case CmpOp::ge:
        guards.push_back({integerize(l - r)});
        break;
      case CmpOp::eq:
        guards.push_back({integerize(r - l)});
        guards.push_back({integerize(l - r)});
        break;
    }
  }

  // Parameter-only guards: provable -> drop; refutable -> empty domain;
  // undecidable -> fallback.
  {
    DecideCtx dc(actx);
    std::vector<NormGuard> kept;
    for (auto& g : guards) {
      if (deepest_var(g.poly, chain) >= 0) {
        kept.push_back(std::move(g));
        continue;
      }
      if (dc.proves_nonneg(g.poly)) continue;
      if (dc.proves_nonneg(-g.poly - CountExpr::from_int(1)))
        return CountExpr();  // guard always false: zero points
      fallback("cannot decide parameter guard");
    }
    guards = std::move(kept);
  }

  // Innermost-out summation with guard folding at each variable.
  CountExpr acc = CountExpr::from_int(1);
  for (size_t i = chain.size(); i-- > 0;) {
    VarRange& vr = chain[i];
    CountExpr lo = vr.lo;
    CountExpr hi = vr.hi;

    // Fold every guard whose deepest variable is this one.
    std::vector<NormGuard> remaining;
    for (auto& g : guards) {
      const int dv = deepest_var(g.poly, chain);
      if (dv != static_cast<int>(i)) {
        remaining.push_back(std::move(g));
        continue;
      }
      if (!g.poly.plain_in(vr.name))
        fallback("guard references " + vr.name + " inside a composite atom");
      const auto cs = g.poly.coeffs_in(vr.name);
      if (cs.size() != 2)
        fallback("guard is nonlinear in " + vr.name);
      if (!cs[1].is_constant() || !rat_is_integer(cs[1].constant_value()))
        fallback("guard coefficient of " + vr.name + " is not constant");
      const Int a = rat_num(cs[1].constant_value());
      const CountExpr& rest = cs[0];
      // a*v + rest >= 0
      DecideCtx outer(actx, std::vector<VarRange>(chain.begin(),
                                                  chain.begin() +
                                                      static_cast<long>(i)));
      if (a > 0) {
        // v >= ceil(-rest / a) == floor((-rest + a - 1) / a)
        CountExpr bound =
            make_floordiv(-rest + CountExpr::from_int(a - 1), a, actx);
        lo = make_max(lo, bound, outer);
      } else {
        // v <= floor(rest / -a)
        CountExpr bound = make_floordiv(rest, -a, actx);
        hi = make_min(hi, bound, outer);
      }
    }
    guards = std::move(remaining);

    // Emptiness must resolve symbolically.
    {
      DecideCtx outer(actx, std::vector<VarRange>(chain.begin(),
                                                  chain.begin() +
                                                      static_cast<long>(i)));
      const CountExpr len = hi - lo + CountExpr::from_int(1);
      if (outer.proves_nonneg(-len)) return CountExpr();  // always empty
      if (!outer.proves_nonneg(len))
        fallback("cannot decide emptiness of range of " + vr.name);
    }

    try {
      acc = faulhaber_sum(acc, vr.name, lo, hi);
    } catch (const std::logic_error& e) {
      fallback(std::string("summation over ") + vr.name + ": " + e.what());
    }
  }

  if (!guards.empty()) fallback("unfolded guards remain");
  return acc;
}

}  // namespace kernelcost
