#include "kernelcost/enumerate.hpp"

#include <boost/multiprecision/integer.hpp>
#include <functional>
#include <map>

#include "kernelcost/classify.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/footprint.hpp"
#include "kernelcost/schema.hpp"

namespace kernelcost {

namespace {

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

Int ceil_div(const Int& a, const Int& d) {  // d > 0
  return floor_div(a + d - 1, d);
}

void charge_point(const Int& cap, Int& visited) {
  if (++visited > cap)
    throw Error(Errc::cap_exceeded,
                "enumeration exceeded cap of " + cap.str() + " points");
}

/// Depth-first traversal of a statement domain at a binding. Guards are
/// checked as soon as their deepest variable is assigned; `visit` runs at
/// every surviving full assignment.
struct Walker {
  const StmtDomain& d;
  const Int& cap;
  Int& visited;
  std::map<std::string, Int> env;  // binding plus assigned variables
  std::vector<std::vector<const LinCmp*>> guards_at;
  bool empty = false;  // parameter-only guard refuted

  Walker(const StmtDomain& dom, const Binding& b, const Int& cap_,
         Int& visited_)
      : d(dom), cap(cap_), visited(visited_), env(b) {
    guards_at.resize(d.vars.size());
    for (const auto& g : d.guards) {
      int depth = -1;
      std::vector<std::string> vars;
      g.lhs.collect_vars(vars);
      g.rhs.collect_vars(vars);
      for (const auto& v : vars)
        for (size_t i = 0; i < d.vars.size(); ++i)
          if (d.vars[i].name == v) depth = std::max(depth, (int)i);
      if (depth < 0) {
        if (!g.evaluate(env)) empty = true;
      } else {
        guards_at[static_cast<size_t>(depth)].push_back(&g);
      }
    }
  }

  void run(const std::function<void()>& visit) {
    if (empty) return;
    descend(0, visit);
  }

 private:
  void descend(size_t depth, const std::function<void()>& visit) {
    if (depth == d.vars.size()) {
      charge_point(cap, visited);
      visit();
      return;
    }
    const DomainVar& v = d.vars[depth];
    const Int lo = rat_ceil(v.lower.evaluate(env));
    const Int hi = rat_ceil(v.upper_excl.evaluate(env));  // exclusive
    for (Int x = lo; x < hi; ++x) {
      env[v.name] = x;
      bool pass = true;
      for (const LinCmp* g : guards_at[depth])
        if (!g->evaluate(env)) {
          pass = false;
          break;
        }
      if (!pass) {
        charge_point(cap, visited);  // dead end counts as a visited point
        continue;
      }
      descend(depth + 1, visit);
    }
    env.erase(v.name);
  }
};

// Compiled fast path. Bounds, guards and access indices become integer
// rows over slot-indexed domain variables: bound parameters and
// parameter-only floordivs fold into the constant, rational coefficients
// are scaled out by a common positive denominator. Evaluation is then
// plain integer dot products, which is what a million-point walk can
// afford. Anything that does not fit this shape falls back to Walker.

struct Row {
  Int den = 1;  // positive; the row value is raw/den
  Int c0 = 0;
  std::vector<std::pair<size_t, Int>> terms;  // (slot, coefficient)

  Int raw(const std::vector<Int>& env) const {
    Int v = c0;
    for (const auto& [s, c] : terms) v += c * env[s];
    return v;
  }
};

struct RowCompiler {
  const Binding& b;
  const std::map<std::string, size_t>& slots;
  bool ok = true;

  Row compile(const LinExpr& le) {
    Row r;
    if (!ok) return r;
    Rat cst = le.constant;
    std::vector<std::pair<size_t, Rat>> tms;
    for (const auto& [v, c] : le.coeffs) {
      if (auto st = slots.find(v); st != slots.end()) {
        tms.emplace_back(st->second, c);
        continue;
      }
      auto bi = b.find(v);
      if (bi == b.end()) {
        ok = false;
        return r;
      }
      cst += c * Rat(bi->second);
    }
    for (const auto& [key, t] : le.fd) {
      (void)key;
      std::vector<std::string> vs;
      t.num->collect_vars(vs);
      for (const auto& v : vs)
        if (!b.count(v)) {
          ok = false;  // floordiv over a domain variable
          return r;
        }
      cst += t.coeff * Rat(rat_floor(t.num->evaluate(b) / Rat(t.den)));
    }
    Int L = rat_den(cst);
    for (const auto& [s, c] : tms) {
      (void)s;
      L = boost::multiprecision::lcm(L, rat_den(c));
    }
    r.den = L;
    r.c0 = rat_num(cst) * (L / rat_den(cst));
    r.terms.reserve(tms.size());
    for (const auto& [s, c] : tms)
      r.terms.emplace_back(s, rat_num(c) * (L / rat_den(c)));
    return r;
  }

  // Row that must be integer-valued at every point (array indices,
  // divisibility operands).
  Row compile_integral(const LinExpr& le) {
    Row r = compile(le);
    if (ok && r.den != 1) ok = false;
    return r;
  }
};

struct FastGuard {
  Row lhs;  // divisibility operand, or lhs-rhs difference
  bool divis = false;
  Int mod, rem;
  CmpOp op = CmpOp::lt;

  bool eval(const std::vector<Int>& env) const {
    const Int v = lhs.raw(env);
    if (divis) return ((v % mod) + mod) % mod == rem;
    switch (op) {  // sign test: den > 0 keeps orientation
      case CmpOp::lt: return v < 0;
      case CmpOp::le: return v <= 0;
      case CmpOp::gt: return v > 0;
      case CmpOp::ge: return v >= 0;
      case CmpOp::eq: return v == 0;
    }
    return false;
  }
};

struct FastDomain {
  bool ok = true;
  bool empty = false;
  size_t nvars = 0;
  std::vector<Row> lo, hi;
  std::vector<std::vector<FastGuard>> guards_at;
  std::vector<std::vector<Row>> access_rows;  // per access, per index

  FastDomain(const StmtDomain& d, const Binding& b,
             const std::vector<const std::vector<LinExpr>*>& accs) {
    nvars = d.vars.size();
    std::map<std::string, size_t> slots;
    for (size_t i = 0; i < nvars; ++i) slots[d.vars[i].name] = i;
    RowCompiler cc{b, slots};

    lo.reserve(nvars);
    hi.reserve(nvars);
    for (const auto& v : d.vars) {
      lo.push_back(cc.compile(v.lower));
      hi.push_back(cc.compile(v.upper_excl));
    }

    guards_at.resize(nvars);
    const std::vector<Int> no_env;
    for (const auto& g : d.guards) {
      if (!cc.ok) return;
      int depth = -1;
      std::vector<std::string> vars;
      g.lhs.collect_vars(vars);
      g.rhs.collect_vars(vars);
      for (const auto& v : vars)
        if (auto it = slots.find(v); it != slots.end())
          depth = std::max(depth, (int)it->second);
      FastGuard fg;
      if (g.is_divisibility()) {
        fg.divis = true;
        fg.lhs = cc.compile_integral(g.lhs);
        fg.mod = g.mod;
        fg.rem = g.rem;
      } else {
        fg.lhs = cc.compile(g.lhs - g.rhs);
        fg.op = g.op;
      }
      if (!cc.ok) return;
      if (depth < 0) {
        if (!fg.eval(no_env)) empty = true;
      } else {
        guards_at[static_cast<size_t>(depth)].push_back(std::move(fg));
      }
    }

    access_rows.reserve(accs.size());
    for (const auto* idxs : accs) {
      std::vector<Row> rows;
      rows.reserve(idxs->size());
      for (const auto& e : *idxs) rows.push_back(cc.compile_integral(e));
      access_rows.push_back(std::move(rows));
    }
    ok = cc.ok;
  }

  void run(const Int& cap, Int& visited,
           const std::function<void(const std::vector<std::vector<Int>>&)>&
               visit) {
    if (empty) return;
    env_.assign(nvars, Int(0));
    vals_.assign(access_rows.size(), {});
    descend(0, cap, visited, visit);
  }

 private:
  std::vector<Int> env_;
  std::vector<std::vector<Int>> vals_;

  void descend(size_t depth, const Int& cap, Int& visited,
               const std::function<void(const std::vector<std::vector<Int>>&)>&
                   visit) {
    if (depth == nvars) {
      charge_point(cap, visited);
      for (size_t a = 0; a < access_rows.size(); ++a) {
        auto& dst = vals_[a];
        dst.clear();
        for (const Row& r : access_rows[a]) dst.push_back(r.raw(env_));
      }
      visit(vals_);
      return;
    }
    const Row& lr = lo[depth];
    const Row& hr = hi[depth];
    const Int l = ceil_div(lr.raw(env_), lr.den);
    const Int h = ceil_div(hr.raw(env_), hr.den);  // exclusive
    const auto& guards = guards_at[depth];
    for (Int x = l; x < h; ++x) {
      env_[depth] = x;
      bool pass = true;
      for (const FastGuard& g : guards)
        if (!g.eval(env_)) {
          pass = false;
          break;
        }
      if (!pass) {
        charge_point(cap, visited);  // dead end counts as a visited point
        continue;
      }
      descend(depth + 1, cap, visited, visit);
    }
  }
};

Int to_integer(const Rat& r, const char* what) {
  if (!rat_is_integer(r))
    throw Error(Errc::invalid_argument,
                std::string(what) + " does not evaluate to an integer");
  return rat_num(r);
}

/// Enumerates the domain at b; at every surviving point visit receives the
/// evaluated index vectors of accs, in order. Compiled walk when possible,
/// generic otherwise.
void walk_points(
    const StmtDomain& dom, const Binding& b,
    const std::vector<const std::vector<LinExpr>*>& accs, const Int& cap,
    Int& visited,
    const std::function<void(const std::vector<std::vector<Int>>&)>& visit) {
  FastDomain fast(dom, b, accs);
  if (fast.ok) {
    fast.run(cap, visited, visit);
    return;
  }
  Walker w(dom, b, cap, visited);
  std::vector<std::vector<Int>> vals(accs.size());
  w.run([&] {
    for (size_t a = 0; a < accs.size(); ++a) {
      auto& dst = vals[a];
      dst.clear();
      for (const auto& idx : *accs[a])
        dst.push_back(to_integer(idx.evaluate(w.env), "array index"));
    }
    visit(vals);
  });
}

}  // namespace

Int domain_point_count(const StmtDomain& d, const Binding& b, const Int& cap,
                       Int& visited) {
  Int n = 0;
  walk_points(d, b, {}, cap, visited,
              [&](const std::vector<std::vector<Int>>&) { ++n; });
  return n;
}

std::set<std::vector<Int>> array_cells(const KernelIR& k,
                                       const ArrayDecl& arr, const Binding& b,
                                       const Int& cap, Int& visited) {
  std::set<std::vector<Int>> cells;
  for (const auto& acc : collect_accesses(k)) {
    if (acc.array != &arr) continue;
    const StmtDomain dom = stmt_domain(k, *acc.stmt, acc.enclosing);
    walk_points(dom, b, {acc.indices}, cap, visited,
                [&](const std::vector<std::vector<Int>>& vals) {
                  cells.insert(vals[0]);
                });
  }
  return cells;
}

Int filled_cells(const ArrayDecl& arr,
                 const std::set<std::vector<Int>>& cells) {
  if (cells.empty()) return 0;
  const size_t fast = fastest_axis(arr);
  Int mn = cells.begin()->at(fast), mx = mn;
  std::set<std::vector<Int>> others;
  for (const auto& c : cells) {
    mn = std::min(mn, c[fast]);
    mx = std::max(mx, c[fast]);
    std::vector<Int> rest;
    rest.reserve(c.size() - 1);
    for (size_t i = 0; i < c.size(); ++i)
      if (i != fast) rest.push_back(c[i]);
    others.insert(std::move(rest));
  }
  return (mx - mn + 1) * Int(others.size());
}

EnumTally enumerate_points(const KernelIR& k, const Binding& b,
                           const Int& cap) {
  const AssumeCtx actx = build_assume_ctx(k);
  if (!actx.admits(b))
    throw Error(Errc::assumption_violated,
                "binding violates the kernel's assumptions");

  EnumTally out;
  const TypeMap tm = infer_types(k);

  // Pass 1: per-statement point counts and exact cell sets per array.
  // Cells only matter for global arrays; local traffic is counted from the
  // statement point counts alone.
  std::map<const Stmt*, Int> stmt_count;
  std::map<const ArrayDecl*, std::set<std::vector<Int>>> cells;
  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (s.kind != Stmt::Kind::assign && s.kind != Stmt::Kind::barrier) return;
    const StmtDomain dom = stmt_domain(k, s, chain);
    std::vector<const ArrayDecl*> arrays;
    std::vector<const std::vector<LinExpr>*> accs;
    if (s.kind == Stmt::Kind::assign)
      for (const auto& acc : collect_accesses(k))
        if (acc.stmt == &s && acc.array->space == Space::global) {
          arrays.push_back(acc.array);
          accs.push_back(acc.indices);
        }
    Int n = 0;
    walk_points(dom, b, accs, cap, out.points,
                [&](const std::vector<std::vector<Int>>& vals) {
                  ++n;
                  for (size_t a = 0; a < vals.size(); ++a)
                    cells[arrays[a]].insert(vals[a]);
                });
    stmt_count[&s] = n;
  });

  // Pass 2: tally with the shared classification arithmetic.
  std::map<std::pair<int, std::string>, std::pair<Int, Int>> ls;  // load,store
  for (const auto& acc : collect_accesses(k)) {
    const Int n = stmt_count.at(acc.stmt);
    if (n == 0) continue;
    if (acc.array->space == Space::local) {
      if (!acc.is_store)
        out.props.at("mem.local.load") =
            out.props.at("mem.local.load") + CountExpr::from_int(n);
      continue;
    }
    const auto& cs = cells.at(acc.array);
    const Int nf = Int(cs.size());
    const Int fill = filled_cells(*acc.array, cs);
    const Rat sr = lane_stride_signed(k, acc, actx).evaluate_rat(b);
    Int s = to_integer(sr, "lane stride");
    if (s < 0) s = -s;
    const std::string cls = classify_ratio(s, nf, fill);
    const int bits = dtype_bits(acc.array->dtype);
    const std::string key = global_key(acc.is_store, bits, cls);
    out.props.at(key) = out.props.at(key) + CountExpr::from_int(n);
    auto& pair = ls[{bits, cls}];
    (acc.is_store ? pair.second : pair.first) += n;
  }
  for (const auto& [kcls, pair] : ls) {
    const Int m = std::min(pair.first, pair.second);
    if (m > 0)
      out.props.at(minls_key(kcls.first, kcls.second)) = CountExpr::from_int(m);
  }

  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>&) {
    if (s.kind == Stmt::Kind::barrier) {
      out.props.at("sync.barrier") =
          out.props.at("sync.barrier") + CountExpr::from_int(stmt_count.at(&s));
    } else if (s.kind == Stmt::Kind::assign) {
      const Int n = stmt_count.at(&s);
      for (const auto& [key, per_point] : rhs_op_counts(*s.rhs, tm)) {
        out.props.at(key) =
            out.props.at(key) + CountExpr::from_int(per_point * n);
      }
    }
  });

  Int groups = 1;
  for (const AxisDecl* ax : k.group_axes())
    groups *= to_integer(ax->extent.evaluate(b), "group extent");
  out.props.at("launch.groups") = CountExpr::from_int(groups);
  out.props.at("launch.const") = CountExpr::from_int(1);
  return out;
}

}  // namespace kernelcost
