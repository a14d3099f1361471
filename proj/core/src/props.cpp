#include "kernelcost/props.hpp"

#include <utility>

#include "kernelcost/classify.hpp"
#include "kernelcost/counting.hpp"
#include "kernelcost/enumerate.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/footprint.hpp"

namespace kernelcost {

PropertyVector::PropertyVector() : entries(schema_size()) {}

CountExpr& PropertyVector::at(const std::string& key) {
  return entries[schema_index(key)];
}

const CountExpr& PropertyVector::at(const std::string& key) const {
  return entries[schema_index(key)];
}

bool PropertyVector::is_bound() const {
  for (const auto& e : entries)
    if (!e.is_constant() || !rat_is_integer(e.constant_value())) return false;
  return true;
}

std::vector<Int> PropertyVector::integers() const {
  std::vector<Int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_constant() || !rat_is_integer(e.constant_value()))
      throw Error(Errc::needs_binding,
                  "property vector is symbolic; bind parameters first");
    out.push_back(rat_num(e.constant_value()));
  }
  return out;
}

namespace {

void count_ops(const Expr& e, const TypeMap& tm,
               std::map<std::string, Int>& out) {
  const DType ty = tm.at(&e);
  const bool counted = ty == DType::f32 || ty == DType::f64;
  const char* dt = ty == DType::f64 ? "f64" : "f32";
  switch (e.kind) {
    case Expr::Kind::literal:
    case Expr::Kind::scalar:
    case Expr::Kind::access:
      return;
    case Expr::Kind::neg:
      if (counted) out[std::string("flop.") + dt + ".addsub"] += 1;
      break;
    case Expr::Kind::binop:
      if (counted) {
        const char* kind = nullptr;
        switch (e.op) {
          case '+':
          case '-':
            kind = "addsub";
            break;
          case '*':
            kind = "mul";
            break;
          case '/':
            kind = "div";
            break;
          case '^':
            kind = "pow";
            break;
        }
        if (kind) out[std::string("flop.") + dt + "." + kind] += 1;
      }
      break;
    case Expr::Kind::call:
      // Calls are float-valued by construction.
      out[std::string("flop.") + dt + "." +
          (e.callee == "pow" ? "pow" : "special")] += 1;
      break;
  }
  for (const auto& a : e.args) count_ops(*a, tm, out);
}

void require_covered(const KernelIR& k, const Binding& b) {
  for (const auto& p : k.params)
    if (!b.count(p.name))
      throw Error(Errc::invalid_argument,
                  "binding missing parameter '" + p.name + "'");
}

/// Shared extraction pipeline; bind == nullptr runs fully symbolic and
/// converts any sub-result failure into an error naming the culprit.
struct Extraction {
  const KernelIR& k;
  const Binding* bind;
  Int cap;

  AssumeCtx actx;
  TypeMap tm;
  Int visited = 0;
  PropertyVector out;
  std::map<const Stmt*, CountExpr> counts;

  struct ArrStat {
    CountExpr cells, fill;
  };
  std::map<const ArrayDecl*, ArrStat> stats;

  Extraction(const KernelIR& kern, const Binding* b, Int cap_)
      : k(kern), bind(b), cap(std::move(cap_)), actx(build_assume_ctx(kern)),
        tm(infer_types(kern)) {}

  CountExpr stmt_count(const Stmt& s, const std::vector<const Stmt*>& chain) {
    auto it = counts.find(&s);
    if (it != counts.end()) return it->second;
    const StmtDomain dom = stmt_domain(k, s, chain);
    CountExpr c;
    try {
      c = count_points(dom, actx);
      if (bind) c = CountExpr::from_int(c.evaluate(*bind));
    } catch (const Error& err) {
      if (err.code() != Errc::needs_fallback &&
          err.code() != Errc::needs_binding)
        throw;
      if (!bind)
        throw Error(err.code(), "statement at line " + std::to_string(s.line) +
                                    ": " + err.what());
      c = CountExpr::from_int(domain_point_count(dom, *bind, cap, visited));
    }
    counts.emplace(&s, c);
    return c;
  }

  const ArrStat& array_stat(const ArrayDecl* a) {
    auto it = stats.find(a);
    if (it != stats.end()) return it->second;
    ArrStat st;
    try {
      const Footprint f = access_footprint(k, *a, actx);
      st.cells = f.cells;
      st.fill = fill_footprint(f);
      if (bind) {
        st.cells = CountExpr::from_int(st.cells.evaluate(*bind));
        st.fill = CountExpr::from_int(st.fill.evaluate(*bind));
      }
    } catch (const Error& err) {
      if (err.code() != Errc::needs_binding && err.code() != Errc::needs_fallback)
        throw;
      if (!bind)
        throw Error(Errc::needs_binding,
                    "array '" + a->name + "': " + err.what());
      const auto cs = array_cells(k, *a, *bind, cap, visited);
      st.cells = CountExpr::from_int(Int(cs.size()));
      st.fill = CountExpr::from_int(filled_cells(*a, cs));
    }
    return stats.emplace(a, std::move(st)).first->second;
  }

  std::string access_class(const AccessRef& acc, const ArrStat& st) {
    if (bind) {
      Rat sr = lane_stride_signed(k, acc, actx).evaluate_rat(*bind);
      if (!rat_is_integer(sr))
        throw Error(Errc::invalid_argument,
                    "lane stride does not evaluate to an integer");
      Int s = rat_num(sr);
      if (s < 0) s = -s;
      return classify_ratio(s, rat_num(st.cells.constant_value()),
                            rat_num(st.fill.constant_value()));
    }
    try {
      const CountExpr stride = lane_stride(k, acc, actx);
      DecideCtx dc(actx);
      return classify_symbolic(stride, st.cells, st.fill, dc);
    } catch (const Error& err) {
      if (err.code() != Errc::needs_binding) throw;
      throw Error(Errc::needs_binding,
                  "array '" + acc.array->name + "': " + err.what());
    }
  }

  PropertyVector run() {
    if (bind) {
      require_covered(k, *bind);
      if (!actx.admits(*bind))
        throw Error(Errc::assumption_violated,
                    "binding violates the kernel's assumptions");
    }

    walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
      if (s.kind == Stmt::Kind::assign) {
        const CountExpr n = stmt_count(s, chain);
        for (const auto& [key, per_point] : rhs_op_counts(*s.rhs, tm))
          out.at(key) = out.at(key) + n.scaled(Rat(per_point));
      } else if (s.kind == Stmt::Kind::barrier) {
        out.at("sync.barrier") = out.at("sync.barrier") + stmt_count(s, chain);
      }
    });

    // (size, class) -> accumulated load/store counts for the min terms.
    std::map<std::pair<int, std::string>, std::pair<CountExpr, CountExpr>> ls;
    for (const auto& acc : collect_accesses(k)) {
      const CountExpr n = counts.at(acc.stmt);
      if (n.is_zero()) continue;
      if (acc.array->space == Space::local) {
        if (!acc.is_store)
          out.at("mem.local.load") = out.at("mem.local.load") + n;
        continue;
      }
      const ArrStat& st = array_stat(acc.array);
      const std::string cls = access_class(acc, st);
      const int bits = dtype_bits(acc.array->dtype);
      const std::string key = global_key(acc.is_store, bits, cls);
      out.at(key) = out.at(key) + n;
      auto& pair = ls[{bits, cls}];
      if (acc.is_store)
        pair.second = pair.second + n;
      else
        pair.first = pair.first + n;
    }

    DecideCtx dc(actx);
    for (const auto& [kcls, pair] : ls) {
      if (pair.first.is_zero() || pair.second.is_zero()) continue;
      out.at(minls_key(kcls.first, kcls.second)) =
          make_min(pair.first, pair.second, dc);
    }

    CountExpr groups = CountExpr::from_int(1);
    for (const AxisDecl* ax : k.group_axes())
      groups = groups * to_count(ax->extent, actx);
    if (bind) groups = CountExpr::from_int(groups.evaluate(*bind));
    out.at("launch.groups") = groups;
    out.at("launch.const") = CountExpr::from_int(1);
    return std::move(out);
  }
};

}  // namespace

std::map<std::string, Int> rhs_op_counts(const Expr& rhs, const TypeMap& tm) {
  std::map<std::string, Int> out;
  count_ops(rhs, tm, out);
  return out;
}

PropertyVector extract_properties(const KernelIR& k) {
  Extraction e(k, nullptr, Int(0));
  return e.run();
}

PropertyVector extract_properties(const KernelIR& k, const Binding& b,
                                  const Int& cap) {
  Extraction e(k, &b, cap);
  return e.run();
}

PropertyVector evaluate_properties(const KernelIR& k,
                                   const PropertyVector& pv,
                                   const Binding& b) {
  require_covered(k, b);
  const AssumeCtx actx = build_assume_ctx(k);
  if (!actx.admits(b))
    throw Error(Errc::assumption_violated,
                "binding violates the kernel's assumptions");
  PropertyVector out;
  for (size_t i = 0; i < pv.entries.size(); ++i)
    out.entries[i] = CountExpr::from_int(pv.entries[i].evaluate(b));
  return out;
}

}  // namespace kernelcost
