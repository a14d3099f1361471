#include "kernelcost/footprint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kernelcost/error.hpp"

namespace kernelcost {

namespace {

[[noreturn]] void need_binding(const std::string& why) {
  throw Error(Errc::needs_binding, why);
}

CountExpr integerize(const CountExpr& e) {
  Int lcm = 1;
  for (const auto& [m, c] : e.terms()) {
    (void)m;
    const Int den = rat_den(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  return lcm == 1 ? e : e.scaled(Rat(lcm));
}

struct VarRangeMap {
  // Inclusive ranges, tightened by single-variable guards.
  std::map<std::string, std::pair<CountExpr, CountExpr>> r;
  bool contains(const std::string& v) const { return r.count(v) != 0; }
};

/// Splits a polynomial into Σ a_v·v over domain variables plus a
/// domain-free remainder. Fails (returns false) when a domain variable
/// occurs nonlinearly, inside an atom, or with a non-constant coefficient.
bool decompose_linear(const CountExpr& p, const VarRangeMap& ranges,
                      std::map<std::string, Int>& a, CountExpr& rest) {
  a.clear();
  rest = CountExpr();
  for (const auto& [m, c] : p.terms()) {
    std::string dom_var;
    bool bad = false;
    for (const auto& f : m.factors) {
      if (f.atom->kind == Atom::Kind::var && ranges.contains(f.atom->name)) {
        if (!dom_var.empty() || f.exp != 1 || m.factors.size() != 1) {
          bad = true;
          break;
        }
        dom_var = f.atom->name;
      } else {
        // Composite atoms must not hide domain variables.
        for (const auto& v : CountExpr::atom(f.atom).vars())
          if (ranges.contains(v)) {
            bad = true;
            break;
          }
        if (bad) break;
      }
    }
    if (bad) return false;
    if (!dom_var.empty()) {
      if (!rat_is_integer(c)) return false;
      a[dom_var] += rat_num(c);
      if (a[dom_var] == 0) a.erase(dom_var);
    } else {
      CountExpr piece;
      {
        CountExpr t = CountExpr::from_rat(c);
        for (const auto& f : m.factors)
          t = t * CountExpr::atom(f.atom).pow(f.exp);
        piece = t;
      }
      rest = rest + piece;
    }
  }
  return true;
}

/// One additive component of an index expression: coeff times a value w
/// that ranges densely over [lo, hi]; combo records w's composition from
/// original domain variables for guard re-matching.
struct Comp {
  Int coeff = 0;
  std::map<std::string, Int> combo;
  CountExpr lo, hi;
};

struct NormGuard {
  CountExpr poly;  // >= 0
};

void normalize_guards(const std::vector<LinCmp>& in, const AssumeCtx& actx,
                      std::vector<NormGuard>& out) {
  const CountExpr one = CountExpr::from_int(1);
  for (const auto& g : in) {
    if (g.is_divisibility()) {
      CountExpr lhs = to_count(g.lhs, actx);
      CountExpr shifted = lhs - CountExpr::from_int(g.rem);
      bool has_var = false;
      for (const auto& v : lhs.vars())
        if (!actx.is_param(v)) has_var = true;
      if (!has_var && actx.divides(shifted, g.mod)) continue;
      need_binding("divisibility guard in footprint analysis: " + g.str());
    }
    const CountExpr l = to_count(g.lhs, actx);
    const CountExpr r = to_count(g.rhs, actx);
    switch (g.op) {
      case CmpOp::lt:
        out.push_back({integerize(r - l - one)});
        break;
      case CmpOp::le:
        out.push_back({integerize(r - l)});
        break;
      case CmpOp::gt:
        out.push_back({integerize(l - r - one)});
        break;
      case CmpOp::ge:
        out.push_back({integerize(l - r)});
        break;
      case CmpOp::eq:
        out.push_back({integerize(r - l)});
        out.push_back({integerize(l - r)});
        break;
    }
  }
}

std::vector<std::string> guard_support(const CountExpr& p,
                                       const VarRangeMap& ranges) {
  std::vector<std::string> s;
  for (const auto& v : p.vars())
    if (ranges.contains(v)) s.push_back(v);
  return s;
}

/// Dense (step-1) coverage test for Σ λ_j·t_j over 0-based boxes with
/// lengths len_j, coefficients sorted ascending: each λ_k must not exceed
/// one plus the reachable span of the smaller coefficients.
bool mixed_radix_dense(std::vector<std::pair<Int, CountExpr>>& parts,
                       const DecideCtx& dc) {
  std::sort(parts.begin(), parts.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  if (parts.front().first != 1) return false;
  CountExpr span;  // Σ λ_j (len_j - 1) over processed parts
  const CountExpr one = CountExpr::from_int(1);
  for (size_t i = 0; i < parts.size(); ++i) {
    const Int& lam = parts[i].first;
    if (i > 0 && !dc.proves_nonneg(span - CountExpr::from_int(lam) + one))
      return false;
    span = span + (parts[i].second - one).scaled(Rat(lam));
  }
  return true;
}

AxisImage finish_image(const CountExpr& cpart, std::vector<Comp>& comps,
                       const VarRangeMap& ranges, const DecideCtx& dc) {
  AxisImage img;
  std::set<std::string> support;
  for (const auto& c : comps)
    for (const auto& [v, a] : c.combo) {
      (void)a;
      support.insert(v);
    }
  img.support.assign(support.begin(), support.end());

  // Bounds must not reference domain variables (triangular coupling).
  for (const auto& c : comps) {
    for (const auto& v : c.lo.vars())
      if (ranges.contains(v))
        need_binding("index range depends on another domain variable");
    for (const auto& v : c.hi.vars())
      if (ranges.contains(v))
        need_binding("index range depends on another domain variable");
  }

  if (comps.empty()) {
    img.min = cpart;
    img.max = cpart;
    img.card = CountExpr::from_int(1);
    img.step = 1;
    return img;
  }

  CountExpr mn = cpart, mx = cpart;
  for (const auto& c : comps) {
    if (c.coeff > 0) {
      mn = mn + c.lo.scaled(Rat(c.coeff));
      mx = mx + c.hi.scaled(Rat(c.coeff));
    } else {
      mn = mn + c.hi.scaled(Rat(c.coeff));
      mx = mx + c.lo.scaled(Rat(c.coeff));
    }
  }
  img.min = mn;
  img.max = mx;

  if (comps.size() == 1) {
    const Comp& c = comps.front();
    img.card = c.hi - c.lo + CountExpr::from_int(1);
    img.step = abs(c.coeff);
    if (img.step == 0) img.step = 1;
    return img;
  }

  Int g = 0;
  for (const auto& c : comps) g = boost::multiprecision::gcd(g, abs(c.coeff));
  if (g == 0) g = 1;
  std::vector<std::pair<Int, CountExpr>> parts;
  for (const auto& c : comps)
    parts.emplace_back(abs(c.coeff) / g,
                       c.hi - c.lo + CountExpr::from_int(1));
  if (!mixed_radix_dense(parts, dc))
    need_binding("multi-variable index image is not a dense progression");
  img.card =
      (img.max - img.min).scaled(Rat(1) / Rat(g)) + CountExpr::from_int(1);
  img.step = g;
  return img;
}

}  // namespace

AxisImage index_image(const LinExpr& idx, const StmtDomain& dom,
                      const AssumeCtx& actx) {
  if (!idx.is_integer_affine())
    throw std::logic_error("index_image requires integer-affine index");

  DecideCtx base(actx);
  VarRangeMap ranges;
  for (const auto& v : dom.vars)
    ranges.r[v.name] = {to_count(v.lower, actx),
                        to_count(v.upper_excl, actx) - CountExpr::from_int(1)};

  std::vector<NormGuard> gs;
  normalize_guards(dom.guards, actx, gs);

  // Single-variable guards tighten ranges; parameter-only guards must be
  // provable (a refuted guard would empty the domain).
  std::vector<NormGuard> multi;
  for (auto& g : gs) {
    const auto support = guard_support(g.poly, ranges);
    if (support.empty()) {
      if (base.proves_nonneg(g.poly)) continue;
      need_binding("parameter guard undecidable in footprint analysis");
    }
    std::map<std::string, Int> a;
    CountExpr rest;
    if (!decompose_linear(g.poly, ranges, a, rest))
      need_binding("guard not affine over domain variables");
    if (support.size() == 1) {
      const std::string& v = support.front();
      const Int av = a[v];
      auto& [lo, hi] = ranges.r[v];
      if (av > 0) {
        CountExpr b =
            make_floordiv(-rest + CountExpr::from_int(av - 1), av, actx);
        lo = make_max(lo, b, base);
      } else {
        CountExpr b = make_floordiv(rest, -av, actx);
        hi = make_min(hi, b, base);
      }
      continue;
    }
    multi.push_back(std::move(g));
  }

  // Components: one per domain variable in the index; parameter terms fold
  // into the constant part.
  CountExpr cpart = CountExpr::from_rat(idx.constant);
  std::vector<Comp> comps;
  std::set<std::string> svars;
  for (const auto& [v, c] : idx.coeffs) {
    if (!ranges.contains(v)) {
      cpart = cpart + CountExpr::var(v).scaled(c);
      continue;
    }
    Comp comp;
    comp.coeff = rat_num(c);
    comp.combo[v] = 1;
    comp.lo = ranges.r[v].first;
    comp.hi = ranges.r[v].second;
    comps.push_back(std::move(comp));
    svars.insert(v);
  }

  // Multi-variable guards: merge matching components into a derived dense
  // variable, or clip an already-merged one.
  for (const auto& g : multi) {
    std::map<std::string, Int> a;
    CountExpr rest;
    decompose_linear(g.poly, ranges, a, rest);  // validated above

    bool relevant = false, all_in = true;
    for (const auto& [v, av] : a) {
      (void)av;
      if (svars.count(v))
        relevant = true;
      else
        all_in = false;
    }
    if (!relevant) continue;  // constrains other dimensions only
    if (!all_in)
      need_binding("guard couples this dimension with another");

    // Exact re-match against an existing merged component.
    bool handled = false;
    for (auto& c : comps) {
      if (c.combo.size() < 2) continue;
      std::set<std::string> ck, gk;
      for (const auto& [v, x] : c.combo) {
        (void)x;
        ck.insert(v);
      }
      for (const auto& [v, x] : a) {
        (void)x;
        gk.insert(v);
      }
      if (ck != gk) continue;
      // proportional: a = mu * combo
      const std::string& v0 = a.begin()->first;
      if (c.combo[v0] == 0 || a[v0] % c.combo[v0] != 0) continue;
      const Int mu = a[v0] / c.combo[v0];
      bool prop = mu != 0;
      for (const auto& [v, av] : a)
        if (av != mu * c.combo[v]) prop = false;
      if (!prop) continue;
      // mu*w + rest >= 0
      if (mu > 0) {
        CountExpr b =
            make_floordiv(-rest + CountExpr::from_int(mu - 1), mu, actx);
        c.lo = make_max(c.lo, b, base);
      } else {
        CountExpr b = make_floordiv(rest, -mu, actx);
        c.hi = make_min(c.hi, b, base);
      }
      handled = true;
      break;
    }
    if (handled) continue;

    // Merge singleton components whose index coefficients are proportional
    // to the guard combination.
    std::vector<size_t> member;
    for (const auto& [v, av] : a) {
      (void)av;
      bool found = false;
      for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].combo.size() == 1 &&
            comps[i].combo.begin()->first == v) {
          member.push_back(i);
          found = true;
        }
      }
      if (!found) need_binding("guard variable already merged differently");
    }
    const std::string& v0 = a.begin()->first;
    Comp& c0 = comps[member.front()];
    if (a[v0] == 0) need_binding("degenerate guard combination");
    // lambda: index coeff = lambda * guard coeff, same for every member.
    const Rat lam_r = Rat(c0.coeff) / Rat(a[v0]);
    if (!rat_is_integer(lam_r))
      need_binding("guard combination not integrally proportional to index");
    const Int lam = rat_num(lam_r);
    for (size_t i : member) {
      const std::string& v = comps[i].combo.begin()->first;
      if (Rat(comps[i].coeff) != Rat(lam) * Rat(a.at(v)))
        need_binding("guard combination not proportional to index");
    }
    // Box image of w = Σ a_v·v must be dense step-1.
    CountExpr wlo, whi;
    std::vector<std::pair<Int, CountExpr>> parts;
    Int gg = 0;
    for (size_t i : member) {
      const Comp& c = comps[i];
      const std::string& v = c.combo.begin()->first;
      const Int av = a.at(v);
      if (av > 0) {
        wlo = wlo + c.lo.scaled(Rat(av));
        whi = whi + c.hi.scaled(Rat(av));
      } else {
        wlo = wlo + c.hi.scaled(Rat(av));
        whi = whi + c.lo.scaled(Rat(av));
      }
      parts.emplace_back(abs(av), c.hi - c.lo + CountExpr::from_int(1));
      gg = boost::multiprecision::gcd(gg, abs(av));
    }
    if (gg != 1) need_binding("guard combination has non-unit gcd");
    if (!mixed_radix_dense(parts, base))
      need_binding("guard combination image is not dense");
    Comp merged;
    merged.coeff = lam;
    for (const auto& [v, av] : a) merged.combo[v] = av;
    // w >= -rest
    merged.lo = make_max(wlo, -rest, base);
    merged.hi = whi;
    std::sort(member.begin(), member.end(), std::greater<size_t>());
    for (size_t i : member) comps.erase(comps.begin() + static_cast<long>(i));
    comps.push_back(std::move(merged));
  }

  return finish_image(cpart, comps, ranges, base);
}

Footprint access_footprint(const KernelIR& k, const ArrayDecl& arr,
                           const AssumeCtx& actx) {
  Footprint fp;
  fp.array = &arr;

  bool first = true;
  for (const auto& acc : collect_accesses(k)) {
    if (acc.array != &arr) continue;
    const StmtDomain dom = stmt_domain(k, *acc.stmt, acc.enclosing);
    std::vector<AxisImage> axes;
    axes.reserve(acc.indices->size());
    for (const auto& idx : *acc.indices)
      axes.push_back(index_image(idx, dom, actx));
    if (first) {
      fp.axes = std::move(axes);
      first = false;
      continue;
    }
    if (axes.size() != fp.axes.size())
      need_binding("rank differs across accesses");
    for (size_t i = 0; i < axes.size(); ++i) {
      const AxisImage& a = axes[i];
      const AxisImage& b = fp.axes[i];
      if (a.step != b.step || a.min.str() != b.min.str() ||
          a.max.str() != b.max.str() || a.card.str() != b.card.str())
        need_binding("per-axis images differ across accesses to '" +
                     arr.name + "'");
    }
  }
  if (first)
    throw Error(Errc::invalid_argument,
                "array '" + arr.name + "' has no accesses");

  // |F| factors only when dimensions draw on disjoint variables.
  std::set<std::string> seen;
  for (const auto& ax : fp.axes)
    for (const auto& v : ax.support)
      if (!seen.insert(v).second)
        need_binding("array dimensions share variable '" + v + "'");

  fp.cells = CountExpr::from_int(1);
  for (const auto& ax : fp.axes) fp.cells = fp.cells * ax.card;
  return fp;
}

size_t fastest_axis(const ArrayDecl& arr) {
  if (arr.shape.empty()) return 0;
  return arr.layout == Layout::row_major ? arr.shape.size() - 1 : 0;
}

CountExpr fill_footprint(const Footprint& f) {
  if (!f.array || f.axes.empty()) return CountExpr::from_int(0);
  const size_t fast = fastest_axis(*f.array);
  CountExpr out = CountExpr::from_int(1);
  for (size_t i = 0; i < f.axes.size(); ++i) {
    if (i == fast)
      out = out * (f.axes[i].max - f.axes[i].min + CountExpr::from_int(1));
    else
      out = out * f.axes[i].card;
  }
  return out;
}

CountExpr lane_stride_signed(const KernelIR& k, const AccessRef& acc,
                             const AssumeCtx& actx) {
  const AxisDecl* lane = k.lane_axis();
  if (!lane || !acc.array) return CountExpr();
  const auto& shape = acc.array->shape;
  const size_t rank = shape.size();
  CountExpr coeff;
  for (size_t d = 0; d < rank; ++d) {
    const Rat cd = (*acc.indices)[d].coeff_of(lane->name);
    if (cd == 0) continue;
    CountExpr stride = CountExpr::from_int(1);
    if (acc.array->layout == Layout::row_major) {
      for (size_t j = d + 1; j < rank; ++j)
        stride = stride * to_count(shape[j], actx);
    } else {
      for (size_t j = 0; j < d; ++j)
        stride = stride * to_count(shape[j], actx);
    }
    coeff = coeff + stride.scaled(cd);
  }
  return coeff;
}

CountExpr lane_stride(const KernelIR& k, const AccessRef& acc,
                      const AssumeCtx& actx) {
  CountExpr coeff = lane_stride_signed(k, acc, actx);
  if (coeff.is_zero()) return coeff;
  if (coeff.is_constant()) {
    Rat v = coeff.constant_value();
    return CountExpr::from_rat(v < 0 ? -v : v);
  }
  DecideCtx dc(actx);
  if (dc.proves_nonneg(coeff)) return coeff;
  if (dc.proves_nonneg(-coeff)) return -coeff;
  need_binding("sign of lane stride is undecidable");
}

}  // namespace kernelcost
