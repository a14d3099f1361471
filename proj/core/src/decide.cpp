#include "kernelcost/decide.hpp"

#include <algorithm>
#include <stdexcept>

namespace kernelcost {

namespace {

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int pos_mod(const Int& a, const Int& m) { return ((a % m) + m) % m; }

}  // namespace

void AssumeCtx::declare_param(const std::string& p) { params_.insert(p); }

bool AssumeCtx::is_param(const std::string& p) const {
  return params_.count(p) != 0;
}

void AssumeCtx::set_lower(const std::string& p, const Int& lo) {
  auto& f = facts_[p];
  f.lo = std::max(f.lo, lo);
}

void AssumeCtx::set_upper(const std::string& p, const Int& hi) {
  auto& f = facts_[p];
  if (!f.hi || *f.hi > hi) f.hi = hi;
}

void AssumeCtx::add_congruence(const std::string& p, const Int& mod,
                               const Int& rem) {
  if (mod <= 0) throw std::logic_error("congruence modulus must be positive");
  facts_[p].congr.emplace_back(mod, pos_mod(rem, mod));
}

void AssumeCtx::add_raw(LinCmp c) { raw_.push_back(std::move(c)); }

void AssumeCtx::add_constraint(const LinCmp& c) {
  raw_.push_back(c);
  if (c.mod > 0) {
    // Divisibility over a single variable with unit coefficient:
    //   v + k ≡ rem (mod m)  =>  v ≡ rem - k (mod m).
    const LinExpr& l = c.lhs;
    if (l.fd.empty() && l.coeffs.size() == 1 &&
        l.coeffs.begin()->second == 1 && rat_is_integer(l.constant)) {
      add_congruence(l.coeffs.begin()->first, c.mod,
                     c.rem - rat_num(l.constant));
    }
    return;
  }
  const LinExpr e = c.lhs - c.rhs;
  if (!e.fd.empty()) return;
  // Relational constraint a*v + k OP 0 over a single variable.
  if (e.coeffs.size() != 1) return;
  if (!rat_is_integer(e.coeffs.begin()->second) || !rat_is_integer(e.constant))
    return;
  const std::string& v = e.coeffs.begin()->first;
  const Int a = rat_num(e.coeffs.begin()->second);
  const Int k = rat_num(e.constant);
  // Normalize to a*v <= K and/or a*v >= K over integers.
  auto upper_from = [&](const Int& K) {
    // a*v <= K
    if (a > 0)
      set_upper(v, floor_div(K, a));
    else
      set_lower(v, ceil_div(K, a));
  };
  auto lower_from = [&](const Int& K) {
    // a*v >= K
    if (a > 0)
      set_lower(v, ceil_div(K, a));
    else
      set_upper(v, floor_div(K, a));
  };
  switch (c.op) {
    case CmpOp::lt:
      upper_from(-k - 1);
      break;
    case CmpOp::le:
      upper_from(-k);
      break;
    case CmpOp::gt:
      lower_from(-k + 1);
      break;
    case CmpOp::ge:
      lower_from(-k);
      break;
    case CmpOp::eq:
      upper_from(-k);
      lower_from(-k);
      break;
  }
}

const ParamFacts* AssumeCtx::facts(const std::string& p) const {
  auto it = facts_.find(p);
  return it == facts_.end() ? nullptr : &it->second;
}

Int AssumeCtx::lower(const std::string& p) const {
  const ParamFacts* f = facts(p);
  return f ? f->lo : Int(0);
}

std::optional<Int> AssumeCtx::var_residue(const std::string& v,
                                          const Int& d) const {
  if (d == 1) return Int(0);
  const ParamFacts* f = facts(v);
  if (!f) return std::nullopt;
  for (const auto& [mod, rem] : f->congr)
    if (mod % d == 0) return pos_mod(rem, d);
  if (f->hi && f->lo == *f->hi) return pos_mod(f->lo, d);
  return std::nullopt;
}

bool AssumeCtx::divides(const CountExpr& e, const Int& d) const {
  if (d == 0) return false;
  const Int m = abs(d);
  if (m == 1) return true;
  Int acc = 0;
  for (const auto& [mono, coeff] : e.terms()) {
    if (!rat_is_integer(coeff)) return false;
    const Int c = rat_num(coeff);
    if (c % m == 0) continue;
    Int residue = 1;
    bool known = true;
    bool zero = false;
    for (const auto& f : mono.factors) {
      if (f.atom->kind == Atom::Kind::var) {
        if (auto r = var_residue(f.atom->name, m)) {
          if (*r == 0) {
            // Atoms are integer-valued, so one factor divisible by m makes
            // the whole monomial divisible no matter what the others are.
            zero = true;
            break;
          }
          for (unsigned i = 0; i < f.exp; ++i)
            residue = pos_mod(residue * *r, m);
          continue;
        }
      }
      known = false;
    }
    if (zero) continue;
    if (!known) return false;
    acc = pos_mod(acc + c * residue, m);
  }
  return acc == 0;
}

bool AssumeCtx::admits(const Binding& b) const {
  for (const auto& [p, f] : facts_) {
    auto it = b.find(p);
    if (it == b.end()) return false;
    const Int& v = it->second;
    if (v < f.lo) return false;
    if (f.hi && v > *f.hi) return false;
    for (const auto& [mod, rem] : f.congr)
      if (pos_mod(v, mod) != rem) return false;
  }
  for (const auto& c : raw_) {
    if (!c.evaluate(b)) return false;
  }
  for (const auto& [p, v] : b) {
    if (params_.count(p) && v < 0) return false;
  }
  return true;
}

DecideCtx::DecideCtx(const AssumeCtx& actx, std::vector<VarRange> chain)
    : actx_(&actx), chain_(std::move(chain)) {}

bool DecideCtx::proves_nonneg(const CountExpr& p) const {
  return nonneg_rec(p, chain_.size(), 0);
}

namespace {

constexpr int kMaxDepth = 48;

/// Composite atom with the longest key in p; such an atom cannot be nested
/// inside any other atom of p (nesting implies a strictly longer container
/// key). Null when p has no composite atoms.
AtomPtr longest_composite(const CountExpr& p) {
  AtomPtr best;
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == Atom::Kind::var) continue;
      if (!best || f.atom->key.size() > best->key.size() ||
          (f.atom->key.size() == best->key.size() && f.atom->key < best->key))
        best = f.atom;
    }
  }
  return best;
}

}  // namespace

bool DecideCtx::nonneg_rec(const CountExpr& p, size_t vars_left,
                           int depth) const {
  if (depth > kMaxDepth) return false;

  // Eliminate chain variables innermost-out.
  while (vars_left > 0) {
    const VarRange& vr = chain_[vars_left - 1];
    --vars_left;
    if (!p.references(vr.name)) continue;
    if (!p.plain_in(vr.name)) return false;
    const auto cs = p.coeffs_in(vr.name);
    if (cs.size() <= 1) continue;  // degenerate, no actual occurrence
    if (cs.size() == 2) {
      // Linear in v: over any interval the minimum sits at an endpoint,
      // pointwise in the remaining quantities. A provably signed
      // coefficient pins the endpoint, which also covers ranges that are
      // empty at some outer points; otherwise split on both.
      if (nonneg_rec(cs[1], vars_left, depth + 1))
        return nonneg_rec(p.substitute(vr.name, vr.lo), vars_left,
                          depth + 1);
      if (nonneg_rec(-cs[1], vars_left, depth + 1))
        return nonneg_rec(p.substitute(vr.name, vr.hi), vars_left,
                          depth + 1);
      return nonneg_rec(p.substitute(vr.name, vr.lo), vars_left, depth + 1) &&
             nonneg_rec(p.substitute(vr.name, vr.hi), vars_left, depth + 1);
    }
    // Higher degree: monotone cases only. All nonconstant coefficients of
    // one sign and a nonnegative range put the minimum at one endpoint.
    bool coeffs_nonneg = true, coeffs_nonpos = true;
    for (size_t k = 1; k < cs.size(); ++k) {
      if (cs[k].is_zero()) continue;
      if (!nonneg_rec(cs[k], vars_left, depth + 1)) coeffs_nonneg = false;
      if (!nonneg_rec(-cs[k], vars_left, depth + 1)) coeffs_nonpos = false;
      if (!coeffs_nonneg && !coeffs_nonpos) return false;
    }
    if (!nonneg_rec(vr.lo, vars_left, depth + 1)) return false;
    return nonneg_rec(
        p.substitute(vr.name, coeffs_nonneg ? vr.lo : vr.hi), vars_left,
        depth + 1);
  }

  // Relax composite atoms, outermost first.
  for (AtomPtr a = longest_composite(p); a; a = longest_composite(p)) {
    if (p.degree_of_atom(a->key) != 1) return false;
    if (a->kind == Atom::Kind::floordiv) {
      // floor(q/d) lies in [(q-d+1)/d, q/d]; linear occurrence makes the
      // endpoint split exact over that interval, hence sound for the
      // determined value.
      const Rat invd = Rat(1) / Rat(a->den);
      const CountExpr lo =
          a->num->scaled(invd) +
          CountExpr::from_rat(Rat(1 - a->den) * invd);
      const CountExpr hi = a->num->scaled(invd);
      return nonneg_rec(p.substitute_atom(a->key, lo), 0, depth + 1) &&
             nonneg_rec(p.substitute_atom(a->key, hi), 0, depth + 1);
    }
    // min/max: decompose p = C*M + B and use sign knowledge of C.
    CountExpr C, B;
    for (const auto& [m, c] : p.terms()) {
      bool has = false;
      Monomial rest;
      for (const auto& f : m.factors) {
        if (f.atom->key == a->key)
          has = true;
        else
          rest.factors.push_back(f);
      }
      CountExpr piece = CountExpr::from_rat(c);
      CountExpr restp = CountExpr::from_int(1);
      for (const auto& f : rest.factors)
        restp = restp * CountExpr::atom(f.atom).pow(f.exp);
      piece = piece * restp;
      if (has)
        C = C + piece;
      else
        B = B + piece;
    }
    const bool c_nonneg = nonneg_rec(C, 0, depth + 1);
    const bool c_nonpos = nonneg_rec(-C, 0, depth + 1);
    if (!c_nonneg && !c_nonpos) return false;
    const bool conjunctive =
        (a->kind == Atom::Kind::min && c_nonneg) ||
        (a->kind == Atom::Kind::max && c_nonpos);
    if (conjunctive) {
      // C*min(args)+B = min over args of C*arg+B when C >= 0: need all.
      for (const auto& arg : a->args)
        if (!nonneg_rec(C * arg + B, 0, depth + 1)) return false;
      return true;
    }
    // C*min(args)+B = max over args when C <= 0: one arg working
    // everywhere suffices (conservative).
    for (const auto& arg : a->args)
      if (nonneg_rec(C * arg + B, 0, depth + 1)) return true;
    return false;
  }

  // Pure parameter polynomial: shift every parameter to its lower bound and
  // require nonnegative coefficients.
  CountExpr q = p;
  for (const auto& v : p.vars()) {
    if (!actx_->is_param(v)) return false;
    const Int lo = actx_->lower(v);
    if (lo != 0)
      q = q.substitute(v, CountExpr::var(v) + CountExpr::from_int(lo));
  }
  for (const auto& [m, c] : q.terms()) {
    (void)m;
    if (c < 0) return false;
  }
  return true;
}

CountExpr make_floordiv(const CountExpr& num, const Int& den,
                        const AssumeCtx& actx) {
  if (den <= 0) throw std::logic_error("floordiv requires positive divisor");
  if (den == 1) return num;
  // Split out monomials that are divisible outright (coefficient divisible
  // or residue pinned to zero by congruences); they divide exactly.
  CountExpr divisible, rest;
  for (const auto& [m, c] : num.terms()) {
    CountExpr piece;
    {
      CountExpr t = CountExpr::from_rat(c);
      for (const auto& f : m.factors)
        t = t * CountExpr::atom(f.atom).pow(f.exp);
      piece = t;
    }
    if (actx.divides(piece, den))
      divisible = divisible + piece;
    else
      rest = rest + piece;
  }
  CountExpr out = divisible.scaled(Rat(1) / Rat(den));
  if (rest.is_zero()) return out;
  if (rest.is_constant()) {
    const Rat rv = rest.constant_value();
    if (rat_is_integer(rv))
      return out + CountExpr::from_int(floor_div(rat_num(rv), den));
  }
  // Residual congruence knowledge: floor((r + d*t)/den) with the whole rest
  // pinned to residue r is (rest - r)/den + floor(r/den); covered by the
  // divisible split when r == 0, so only the opaque atom remains here.
  return out + CountExpr::atom(Atom::make_floordiv(rest, den));
}

CountExpr make_min(const CountExpr& a, const CountExpr& b,
                   const DecideCtx& ctx) {
  if ((a - b).is_zero()) return a;
  if (ctx.proves_nonneg(b - a)) return a;
  if (ctx.proves_nonneg(a - b)) return b;
  return CountExpr::atom(
      Atom::make_minmax(Atom::Kind::min, std::vector<CountExpr>{a, b}));
}

CountExpr make_max(const CountExpr& a, const CountExpr& b,
                   const DecideCtx& ctx) {
  if ((a - b).is_zero()) return a;
  if (ctx.proves_nonneg(b - a)) return b;
  if (ctx.proves_nonneg(a - b)) return a;
  return CountExpr::atom(
      Atom::make_minmax(Atom::Kind::max, std::vector<CountExpr>{a, b}));
}

CountExpr to_count(const LinExpr& e, const AssumeCtx& actx) {
  CountExpr out = CountExpr::from_rat(e.constant);
  for (const auto& [v, c] : e.coeffs)
    out = out + CountExpr::var(v).scaled(c);
  for (const auto& [key, t] : e.fd) {
    (void)key;
    out = out +
          make_floordiv(to_count(*t.num, actx), t.den, actx).scaled(t.coeff);
  }
  return out;
}

}  // namespace kernelcost
