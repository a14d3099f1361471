#include "kernelcost/countexpr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kernelcost {

namespace {

std::string atom_key_var(const std::string& name) { return name; }

}  // namespace

AtomPtr Atom::make_var(const std::string& name) {
  auto a = std::make_shared<Atom>();
  a->kind = Kind::var;
  a->name = name;
  a->key = atom_key_var(name);
  return a;
}

AtomPtr Atom::make_floordiv(CountExpr num, Int den) {
  if (den <= 0) throw std::logic_error("floordiv atom requires den > 0");
  auto a = std::make_shared<Atom>();
  a->kind = Kind::floordiv;
  a->num = std::make_shared<CountExpr>(std::move(num));
  a->den = den;
  a->key = "(floordiv " + a->num->str() + " " + a->den.str() + ")";
  return a;
}

AtomPtr Atom::make_minmax(Kind k, std::vector<CountExpr> args) {
  if (k != Kind::min && k != Kind::max)
    throw std::logic_error("make_minmax requires min or max kind");
  if (args.size() < 2)
    throw std::logic_error("min/max atom requires at least two arguments");
  auto a = std::make_shared<Atom>();
  a->kind = k;
  // Canonical argument order makes structurally equal atoms share a key.
  std::sort(args.begin(), args.end(),
            [](const CountExpr& x, const CountExpr& y) {
              return x.str() < y.str();
            });
  a->args = std::move(args);
  std::string s = k == Kind::min ? "(min" : "(max";
  for (const auto& arg : a->args) s += " " + arg.str();
  s += ")";
  a->key = s;
  return a;
}

bool Monomial::operator<(const Monomial& o) const {
  const size_t n = std::min(factors.size(), o.factors.size());
  for (size_t i = 0; i < n; ++i) {
    if (factors[i].atom->key != o.factors[i].atom->key)
      return factors[i].atom->key < o.factors[i].atom->key;
    if (factors[i].exp != o.factors[i].exp)
      return factors[i].exp < o.factors[i].exp;
  }
  return factors.size() < o.factors.size();
}

bool Monomial::operator==(const Monomial& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].atom->key != o.factors[i].atom->key ||
        factors[i].exp != o.factors[i].exp)
      return false;
  }
  return true;
}

void CountExpr::add_term(Monomial m, Rat c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CountExpr CountExpr::from_int(Int v) { return from_rat(Rat(std::move(v))); }

CountExpr CountExpr::from_rat(Rat v) {
  CountExpr e;
  if (v != 0) e.terms_.emplace(Monomial{}, std::move(v));
  return e;
}

CountExpr CountExpr::var(const std::string& name) {
  return atom(Atom::make_var(name));
}

CountExpr CountExpr::atom(AtomPtr a) {
  CountExpr e;
  Monomial m;
  m.factors.push_back({std::move(a), 1});
  e.terms_.emplace(std::move(m), Rat(1));
  return e;
}

bool CountExpr::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.factors.empty();
}

Rat CountExpr::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant");
  return terms_.begin()->second;
}

CountExpr CountExpr::operator+(const CountExpr& o) const {
  CountExpr r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

CountExpr CountExpr::operator-(const CountExpr& o) const {
  CountExpr r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

CountExpr CountExpr::operator-() const {
  CountExpr r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    const auto& fa = a.factors[i];
    const auto& fb = b.factors[j];
    if (fa.atom->key == fb.atom->key) {
      r.factors.push_back({fa.atom, fa.exp + fb.exp});
      ++i;
      ++j;
    } else if (fa.atom->key < fb.atom->key) {
      r.factors.push_back(fa);
      ++i;
    } else {
      r.factors.push_back(fb);
      ++j;
    }
  }
  for (; i < a.factors.size(); ++i) r.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) r.factors.push_back(b.factors[j]);
  return r;
}

}  // namespace

CountExpr CountExpr::operator*(const CountExpr& o) const {
  CountExpr r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

CountExpr CountExpr::scaled(const Rat& f) const {
  CountExpr r;
  if (f == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * f);
  return r;
}

CountExpr CountExpr::pow(unsigned e) const {
  CountExpr r = from_int(1);
  CountExpr base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

namespace {

bool atom_references(const Atom& a, const std::string& name);

bool expr_references(const CountExpr& e, const std::string& name) {
  for (const auto& [m, c] : e.terms()) {
    (void)c;
    for (const auto& f : m.factors)
      if (atom_references(*f.atom, name)) return true;
  }
  return false;
}

bool atom_references(const Atom& a, const std::string& name) {
  switch (a.kind) {
    case Atom::Kind::var:
      return a.name == name;
    case Atom::Kind::floordiv:
      return expr_references(*a.num, name);
    case Atom::Kind::min:
    case Atom::Kind::max:
      for (const auto& arg : a.args)
        if (expr_references(arg, name)) return true;
      return false;
  }
  return false;
}

void atom_collect_vars(const Atom& a, std::vector<std::string>& out);

void expr_collect_vars(const CountExpr& e, std::vector<std::string>& out) {
  for (const auto& [m, c] : e.terms()) {
    (void)c;
    for (const auto& f : m.factors) atom_collect_vars(*f.atom, out);
  }
}

void atom_collect_vars(const Atom& a, std::vector<std::string>& out) {
  switch (a.kind) {
    case Atom::Kind::var:
      out.push_back(a.name);
      break;
    case Atom::Kind::floordiv:
      expr_collect_vars(*a.num, out);
      break;
    case Atom::Kind::min:
    case Atom::Kind::max:
      for (const auto& arg : a.args) expr_collect_vars(arg, out);
      break;
  }
}

}  // namespace

bool CountExpr::references(const std::string& name) const {
  return expr_references(*this, name);
}

std::vector<std::string> CountExpr::vars() const {
  std::vector<std::string> out;
  expr_collect_vars(*this, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CountExpr::plain_in(const std::string& name) const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == Atom::Kind::var) continue;
      if (atom_references(*f.atom, name)) return false;
    }
  }
  return true;
}

std::vector<CountExpr> CountExpr::coeffs_in(const std::string& name) const {
  if (!plain_in(name))
    throw std::logic_error("coeffs_in: variable occurs inside composite atom");
  std::vector<CountExpr> out(1);
  for (const auto& [m, c] : terms_) {
    unsigned power = 0;
    Monomial rest;
    for (const auto& f : m.factors) {
      if (f.atom->kind == Atom::Kind::var && f.atom->name == name)
        power = f.exp;
      else
        rest.factors.push_back(f);
    }
    if (out.size() <= power) out.resize(power + 1);
    CountExpr piece;
    piece.terms_.emplace(std::move(rest), c);
    out[power] = out[power] + piece;
  }
  return out;
}

CountExpr CountExpr::substitute(const std::string& name,
                                const CountExpr& repl) const {
  CountExpr r;
  for (const auto& [m, c] : terms_) {
    CountExpr term = from_rat(c);
    for (const auto& f : m.factors) {
      CountExpr factor;
      if (f.atom->kind == Atom::Kind::var) {
        factor = f.atom->name == name ? repl : atom(f.atom);
      } else if (!atom_references(*f.atom, name)) {
        factor = atom(f.atom);
      } else if (f.atom->kind == Atom::Kind::floordiv) {
        factor = atom(Atom::make_floordiv(f.atom->num->substitute(name, repl),
                                          f.atom->den));
      } else {
        std::vector<CountExpr> args;
        args.reserve(f.atom->args.size());
        for (const auto& arg : f.atom->args)
          args.push_back(arg.substitute(name, repl));
        factor = atom(Atom::make_minmax(f.atom->kind, std::move(args)));
      }
      term = term * factor.pow(f.exp);
    }
    r = r + term;
  }
  return r;
}

CountExpr CountExpr::substitute_atom(const std::string& key,
                                     const CountExpr& repl) const {
  CountExpr r;
  for (const auto& [m, c] : terms_) {
    CountExpr term = from_rat(c);
    for (const auto& f : m.factors) {
      if (f.atom->key == key)
        term = term * repl.pow(f.exp);
      else
        term = term * atom(f.atom).pow(f.exp);
    }
    r = r + term;
  }
  return r;
}

unsigned CountExpr::degree_of_atom(const std::string& key) const {
  unsigned deg = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& f : m.factors)
      if (f.atom->key == key) deg = std::max(deg, f.exp);
  }
  return deg;
}

namespace {

Rat atom_eval(const Atom& a, const Binding& b) {
  switch (a.kind) {
    case Atom::Kind::var: {
      auto it = b.find(a.name);
      if (it == b.end())
        throw std::out_of_range("unbound variable: " + a.name);
      return Rat(it->second);
    }
    case Atom::Kind::floordiv:
      return Rat(rat_floor(a.num->evaluate_rat(b) / Rat(a.den)));
    case Atom::Kind::min:
    case Atom::Kind::max: {
      Rat best = a.args.front().evaluate_rat(b);
      for (size_t i = 1; i < a.args.size(); ++i) {
        Rat v = a.args[i].evaluate_rat(b);
        if (a.kind == Atom::Kind::min ? v < best : v > best) best = v;
      }
      return best;
    }
  }
  throw std::logic_error("unreachable atom kind");
}

}  // namespace

Rat CountExpr::evaluate_rat(const Binding& b) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat term = c;
    for (const auto& f : m.factors) {
      Rat v = atom_eval(*f.atom, b);
      for (unsigned i = 0; i < f.exp; ++i) term *= v;
    }
    acc += term;
  }
  return acc;
}

Int CountExpr::evaluate(const Binding& b) const {
  Rat v = evaluate_rat(b);
  if (!rat_is_integer(v))
    throw std::logic_error("count evaluated to non-integer " + rat_str(v));
  return rat_num(v);
}

std::string CountExpr::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> parts;
  parts.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<std::string> factors;
    for (const auto& f : m.factors) {
      if (f.exp == 1)
        factors.push_back(f.atom->key);
      else
        factors.push_back("(^ " + f.atom->key + " " +
                          std::to_string(f.exp) + ")");
    }
    std::string t;
    if (factors.empty()) {
      t = rat_str(c);
    } else if (c == 1 && factors.size() == 1) {
      t = factors.front();
    } else {
      t = "(*";
      if (c != 1) t += " " + rat_str(c);
      for (const auto& f : factors) t += " " + f;
      t += ")";
    }
    parts.push_back(std::move(t));
  }
  if (parts.size() == 1) return parts.front();
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  s += ")";
  return s;
}

std::vector<Rat> power_sum_coeffs(unsigned k) {
  // S_k(M) = sum_{v=0}^{M} v^k. From the telescoping identity
  //   (M+1)^(k+1) = sum_{j=0}^{k} C(k+1,j) S_j(M)
  // solve for S_k given S_0..S_{k-1}.
  static std::vector<std::vector<Rat>> cache;  // cache[k] = coeffs of S_k
  if (k < cache.size()) return cache[k];
  for (unsigned kk = static_cast<unsigned>(cache.size()); kk <= k; ++kk) {
    // (M+1)^(kk+1) expanded by the binomial theorem.
    std::vector<Rat> lhs(kk + 2, Rat(0));
    Int binom = 1;
    for (unsigned j = 0; j <= kk + 1; ++j) {
      lhs[j] = Rat(binom);
      binom = binom * Int(kk + 1 - j) / Int(j + 1);
    }
    // Subtract C(kk+1, j) * S_j for j < kk.
    Int cj = 1;  // C(kk+1, 0)
    for (unsigned j = 0; j < kk; ++j) {
      const auto& Sj = cache[j];
      for (size_t d = 0; d < Sj.size(); ++d) lhs[d] -= Rat(cj) * Sj[d];
      cj = cj * Int(kk + 1 - j) / Int(j + 1);
    }
    // Divide by C(kk+1, kk) = kk+1.
    std::vector<Rat> Sk(kk + 2, Rat(0));
    for (size_t d = 0; d < lhs.size(); ++d) Sk[d] = lhs[d] / Rat(kk + 1);
    cache.push_back(std::move(Sk));
  }
  return cache[k];
}

namespace {

CountExpr poly_compose(const std::vector<Rat>& coeffs, const CountExpr& x) {
  // Horner evaluation of a univariate polynomial at a CountExpr argument.
  CountExpr acc;
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * x + CountExpr::from_rat(coeffs[i]);
  }
  return acc;
}

}  // namespace

CountExpr faulhaber_sum(const CountExpr& P, const std::string& v,
                        const CountExpr& lo, const CountExpr& hi) {
  if (lo.references(v) || hi.references(v))
    throw std::logic_error("faulhaber_sum: bound references summation var");
  const std::vector<CountExpr> coeffs = P.coeffs_in(v);  // throws if impure
  // sum_{v=lo}^{hi} v^k = S_k(hi) - S_k(lo-1).
  const CountExpr lom1 = lo - CountExpr::from_int(1);
  CountExpr total;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const auto Sk = power_sum_coeffs(static_cast<unsigned>(k));
    const CountExpr piece = poly_compose(Sk, hi) - poly_compose(Sk, lom1);
    total = total + coeffs[k] * piece;
  }
  return total;
}

}  // namespace kernelcost
