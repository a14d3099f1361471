#include "kernelcost/linexpr.hpp"

#include <algorithm>
#include <sstream>

namespace kernelcost {

LinExpr LinExpr::var(const std::string& name, Rat coeff) {
  LinExpr e;
  if (coeff != 0) e.coeffs[name] = std::move(coeff);
  return e;
}

LinExpr LinExpr::floordiv(const LinExpr& num, const Int& den) {
  LinExpr e;
  FdTerm t;
  t.num = std::make_shared<LinExpr>(num);
  t.den = den;
  t.coeff = 1;
  e.fd["(" + num.str() + ")//" + den.str()] = std::move(t);
  return e;
}

bool LinExpr::is_integer_affine() const {
  if (!fd.empty()) return false;
  if (!rat_is_integer(constant)) return false;
  for (const auto& [_, c] : coeffs)
    if (!rat_is_integer(c)) return false;
  return true;
}

Rat LinExpr::coeff_of(const std::string& name) const {
  auto it = coeffs.find(name);
  return it == coeffs.end() ? Rat(0) : it->second;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr r = *this;
  r.constant += o.constant;
  for (const auto& [v, c] : o.coeffs) {
    Rat& slot = r.coeffs[v];
    slot += c;
    if (slot == 0) r.coeffs.erase(v);
  }
  for (const auto& [k, t] : o.fd) {
    auto it = r.fd.find(k);
    if (it == r.fd.end()) {
      r.fd[k] = t;
    } else {
      it->second.coeff += t.coeff;
      if (it->second.coeff == 0) r.fd.erase(it);
    }
  }
  return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + (-o); }

LinExpr LinExpr::operator-() const { return scaled(Rat(-1)); }

LinExpr LinExpr::scaled(const Rat& f) const {
  LinExpr r;
  if (f == 0) return r;
  r.constant = constant * f;
  for (const auto& [v, c] : coeffs) r.coeffs[v] = c * f;
  for (const auto& [k, t] : fd) {
    r.fd[k] = t;
    r.fd[k].coeff = t.coeff * f;
  }
  return r;
}

Rat LinExpr::evaluate(const std::map<std::string, Int>& env) const {
  Rat acc = constant;
  for (const auto& [v, c] : coeffs) {
    auto it = env.find(v);
    if (it == env.end())
      throw std::logic_error("unbound variable in affine evaluation: " + v);
    acc += c * Rat(it->second);
  }
  for (const auto& [_, t] : fd) {
    Rat inner = t.num->evaluate(env);
    acc += t.coeff * Rat(rat_floor(inner / Rat(t.den)));
  }
  return acc;
}

void LinExpr::collect_vars(std::vector<std::string>& out) const {
  for (const auto& [v, _] : coeffs) out.push_back(v);
  for (const auto& [_, t] : fd) t.num->collect_vars(out);
}

bool LinExpr::references(const std::string& name) const {
  if (coeffs.count(name)) return true;
  for (const auto& [_, t] : fd)
    if (t.num->references(name)) return true;
  return false;
}

std::string LinExpr::str() const {
  // Deterministic: sorted variable terms, then floordiv terms, constant last.
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, const std::string& body) {
    if (c == 0) return;
    Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (body.empty()) {
      os << rat_str(a);
    } else if (a == 1) {
      os << body;
    } else {
      os << rat_str(a) << "*" << body;
    }
  };
  for (const auto& [v, c] : coeffs) emit(c, v);
  for (const auto& [k, t] : fd) emit(t.coeff, k);
  if (constant != 0 || first) emit(constant == 0 ? Rat(0) : constant, "");
  if (first) os << "0";
  return os.str();
}

bool LinCmp::evaluate(const std::map<std::string, Int>& env) const {
  if (is_divisibility()) {
    Rat v = lhs.evaluate(env);
    Int iv = rat_to_int(v);
    Int m = ((iv % mod) + mod) % mod;
    return m == rem;
  }
  Rat l = lhs.evaluate(env), r = rhs.evaluate(env);
  switch (op) {
    case CmpOp::lt: return l < r;
    case CmpOp::le: return l <= r;
    case CmpOp::gt: return l > r;
    case CmpOp::ge: return l >= r;
    case CmpOp::eq: return l == r;
  }
  return false;
}

std::string LinCmp::str() const {
  if (is_divisibility())
    return lhs.str() + " % " + mod.str() + " == " + rem.str();
  const char* o = op == CmpOp::lt   ? " < "
                  : op == CmpOp::le ? " <= "
                  : op == CmpOp::gt ? " > "
                  : op == CmpOp::ge ? " >= "
                                    : " == ";
  return lhs.str() + o + rhs.str();
}

}  // namespace kernelcost
