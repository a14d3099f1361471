#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kernelcost/numeric.hpp"

namespace kernelcost {

class CountExpr;

using Binding = std::map<std::string, Int>;

/// Opaque multiplicative factor of a monomial: a named variable (parameter
/// or, transiently during summation, a domain variable), a floor division by
/// a positive constant, or an n-ary min/max.
struct Atom {
  enum class Kind { var, floordiv, min, max };

  Kind kind = Kind::var;
  std::string name;                    // var
  std::shared_ptr<CountExpr> num;      // floordiv numerator
  Int den;                             // floordiv denominator, > 0
  std::vector<CountExpr> args;         // min/max arguments
  std::string key;                     // canonical text; atom identity

  static std::shared_ptr<const Atom> make_var(const std::string& name);
  static std::shared_ptr<const Atom> make_floordiv(CountExpr num, Int den);
  static std::shared_ptr<const Atom> make_minmax(Kind k,
                                                 std::vector<CountExpr> args);
};

using AtomPtr = std::shared_ptr<const Atom>;

struct MonoFactor {
  AtomPtr atom;
  unsigned exp;
};

/// Product of atom powers, sorted by atom key. The empty monomial is the
/// constant term.
struct Monomial {
  std::vector<MonoFactor> factors;
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const;
};

/// Exact multivariate polynomial with rational coefficients over atoms.
/// Invariant: evaluation at any admissible binding yields an integer; the
/// rationals exist only as internal bookkeeping (Faulhaber coefficients,
/// exact divisions justified by divisibility assumptions).
class CountExpr {
 public:
  CountExpr() = default;

  static CountExpr from_int(Int v);
  static CountExpr from_rat(Rat v);
  static CountExpr var(const std::string& name);
  static CountExpr atom(AtomPtr a);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()

  CountExpr operator+(const CountExpr& o) const;
  CountExpr operator-(const CountExpr& o) const;
  CountExpr operator-() const;
  CountExpr operator*(const CountExpr& o) const;
  CountExpr scaled(const Rat& f) const;
  CountExpr pow(unsigned e) const;

  bool operator==(const CountExpr& o) const { return terms_ == o.terms_; }

  /// True when `name` occurs anywhere, including inside composite atoms.
  bool references(const std::string& name) const;

  /// All variable names occurring anywhere (sorted, unique).
  std::vector<std::string> vars() const;

  /// True when `name` occurs only as a plain variable atom, never inside a
  /// floordiv/min/max argument; required for decomposition and summation.
  bool plain_in(const std::string& name) const;

  /// Coefficient polynomials by power of `name` (index = power). Requires
  /// plain_in(name).
  std::vector<CountExpr> coeffs_in(const std::string& name) const;

  /// Deep substitution of a variable by a polynomial.
  CountExpr substitute(const std::string& name, const CountExpr& repl) const;

  /// Replaces top-level occurrences of the atom with the given canonical key.
  /// Occurrences nested inside other atoms are left alone; callers must pick
  /// atoms that are not nested (e.g. a longest-key composite atom).
  CountExpr substitute_atom(const std::string& key,
                            const CountExpr& repl) const;

  /// Highest exponent of the atom with this key across monomials (0 when
  /// absent as a top-level factor).
  unsigned degree_of_atom(const std::string& key) const;

  Rat evaluate_rat(const Binding& b) const;
  /// Exact evaluation; throws if the result is not an integer (which would
  /// indicate an inadmissible binding slipped past assumption checks).
  Int evaluate(const Binding& b) const;

  /// Canonical prefix-notation text, stable across runs.
  std::string str() const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }

 private:
  void add_term(Monomial m, Rat c);
  std::map<Monomial, Rat> terms_;
};

/// Closed-form sum of polynomial P over v in [lo, hi] (both inclusive) via
/// power-sum polynomials; exact for any integers with hi >= lo-1 (the empty
/// range hi == lo-1 yields zero). Requires P.plain_in(v) and that lo/hi do
/// not reference v; throws std::logic_error otherwise.
CountExpr faulhaber_sum(const CountExpr& P, const std::string& v,
                        const CountExpr& lo, const CountExpr& hi);

/// Coefficients of S_k(M) = sum_{v=0}^{M} v^k as a degree-(k+1) polynomial
/// in M (index = power). Exposed for property testing.
std::vector<Rat> power_sum_coeffs(unsigned k);

}  // namespace kernelcost
