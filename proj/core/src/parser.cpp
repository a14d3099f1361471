#include "kernelcost/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "kernelcost/error.hpp"

namespace kernelcost {

namespace {

const std::set<std::string> kKeywords = {
    "kernel", "param", "assume", "array", "axis",
    "loop",   "guard", "barrier", "end",  "and"};

const std::set<std::string> kCallees = {"rsqrt", "sqrt", "exp",
                                        "sin",   "cos",  "pow"};

struct Token {
  enum class Kind { ident, number, punct };
  Kind kind = Kind::punct;
  std::string text;
  Rat value;            // numbers
  bool is_int = true;   // number lexed without '.'/exponent
  int line = 0;
  int col = 0;
};

Rat parse_decimal(const std::string& s, int line, int col) {
  // [0-9]+ ('.' [0-9]*)? ([eE] [+-]? [0-9]+)?  evaluated exactly.
  size_t i = 0;
  Int mantissa = 0;
  long frac_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    mantissa = mantissa * 10 + (s[i] - '0');
    ++i;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa = mantissa * 10 + (s[i] - '0');
      ++frac_digits;
      ++i;
    }
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) throw ParseError(line, col, "malformed exponent");
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      exp10 = exp10 * 10 + (s[i] - '0');
      ++i;
    }
    if (neg) exp10 = -exp10;
  }
  if (i != s.size()) throw ParseError(line, col, "malformed number: " + s);
  const long net = exp10 - frac_digits;
  Rat v(mantissa);
  Int scale = 1;
  for (long j = 0; j < (net < 0 ? -net : net); ++j) scale *= 10;
  if (net >= 0)
    v *= Rat(scale);
  else
    v /= Rat(scale);
  return v;
}

std::vector<Token> lex_line(const std::string& raw, int line_no) {
  std::vector<Token> out;
  std::string line = raw;
  const size_t hash = line.find('#');
  if (hash != std::string::npos) line.resize(hash);
  size_t i = 0;
  const size_t n = line.size();
  while (i < n) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.line = line_no;
    t.col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                       line[j] == '_'))
        ++j;
      t.kind = Token::Kind::ident;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      bool is_int = true;
      while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      // A '.' continues the number only when not part of a '..' range token.
      if (j < n && line[j] == '.' && !(j + 1 < n && line[j + 1] == '.')) {
        is_int = false;
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      if (j < n && (line[j] == 'e' || line[j] == 'E')) {
        is_int = false;
        ++j;
        if (j < n && (line[j] == '+' || line[j] == '-')) ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      t.kind = Token::Kind::number;
      t.text = line.substr(i, j - i);
      t.is_int = is_int;
      t.value = parse_decimal(t.text, line_no, t.col);
      i = j;
    } else {
      t.kind = Token::Kind::punct;
      auto two = i + 1 < n ? line.substr(i, 2) : std::string();
      if (two == "//" || two == ".." || two == "<=" || two == ">=" ||
          two == "==") {
        t.text = two;
        i += 2;
      } else if (std::string("+-*/^()[],:=<>%").find(c) != std::string::npos) {
        t.text = std::string(1, c);
        ++i;
      } else {
        throw ParseError(line_no, t.col,
                         std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Cursor over one line's tokens.
class Cursor {
 public:
  Cursor(const std::vector<Token>& toks, int line) : toks_(toks), line_(line) {}

  bool done() const { return i_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(line_, end_col(), "unexpected end of line");
    return toks_[i_];
  }
  const Token& get() {
    const Token& t = peek();
    ++i_;
    return t;
  }
  bool is_punct(const std::string& p) const {
    return !done() && toks_[i_].kind == Token::Kind::punct &&
           toks_[i_].text == p;
  }
  bool is_ident(const std::string& w) const {
    return !done() && toks_[i_].kind == Token::Kind::ident &&
           toks_[i_].text == w;
  }
  bool eat_punct(const std::string& p) {
    if (!is_punct(p)) return false;
    ++i_;
    return true;
  }
  void expect_punct(const std::string& p) {
    if (!eat_punct(p))
      throw ParseError(line_, done() ? end_col() : peek().col,
                       "expected '" + p + "'");
  }
  std::string expect_ident(const std::string& what) {
    if (done() || peek().kind != Token::Kind::ident)
      throw ParseError(line_, done() ? end_col() : peek().col,
                       "expected " + what);
    return get().text;
  }
  void expect_done() {
    if (!done())
      throw ParseError(line_, peek().col,
                       "trailing tokens: '" + peek().text + "'");
  }
  int end_col() const {
    if (toks_.empty()) return 1;
    const Token& t = toks_.back();
    return t.col + static_cast<int>(t.text.size());
  }
  int line() const { return line_; }

 private:
  const std::vector<Token>& toks_;
  size_t i_ = 0;
  int line_;
};

enum class SymKind { param, array, axis, loop_var };

struct Parser {
  KernelIR k;
  std::unordered_map<std::string, SymKind> syms;  // first declaration wins
  std::vector<Stmt> open;                         // loop/guard nesting frames
  std::vector<std::string> open_loop_vars;
  bool saw_kernel = false;

  std::vector<Stmt>& current_body() {
    return open.empty() ? k.body : open.back().body;
  }

  void declare(const std::string& name, SymKind kind) {
    syms.emplace(name, kind);  // duplicates surface in validate()
  }

  bool known(const std::string& name, SymKind kind) const {
    auto it = syms.find(name);
    return it != syms.end() && it->second == kind;
  }

  /// Variable admissibility per affine context.
  enum class VarCtx { params_only, bounds, full };

  void check_var(const Token& t, VarCtx ctx) const {
    const std::string& v = t.text;
    auto it = syms.find(v);
    if (it == syms.end())
      throw ParseError(t.line, t.col, "undeclared identifier '" + v + "'");
    const SymKind kind = it->second;
    if (kind == SymKind::array)
      throw ParseError(t.line, t.col,
                       "array '" + v + "' used without indices");
    switch (ctx) {
      case VarCtx::params_only:
        if (kind != SymKind::param)
          throw ParseError(t.line, t.col,
                           "'" + v + "' is not a parameter");
        break;
      case VarCtx::bounds:
        if (kind == SymKind::axis)
          throw ParseError(t.line, t.col,
                           "axis '" + v + "' not allowed in loop bounds");
        if (kind == SymKind::loop_var && !in_scope(v))
          throw ParseError(t.line, t.col,
                           "loop variable '" + v + "' not in scope");
        break;
      case VarCtx::full:
        if (kind == SymKind::loop_var && !in_scope(v))
          throw ParseError(t.line, t.col,
                           "loop variable '" + v + "' not in scope");
        break;
    }
  }

  bool in_scope(const std::string& v) const {
    for (const auto& lv : open_loop_vars)
      if (lv == v) return true;
    return false;
  }

  // ---- affine expressions ----

  LinExpr parse_affine(Cursor& c, VarCtx ctx, bool allow_fd) {
    LinExpr acc = parse_affine_term(c, ctx, allow_fd);
    while (c.is_punct("+") || c.is_punct("-")) {
      const bool plus = c.get().text == "+";
      LinExpr rhs = parse_affine_term(c, ctx, allow_fd);
      acc = plus ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  LinExpr parse_affine_term(Cursor& c, VarCtx ctx, bool allow_fd) {
    LinExpr acc = parse_affine_factor(c, ctx, allow_fd);
    for (;;) {
      if (c.is_punct("*")) {
        const Token& op = c.get();
        LinExpr rhs = parse_affine_factor(c, ctx, allow_fd);
        if (!acc.is_constant() && !rhs.is_constant())
          throw ParseError(op.line, op.col, "non-affine product");
        if (rhs.is_constant())
          acc = acc.scaled(rhs.constant);
        else
          acc = rhs.scaled(acc.constant);
      } else if (c.is_punct("/")) {
        const Token& op = c.get();
        LinExpr rhs = parse_affine_factor(c, ctx, allow_fd);
        if (!rhs.is_constant() || rhs.constant == 0)
          throw ParseError(op.line, op.col,
                           "division requires a nonzero constant divisor");
        acc = acc.scaled(Rat(1) / rhs.constant);
      } else if (c.is_punct("//")) {
        const Token& op = c.get();
        if (!allow_fd)
          throw ParseError(op.line, op.col,
                           "floor division only allowed in extents and loop "
                           "bounds");
        LinExpr rhs = parse_affine_factor(c, ctx, allow_fd);
        if (!rhs.is_constant() || !rat_is_integer(rhs.constant) ||
            rhs.constant <= 0)
          throw ParseError(op.line, op.col,
                           "floor division requires a positive integer "
                           "divisor");
        acc = LinExpr::floordiv(acc, rat_num(rhs.constant));
      } else {
        break;
      }
    }
    return acc;
  }

  LinExpr parse_affine_factor(Cursor& c, VarCtx ctx, bool allow_fd) {
    if (c.eat_punct("-")) {
      return -parse_affine_factor(c, ctx, allow_fd);
    }
    if (c.eat_punct("(")) {
      LinExpr inner = parse_affine(c, ctx, allow_fd);
      c.expect_punct(")");
      return inner;
    }
    const Token& t = c.get();
    if (t.kind == Token::Kind::number) {
      if (!t.is_int)
        throw ParseError(t.line, t.col,
                         "float literal not allowed in affine expression");
      return LinExpr(t.value);
    }
    if (t.kind == Token::Kind::ident) {
      if (kKeywords.count(t.text))
        throw ParseError(t.line, t.col,
                         "keyword '" + t.text + "' in expression");
      check_var(t, ctx);
      return LinExpr::var(t.text);
    }
    throw ParseError(t.line, t.col, "expected affine expression");
  }

  LinCmp parse_cmp(Cursor& c, VarCtx ctx) {
    LinCmp cmp;
    const Token& lt = c.peek();
    cmp.lhs = parse_affine(c, ctx, /*allow_fd=*/false);
    if (c.eat_punct("%")) {
      if (!cmp.lhs.is_integer_affine())
        throw ParseError(lt.line, lt.col,
                         "divisibility lhs must be integer-affine");
      const Token& mt = c.peek();
      LinExpr m = parse_affine_factor(c, ctx, false);
      if (!m.is_constant() || !rat_is_integer(m.constant) || m.constant <= 0)
        throw ParseError(mt.line, mt.col,
                         "modulus must be a positive integer");
      c.expect_punct("==");
      const Token& rt = c.peek();
      LinExpr r = parse_affine(c, ctx, false);
      if (!r.is_constant() || !rat_is_integer(r.constant))
        throw ParseError(rt.line, rt.col, "residue must be an integer");
      cmp.op = CmpOp::eq;
      cmp.mod = rat_num(m.constant);
      cmp.rem = rat_num(r.constant);
      cmp.rhs = r;
      return cmp;
    }
    const Token& op = c.get();
    if (op.kind != Token::Kind::punct)
      throw ParseError(op.line, op.col, "expected comparison operator");
    if (op.text == "<")
      cmp.op = CmpOp::lt;
    else if (op.text == "<=")
      cmp.op = CmpOp::le;
    else if (op.text == ">")
      cmp.op = CmpOp::gt;
    else if (op.text == ">=")
      cmp.op = CmpOp::ge;
    else if (op.text == "==")
      cmp.op = CmpOp::eq;
    else
      throw ParseError(op.line, op.col,
                       "expected comparison operator, got '" + op.text + "'");
    cmp.rhs = parse_affine(c, ctx, false);
    return cmp;
  }

  std::vector<LinCmp> parse_cmp_list(Cursor& c, VarCtx ctx) {
    std::vector<LinCmp> out;
    out.push_back(parse_cmp(c, ctx));
    while (c.is_ident("and")) {
      c.get();
      out.push_back(parse_cmp(c, ctx));
    }
    return out;
  }

  // ---- RHS expressions ----

  std::vector<LinExpr> parse_index_list(Cursor& c, const std::string& array) {
    const ArrayDecl* decl = nullptr;
    for (const auto& a : k.arrays)
      if (a.name == array) decl = &a;
    std::vector<LinExpr> idx;
    c.expect_punct("[");
    for (;;) {
      const Token& at = c.peek();
      LinExpr e = parse_affine(c, VarCtx::full, /*allow_fd=*/false);
      if (!e.is_integer_affine())
        throw ParseError(at.line, at.col,
                         "array index must be integer-affine");
      idx.push_back(std::move(e));
      if (c.eat_punct(",")) continue;
      c.expect_punct("]");
      break;
    }
    if (decl && decl->shape.size() != idx.size())
      throw ParseError(c.line(), 1,
                       "rank mismatch: array '" + array + "' has rank " +
                           std::to_string(decl->shape.size()) + ", got " +
                           std::to_string(idx.size()));
    return idx;
  }

  ExprPtr parse_expr(Cursor& c) { return parse_add(c); }

  ExprPtr parse_add(Cursor& c) {
    ExprPtr acc = parse_mul(c);
    while (c.is_punct("+") || c.is_punct("-")) {
      const char op = c.get().text[0];
      acc = Expr::binop(op, acc, parse_mul(c));
    }
    return acc;
  }

  ExprPtr parse_mul(Cursor& c) {
    ExprPtr acc = parse_pow(c);
    while (c.is_punct("*") || c.is_punct("/")) {
      const char op = c.get().text[0];
      acc = Expr::binop(op, acc, parse_pow(c));
    }
    return acc;
  }

  ExprPtr parse_pow(Cursor& c) {
    ExprPtr base = parse_unary(c);
    if (c.eat_punct("^")) return Expr::binop('^', base, parse_pow(c));
    return base;
  }

  ExprPtr parse_unary(Cursor& c) {
    if (c.eat_punct("-")) return Expr::neg(parse_unary(c));
    return parse_primary(c);
  }

  ExprPtr parse_primary(Cursor& c) {
    if (c.eat_punct("(")) {
      ExprPtr inner = parse_expr(c);
      c.expect_punct(")");
      return inner;
    }
    const Token& t = c.get();
    if (t.kind == Token::Kind::number)
      return Expr::literal(t.value, t.is_int, t.text);
    if (t.kind != Token::Kind::ident)
      throw ParseError(t.line, t.col, "expected expression");
    if (kKeywords.count(t.text))
      throw ParseError(t.line, t.col, "keyword '" + t.text + "' in expression");
    if (c.is_punct("(")) {
      if (!kCallees.count(t.text))
        throw ParseError(t.line, t.col, "unknown function '" + t.text + "'");
      c.get();
      std::vector<ExprPtr> args;
      if (!c.is_punct(")")) {
        args.push_back(parse_expr(c));
        while (c.eat_punct(",")) args.push_back(parse_expr(c));
      }
      c.expect_punct(")");
      const size_t want = t.text == "pow" ? 2 : 1;
      if (args.size() != want)
        throw ParseError(t.line, t.col,
                         "'" + t.text + "' expects " + std::to_string(want) +
                             " argument(s)");
      return Expr::call(t.text, std::move(args));
    }
    if (c.is_punct("[")) {
      if (!known(t.text, SymKind::array))
        throw ParseError(t.line, t.col, "undeclared array '" + t.text + "'");
      return Expr::access(t.text, parse_index_list(c, t.text));
    }
    check_var(t, VarCtx::full);
    return Expr::scalar(t.text);
  }

  // ---- line handlers ----

  void require_top_level(const Token& t, const std::string& what) {
    if (!open.empty())
      throw ParseError(t.line, t.col,
                       what + " only allowed outside loops and guards");
  }

  void handle_line(Cursor& c) {
    const Token& first = c.peek();
    if (first.kind != Token::Kind::ident) {
      throw ParseError(first.line, first.col, "expected statement");
    }
    const std::string& w = first.text;
    if (!saw_kernel && w != "kernel")
      throw ParseError(first.line, first.col,
                       "kernel header must come first");
    if (w == "kernel") {
      if (saw_kernel)
        throw ParseError(first.line, first.col, "duplicate kernel header");
      c.get();
      k.name = c.expect_ident("kernel name");
      c.expect_done();
      saw_kernel = true;
    } else if (w == "param") {
      require_top_level(first, "param");
      c.get();
      for (;;) {
        const std::string name = c.expect_ident("parameter name");
        k.params.push_back({name});
        declare(name, SymKind::param);
        if (!c.eat_punct(",")) break;
      }
      c.expect_done();
    } else if (w == "assume") {
      require_top_level(first, "assume");
      c.get();
      for (auto& cmp : parse_cmp_list(c, VarCtx::params_only))
        k.assumptions.push_back(std::move(cmp));
      c.expect_done();
    } else if (w == "array") {
      require_top_level(first, "array");
      c.get();
      ArrayDecl a;
      a.name = c.expect_ident("array name");
      c.expect_punct(":");
      const Token& dt = c.peek();
      const std::string dts = c.expect_ident("dtype");
      if (dts == "f32")
        a.dtype = DType::f32;
      else if (dts == "f64")
        a.dtype = DType::f64;
      else if (dts == "i32")
        a.dtype = DType::i32;
      else
        throw ParseError(dt.line, dt.col, "unknown dtype '" + dts + "'");
      c.expect_punct("[");
      for (;;) {
        a.shape.push_back(parse_affine(c, VarCtx::params_only, false));
        if (c.eat_punct(",")) continue;
        c.expect_punct("]");
        break;
      }
      const Token& sp = c.peek();
      const std::string sps = c.expect_ident("memory space");
      if (sps == "global")
        a.space = Space::global;
      else if (sps == "local")
        a.space = Space::local;
      else
        throw ParseError(sp.line, sp.col, "unknown space '" + sps + "'");
      const Token& lt = c.peek();
      const std::string lts = c.expect_ident("layout");
      if (lts == "row_major")
        a.layout = Layout::row_major;
      else if (lts == "column_major")
        a.layout = Layout::column_major;
      else
        throw ParseError(lt.line, lt.col, "unknown layout '" + lts + "'");
      const Token& it = c.peek();
      const std::string its = c.expect_ident("intent");
      if (its == "in")
        a.intent = Intent::in;
      else if (its == "out")
        a.intent = Intent::out;
      else if (its == "inout")
        a.intent = Intent::inout;
      else if (its == "temp")
        a.intent = Intent::temp;
      else
        throw ParseError(it.line, it.col, "unknown intent '" + its + "'");
      c.expect_done();
      declare(a.name, SymKind::array);
      k.arrays.push_back(std::move(a));
    } else if (w == "axis") {
      require_top_level(first, "axis");
      c.get();
      AxisDecl ax;
      ax.name = c.expect_ident("axis name");
      c.expect_punct("=");
      const Token& rt = c.peek();
      const std::string role = c.expect_ident("axis role");
      if (role == "group")
        ax.is_group = true;
      else if (role == "local")
        ax.is_group = false;
      else
        throw ParseError(rt.line, rt.col, "unknown axis role '" + role + "'");
      c.expect_punct("(");
      const Token& ix = c.peek();
      if (ix.kind != Token::Kind::number || !ix.is_int)
        throw ParseError(ix.line, ix.col, "axis index must be an integer");
      c.get();
      ax.index = static_cast<int>(rat_num(ix.value));
      c.expect_punct(")");
      const std::string kw = c.expect_ident("'extent'");
      if (kw != "extent")
        throw ParseError(rt.line, rt.col, "expected 'extent'");
      ax.extent = parse_affine(c, VarCtx::params_only, /*allow_fd=*/true);
      c.expect_done();
      declare(ax.name, SymKind::axis);
      k.axes.push_back(std::move(ax));
    } else if (w == "loop") {
      c.get();
      Stmt s;
      s.kind = Stmt::Kind::loop;
      s.line = first.line;
      s.loop_var = c.expect_ident("loop variable");
      c.expect_punct("=");
      s.lower = parse_affine(c, VarCtx::bounds, /*allow_fd=*/true);
      c.expect_punct("..");
      s.upper = parse_affine(c, VarCtx::bounds, /*allow_fd=*/true);
      c.expect_done();
      declare(s.loop_var, SymKind::loop_var);
      open_loop_vars.push_back(s.loop_var);
      open.push_back(std::move(s));
    } else if (w == "guard") {
      c.get();
      Stmt s;
      s.kind = Stmt::Kind::guard;
      s.line = first.line;
      s.conds = parse_cmp_list(c, VarCtx::full);
      c.expect_done();
      open.push_back(std::move(s));
    } else if (w == "barrier") {
      c.get();
      c.expect_done();
      Stmt s;
      s.kind = Stmt::Kind::barrier;
      s.line = first.line;
      current_body().push_back(std::move(s));
    } else if (w == "end") {
      c.get();
      c.expect_done();
      if (open.empty())
        throw ParseError(first.line, first.col, "'end' with nothing open");
      Stmt closed = std::move(open.back());
      open.pop_back();
      if (closed.kind == Stmt::Kind::loop) open_loop_vars.pop_back();
      current_body().push_back(std::move(closed));
    } else {
      // assignment: <array>[indices] = <expr>
      c.get();
      if (!known(w, SymKind::array)) {
        if (syms.count(w))
          throw ParseError(first.line, first.col,
                           "assignment target '" + w + "' is not an array");
        throw ParseError(first.line, first.col,
                         "undeclared array '" + w + "'");
      }
      Stmt s;
      s.kind = Stmt::Kind::assign;
      s.line = first.line;
      s.lhs_array = w;
      s.lhs_indices = parse_index_list(c, w);
      c.expect_punct("=");
      s.rhs = parse_expr(c);
      c.expect_done();
      current_body().push_back(std::move(s));
    }
  }
};

}  // namespace

KernelIR parse_kernel(const std::string& source) {
  Parser p;
  std::istringstream in(source);
  std::string line;
  int line_no = 0;
  int last_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = lex_line(line, line_no);
    if (toks.empty()) continue;
    last_line = line_no;
    Cursor c(toks, line_no);
    p.handle_line(c);
  }
  if (!p.saw_kernel) throw ParseError(1, 1, "missing kernel header");
  if (!p.open.empty())
    throw ParseError(last_line, 1,
                     "unterminated " + std::string(p.open.back().kind ==
                                                           Stmt::Kind::loop
                                                       ? "loop"
                                                       : "guard") +
                         " (missing 'end')");
  return std::move(p.k);
}

KernelIR parse_kernel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open kernel file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kernel(ss.str());
}

}  // namespace kernelcost
