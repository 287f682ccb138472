#include "harmonic/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

constexpr std::array<std::pair<std::string_view, FunName>, 11> kFunctions{{
    {"sin", FunName::Sin},
    {"cos", FunName::Cos},
    {"exp", FunName::Exp},
    {"sinh", FunName::Sinh},
    {"cosh", FunName::Cosh},
    {"sqrt", FunName::Sqrt},
    {"log", FunName::Log},
    {"conj", FunName::Conj},
    {"re", FunName::Re},
    {"im", FunName::Im},
    {"abs", FunName::Abs},
}};

bool is_strictly_non_holomorphic(FunName f) {
  return f == FunName::Conj || f == FunName::Re || f == FunName::Im || f == FunName::Abs;
}

// Thrown internally so the node path can be assembled while unwinding.
struct DomainFault {
  std::vector<std::size_t> reversed_path;
  std::string detail;
};

std::string join_path(const std::vector<std::size_t>& reversed) {
  std::string out;
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += std::to_string(*it);
  }
  return out;
}

ComplexScalar apply_fun(FunName f, ComplexScalar a) {
  switch (f) {
    case FunName::Sin: return std::sin(a);
    case FunName::Cos: return std::cos(a);
    case FunName::Exp: return std::exp(a);
    case FunName::Sinh: return std::sinh(a);
    case FunName::Cosh: return std::cosh(a);
    case FunName::Sqrt: return std::sqrt(a);
    case FunName::Log:
      if (a == ComplexScalar{}) throw DomainFault{{}, "log(0)"};
      return std::log(a);
    case FunName::Conj: return std::conj(a);
    case FunName::Re: return {a.real(), 0.0};
    case FunName::Im: return {a.imag(), 0.0};
    case FunName::Abs: return {std::abs(a), 0.0};
  }
  return {};
}

ComplexScalar eval_node(const Expr& e, ComplexScalar z) {
  auto child = [&](std::size_t i) {
    try {
      return eval_node(e.child(i), z);
    } catch (DomainFault& f) {
      f.reversed_path.push_back(i);
      throw;
    }
  };
  switch (e.kind()) {
    case ExprKind::Const: return e.value();
    case ExprKind::Var: return z;
    case ExprKind::Add: return child(0) + child(1);
    case ExprKind::Sub: return child(0) - child(1);
    case ExprKind::Mul: return child(0) * child(1);
    case ExprKind::Div: {
      const ComplexScalar num = child(0);
      const ComplexScalar den = child(1);
      if (den == ComplexScalar{}) throw DomainFault{{}, "division by zero"};
      return num / den;
    }
    case ExprKind::Pow: {
      const ComplexScalar b = child(0);
      if (e.exponent() < 0 && b == ComplexScalar{}) throw DomainFault{{}, "negative power of zero"};
      return ipow(b, e.exponent());
    }
    case ExprKind::Neg: return -child(0);
    case ExprKind::Fun: return apply_fun(e.fun_name(), child(0));
  }
  return {};
}

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, start, {}};
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = {k, start, src_.substr(start, 1)};
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t p = pos_;
      auto digits = [&] {
        std::size_t n = 0;
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p, ++n;
        return n;
      };
      std::size_t nd = digits();
      if (p < src_.size() && src_[p] == '.') {
        ++p;
        nd += digits();
      }
      if (nd == 0) throw SyntaxError(start, "number");
      if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
        if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
          p = q;
          digits();
        }
      }
      const std::string_view text = src_.substr(start, p - start);
      double v = 0.0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) throw SyntaxError(start, "number");
      pos_ = p;
      cur_ = {Tok::Number, start, text, v};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t p = pos_;
      while (p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) ++p;
      pos_ = p;
      cur_ = {Tok::Ident, start, src_.substr(start, p - start)};
      return;
    }
    throw SyntaxError(start, "expression");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, 0, {}};
};

// ---------------------------------------------------------------- parser

Expr fold(Expr e) {
  if (e.is_const() || e.kind() == ExprKind::Var) return e;
  for (const auto& c : e.children())
    if (!c.is_const()) return e;
  try {
    return Expr::constant(eval_node(e, {}));
  } catch (const DomainFault&) {
    return e;  // e.g. 1/0 stays symbolic
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  Expr parse_all() {
    Expr e = parse_sum();
    if (lex_.peek().kind != Tok::End) throw SyntaxError(lex_.peek().offset, "operator or end of input");
    return e;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      lex_.take();
      Expr rhs = parse_product();
      lhs = fold(k == Tok::Plus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs));
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      lex_.take();
      Expr rhs = parse_unary();
      lhs = fold(k == Tok::Star ? Expr::mul(lhs, rhs) : Expr::div(lhs, rhs));
    }
  }

  Expr parse_unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return fold(Expr::neg(parse_unary()));
    }
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      return parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (lex_.peek().kind != Tok::Caret) return base;
    lex_.take();
    const std::size_t at = lex_.peek().offset;
    // Right operand binds like a unary expression, which makes ^ right-associative.
    const Expr ex = parse_unary();
    if (!ex.is_const()) throw NonIntegerExponent(at);
    const ComplexScalar v = ex.value();
    if (v.imag() != 0.0 || !std::isfinite(v.real()) || std::trunc(v.real()) != v.real() ||
        std::abs(v.real()) > 1024.0)
      throw NonIntegerExponent(at);
    return fold(Expr::pow(base, static_cast<int>(v.real())));
  }

  Expr parse_primary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: lex_.take(); return Expr::constant({t.number, 0.0});
      case Tok::LParen: {
        lex_.take();
        Expr e = parse_sum();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        lex_.take();
        if (t.text == "z") return Expr::var();
        if (t.text == "j") return Expr::constant(kJ);
        if (t.text == "pi") return Expr::constant({std::numbers::pi, 0.0});
        if (lex_.peek().kind != Tok::LParen) throw SyntaxError(t.offset, "z, j, pi, a number, a function call or '('");
        const auto f = fun_from_name(t.text);
        if (!f) throw UnknownFunction(t.offset, std::string(t.text));
        lex_.take();
        Expr arg = parse_sum();
        expect(Tok::RParen, "')'");
        return fold(Expr::fun(*f, arg));
      }
      default: throw SyntaxError(t.offset, "z, j, pi, a number, a function call or '('");
    }
  }

 private:
  void expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) throw SyntaxError(lex_.peek().offset, what);
    lex_.take();
  }

  Lexer lex_;
};

// ---------------------------------------------------------------- rendering

enum Prec { kAdd = 1, kMul = 2, kNeg = 3, kPow = 4, kAtom = 5 };

std::string fmt_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

struct Rendered {
  std::string text;
  int prec;
};

Rendered render_const(ComplexScalar c) {
  const double a = c.real();
  const double b = c.imag();
  auto real_part = [](double v) -> Rendered {
    if (std::signbit(v) && v != 0.0) return {"-" + fmt_double(-v), kNeg};
    return {fmt_double(v == 0.0 ? 0.0 : v), kAtom};
  };
  auto imag_part = [](double v) -> std::string {  // magnitude only
    const double m = std::abs(v);
    return m == 1.0 ? std::string("j") : fmt_double(m) + "*j";
  };
  if (b == 0.0) return real_part(a);
  if (a == 0.0) {
    const std::string mag = imag_part(b);
    const int prec = mag == "j" ? kAtom : kMul;
    if (b < 0.0) return {"-" + mag, mag == "j" ? kNeg : kMul};
    return {mag, prec};
  }
  const Rendered re = real_part(a);
  return {re.text + (b < 0.0 ? "-" : "+") + imag_part(b), kAdd};
}

Rendered render_node(const Expr& e) {
  auto wrap = [](const Rendered& r, int need) { return r.prec >= need ? r.text : "(" + r.text + ")"; };
  switch (e.kind()) {
    case ExprKind::Const: return render_const(e.value());
    case ExprKind::Var: return {"z", kAtom};
    case ExprKind::Add:
    case ExprKind::Sub: {
      const char* op = e.kind() == ExprKind::Add ? "+" : "-";
      return {wrap(render_node(e.child(0)), kAdd) + op + wrap(render_node(e.child(1)), kMul), kAdd};
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
      const char* op = e.kind() == ExprKind::Mul ? "*" : "/";
      return {wrap(render_node(e.child(0)), kMul) + op + wrap(render_node(e.child(1)), kNeg), kMul};
    }
    case ExprKind::Neg: return {"-" + wrap(render_node(e.child(0)), kNeg), kNeg};
    case ExprKind::Pow:
      return {wrap(render_node(e.child(0)), kAtom) + "^" + std::to_string(e.exponent()), kPow};
    case ExprKind::Fun:
      return {std::string(fun_name(e.fun_name())) + "(" + render_node(e.child(0)).text + ")", kAtom};
  }
  return {"", kAtom};
}

// ---------------------------------------------------------------- simplifying constructors

bool is_value(const Expr& e, ComplexScalar v) { return e.is_const() && e.value() == v; }

Expr s_neg(const Expr& a);

Expr s_mul(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr::constant(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.value() * b.value());
  if (b.is_const()) return s_mul(b, a);
  if (a.is_const()) {
    if (b.kind() == ExprKind::Neg) return s_mul(Expr::constant(-a.value()), b.child(0));
    if (b.kind() == ExprKind::Mul && b.child(0).is_const())
      return s_mul(Expr::constant(a.value() * b.child(0).value()), b.child(1));
  }
  if (a.kind() == ExprKind::Neg) return s_neg(s_mul(a.child(0), b));
  if (b.kind() == ExprKind::Neg) return s_neg(s_mul(a, b.child(0)));
  return Expr::mul(a, b);
}

Expr s_neg(const Expr& a) {
  if (a.is_const()) return Expr::constant(-a.value());
  if (a.kind() == ExprKind::Neg) return a.child(0);
  if (a.kind() == ExprKind::Mul && a.child(0).is_const())
    return s_mul(Expr::constant(-a.child(0).value()), a.child(1));
  return Expr::neg(a);
}

Expr s_add(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.value() + b.value());
  if (b.kind() == ExprKind::Neg) return Expr::sub(a, b.child(0));
  return Expr::add(a, b);
}

Expr s_sub(const Expr& a, const Expr& b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return s_neg(b);
  if (a.is_const() && b.is_const()) return Expr::constant(a.value() - b.value());
  if (b.kind() == ExprKind::Neg) return Expr::add(a, b.child(0));
  return Expr::sub(a, b);
}

Expr s_div(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0)) return Expr::constant(0.0);
  if (is_value(b, 1.0)) return a;
  if (b.is_const() && b.value() != ComplexScalar{}) return s_mul(Expr::constant(1.0 / b.value()), a);
  return Expr::div(a, b);
}

Expr s_pow(const Expr& a, int n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return a;
  if (a.is_const() && !(n < 0 && a.value() == ComplexScalar{})) return Expr::constant(ipow(a.value(), n));
  return Expr::pow(a, n);
}

Expr fn(FunName f, const Expr& a) { return fold(Expr::fun(f, a)); }

Expr diff_node(const Expr& e, std::vector<std::size_t>& path) {
  auto d = [&](std::size_t i) {
    path.push_back(i);
    Expr r = diff_node(e.child(i), path);
    path.pop_back();
    return r;
  };
  switch (e.kind()) {
    case ExprKind::Const: return Expr::constant(0.0);
    case ExprKind::Var: return Expr::constant(1.0);
    case ExprKind::Add: return s_add(d(0), d(1));
    case ExprKind::Sub: return s_sub(d(0), d(1));
    case ExprKind::Mul: return s_add(s_mul(d(0), e.child(1)), s_mul(e.child(0), d(1)));
    case ExprKind::Div: {
      const Expr& u = e.child(0);
      const Expr& v = e.child(1);
      return s_div(s_sub(s_mul(d(0), v), s_mul(u, d(1))), s_pow(v, 2));
    }
    case ExprKind::Pow: {
      const int n = e.exponent();
      if (n == 0) return Expr::constant(0.0);
      return s_mul(s_mul(Expr::constant(static_cast<double>(n)), s_pow(e.child(0), n - 1)), d(0));
    }
    case ExprKind::Neg: return s_neg(d(0));
    case ExprKind::Fun: {
      const Expr& a = e.child(0);
      const FunName f = e.fun_name();
      if (is_strictly_non_holomorphic(f)) {
        std::vector<std::size_t> rev(path.rbegin(), path.rend());
        throw NonHolomorphic(join_path(rev), std::string(fun_name(f)) + " has no complex derivative");
      }
      const Expr da = d(0);
      switch (f) {
        case FunName::Sin: return s_mul(fn(FunName::Cos, a), da);
        case FunName::Cos: return s_mul(s_neg(fn(FunName::Sin, a)), da);
        case FunName::Exp: return s_mul(fn(FunName::Exp, a), da);
        case FunName::Sinh: return s_mul(fn(FunName::Cosh, a), da);
        case FunName::Cosh: return s_mul(fn(FunName::Sinh, a), da);
        case FunName::Sqrt: return s_div(da, s_mul(Expr::constant(2.0), fn(FunName::Sqrt, a)));
        case FunName::Log: return s_div(da, a);
        default: break;
      }
    }
  }
  return Expr::constant(0.0);
}

using Poly = std::vector<ComplexScalar>;
constexpr std::size_t kMaxPolyDegree = 64;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, ComplexScalar{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  return out;
}

std::optional<Poly> poly_of(const Expr& e) {
  if (!e.contains_var()) {
    try {
      return Poly{eval_node(e, {})};
    } catch (const DomainFault&) {
      return std::nullopt;
    }
  }
  switch (e.kind()) {
    case ExprKind::Var: return Poly{0.0, 1.0};
    case ExprKind::Add:
    case ExprKind::Sub: {
      auto a = poly_of(e.child(0));
      auto b = poly_of(e.child(1));
      if (!a || !b) return std::nullopt;
      Poly out(std::max(a->size(), b->size()), ComplexScalar{});
      const double sign = e.kind() == ExprKind::Add ? 1.0 : -1.0;
      for (std::size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
      for (std::size_t i = 0; i < b->size(); ++i) out[i] += sign * (*b)[i];
      return out;
    }
    case ExprKind::Mul: {
      auto a = poly_of(e.child(0));
      auto b = poly_of(e.child(1));
      if (!a || !b || a->size() + b->size() > kMaxPolyDegree + 2) return std::nullopt;
      return poly_mul(*a, *b);
    }
    case ExprKind::Div: {
      if (e.child(1).contains_var()) return std::nullopt;
      auto a = poly_of(e.child(0));
      auto b = poly_of(e.child(1));
      if (!a || !b || (*b)[0] == ComplexScalar{}) return std::nullopt;
      for (auto& c : *a) c /= (*b)[0];
      return a;
    }
    case ExprKind::Neg: {
      auto a = poly_of(e.child(0));
      if (a)
        for (auto& c : *a) c = -c;
      return a;
    }
    case ExprKind::Pow: {
      const int n = e.exponent();
      if (n < 0) return std::nullopt;
      auto a = poly_of(e.child(0));
      if (!a || (a->size() - 1) * static_cast<std::size_t>(n) > kMaxPolyDegree) return std::nullopt;
      Poly out{1.0};
      for (int i = 0; i < n; ++i) out = poly_mul(out, *a);
      return out;
    }
    default: return std::nullopt;
  }
}

std::optional<std::string> find_non_holomorphic(const Expr& e, std::vector<std::size_t>& path) {
  if (e.kind() == ExprKind::Fun && is_strictly_non_holomorphic(e.fun_name())) {
    std::vector<std::size_t> rev(path.rbegin(), path.rend());
    return join_path(rev);
  }
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    path.push_back(i);
    auto r = find_non_holomorphic(e.child(i), path);
    path.pop_back();
    if (r) return r;
  }
  return std::nullopt;
}

bool contains_fun(const Expr& e, bool (*pred)(FunName)) {
  if (e.kind() == ExprKind::Fun && pred(e.fun_name())) return true;
  for (const auto& c : e.children())
    if (contains_fun(c, pred)) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------- Expr

std::string_view fun_name(FunName f) {
  for (const auto& [name, id] : kFunctions)
    if (id == f) return name;
  return "?";
}

std::optional<FunName> fun_from_name(std::string_view name) {
  for (const auto& [n, id] : kFunctions)
    if (n == name) return id;
  return std::nullopt;
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(ComplexScalar c) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Const, c, 0, FunName::Sin, {}}));
}
Expr Expr::var() { return Expr(std::make_shared<const Node>(Node{ExprKind::Var, {}, 0, FunName::Sin, {}})); }

Expr Expr::add(Expr l, Expr r) { return make(ExprKind::Add, {std::move(l), std::move(r)}); }
Expr Expr::sub(Expr l, Expr r) { return make(ExprKind::Sub, {std::move(l), std::move(r)}); }
Expr Expr::mul(Expr l, Expr r) { return make(ExprKind::Mul, {std::move(l), std::move(r)}); }
Expr Expr::div(Expr l, Expr r) { return make(ExprKind::Div, {std::move(l), std::move(r)}); }
Expr Expr::pow(Expr base, int exponent) { return make(ExprKind::Pow, {std::move(base)}, exponent); }
Expr Expr::neg(Expr e) { return make(ExprKind::Neg, {std::move(e)}); }
Expr Expr::fun(FunName f, Expr arg) { return make(ExprKind::Fun, {std::move(arg)}, 0, f); }

Expr Expr::make(ExprKind k, std::vector<Expr> children, int exponent, FunName f) {
  return Expr(std::make_shared<const Node>(Node{k, {}, exponent, f, std::move(children)}));
}

bool Expr::contains_var() const {
  if (kind() == ExprKind::Var) return true;
  for (const auto& c : children())
    if (c.contains_var()) return true;
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Const: return a.value() == b.value();
    case ExprKind::Pow:
      if (a.exponent() != b.exponent()) return false;
      break;
    case ExprKind::Fun:
      if (a.fun_name() != b.fun_name()) return false;
      break;
    default: break;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

// ---------------------------------------------------------------- public API

Expr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Expr& e) { return render_node(e).text; }

bool is_holomorphic(const Expr& e) {
  return !contains_fun(e, [](FunName f) {
    return is_strictly_non_holomorphic(f) || f == FunName::Sqrt || f == FunName::Log;
  });
}

bool is_conditionally_holomorphic(const Expr& e) { return !first_non_holomorphic(e).has_value(); }

std::optional<std::string> first_non_holomorphic(const Expr& e) {
  std::vector<std::size_t> path;
  return find_non_holomorphic(e, path);
}

ComplexScalar eval_expr(const Expr& e, ComplexScalar z) {
  try {
    return eval_node(e, z);
  } catch (const DomainFault& f) {
    throw DomainError(join_path(f.reversed_path),
                      f.detail + " at z=(" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + ")");
  }
}

Expr diff_expr(const Expr& e) {
  std::vector<std::size_t> path;
  return diff_node(e, path);
}

Expr substitute(const Expr& e, const Expr& arg) {
  switch (e.kind()) {
    case ExprKind::Const: return e;
    case ExprKind::Var: return arg;
    case ExprKind::Add: return Expr::add(substitute(e.child(0), arg), substitute(e.child(1), arg));
    case ExprKind::Sub: return Expr::sub(substitute(e.child(0), arg), substitute(e.child(1), arg));
    case ExprKind::Mul: return Expr::mul(substitute(e.child(0), arg), substitute(e.child(1), arg));
    case ExprKind::Div: return Expr::div(substitute(e.child(0), arg), substitute(e.child(1), arg));
    case ExprKind::Pow: return Expr::pow(substitute(e.child(0), arg), e.exponent());
    case ExprKind::Neg: return Expr::neg(substitute(e.child(0), arg));
    case ExprKind::Fun: return Expr::fun(e.fun_name(), substitute(e.child(0), arg));
  }
  return e;
}

std::optional<std::vector<ComplexScalar>> as_polynomial(const Expr& e) {
  auto p = poly_of(e);
  if (!p) return std::nullopt;
  while (p->size() > 1 && p->back() == ComplexScalar{}) p->pop_back();
  return p;
}

ComplexScalar ipow(ComplexScalar base, int n) {
  unsigned m = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
  ComplexScalar result{1.0, 0.0};
  ComplexScalar b = base;
  while (m != 0) {
    if (m & 1U) result *= b;
    m >>= 1U;
    if (m != 0) b *= b;
  }
  return n < 0 ? ComplexScalar{1.0, 0.0} / result : result;
}

}  // namespace harmonic
