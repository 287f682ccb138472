#ifndef HARMONIC_EXPR_HPP
#define HARMONIC_EXPR_HPP

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace harmonic {

using ComplexScalar = std::complex<double>;

/// The imaginary unit, written `j` in expressions.
inline constexpr ComplexScalar kJ{0.0, 1.0};

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };

enum class FunName { Sin, Cos, Exp, Sinh, Cosh, Sqrt, Log, Conj, Re, Im, Abs };

std::string_view fun_name(FunName f);
std::optional<FunName> fun_from_name(std::string_view name);

/**
 * Immutable expression tree over one complex variable `z`.
 *
 * Nodes are shared, so copying an Expr is cheap. Arity is fixed by kind:
 * Const/Var take no children, Neg/Fun/Pow one, the arithmetic nodes two.
 */
class Expr {
 public:
  struct Node {
    ExprKind kind;
    ComplexScalar value{};  // Const
    int exponent = 0;       // Pow
    FunName fun = FunName::Sin;
    std::vector<Expr> children;
  };

  Expr();  // Const(0)

  static Expr constant(ComplexScalar c);
  static Expr var();
  static Expr add(Expr l, Expr r);
  static Expr sub(Expr l, Expr r);
  static Expr mul(Expr l, Expr r);
  static Expr div(Expr l, Expr r);
  static Expr pow(Expr base, int exponent);
  static Expr neg(Expr e);
  static Expr fun(FunName f, Expr arg);

  ExprKind kind() const { return node_->kind; }
  ComplexScalar value() const { return node_->value; }
  int exponent() const { return node_->exponent; }
  FunName fun_name() const { return node_->fun; }
  const std::vector<Expr>& children() const { return node_->children; }
  const Expr& child(std::size_t i) const { return node_->children.at(i); }

  bool is_const() const { return kind() == ExprKind::Const; }
  bool contains_var() const;

  /// Structural equality; constants compare by value.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(ExprKind k, std::vector<Expr> children, int exponent = 0, FunName f = FunName::Sin);
  std::shared_ptr<const Node> node_;
};

/// Parse an expression in `z`. Constant-only subtrees are folded, so
/// "2*j" yields a single Const node. Accepts `j`, `pi` and decimal literals.
Expr parse_expr(std::string_view text);

/// Render with minimal parentheses; parse_expr(render(e)) == e for trees in
/// folded form.
std::string render(const Expr& e);

/// False iff the tree contains conj, re, im, abs, sqrt or log.
bool is_holomorphic(const Expr& e);

/// Like is_holomorphic but only the strictly non-holomorphic primitives
/// (conj, re, im, abs) count; sqrt and log are accepted on their principal
/// branch. This is the guard used by diff_expr and the solvers.
bool is_conditionally_holomorphic(const Expr& e);

/// Path of the first conj/re/im/abs node, if any.
std::optional<std::string> first_non_holomorphic(const Expr& e);

/// Evaluate at z. Throws DomainError at poles and at log(0).
ComplexScalar eval_expr(const Expr& e, ComplexScalar z);

/// Symbolic dF/dz. Throws NonHolomorphic on conj/re/im/abs.
Expr diff_expr(const Expr& e);

/// Replace every occurrence of the variable with `arg`.
Expr substitute(const Expr& e, const Expr& arg);

/// base^n by repeated squaring; exact for small n on exactly representable values.
ComplexScalar ipow(ComplexScalar base, int n);

/// Coefficients c[k] of z^k when e is a polynomial in z (only + - * by
/// constants, division by constants, non-negative integer powers).
std::optional<std::vector<ComplexScalar>> as_polynomial(const Expr& e);

}  // namespace harmonic

#endif  // HARMONIC_EXPR_HPP
