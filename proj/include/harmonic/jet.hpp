#ifndef HARMONIC_JET_HPP
#define HARMONIC_JET_HPP

#include <string>

#include "harmonic/expr.hpp"

namespace harmonic {

/// Value and partial derivatives up to second order with respect to the two
/// real coordinates (x, y). The mixed slot is shared: uxy == uyx by layout.
struct Jet2 {
  ComplexScalar u{}, ux{}, uy{}, uxx{}, uxy{}, uyy{};

  static Jet2 constant(ComplexScalar c) { return {c, {}, {}, {}, {}, {}}; }

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(ComplexScalar s);

  /// Slot-wise real and imaginary parts.
  Jet2 real_part() const;
  Jet2 imag_part() const;
  Jet2 conj() const;
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(ComplexScalar s, Jet2 a);
Jet2 operator/(const Jet2& a, const Jet2& b);  // throws DomainError on zero divisor

/// Composition f(w) given f, f' and f'' at w.u.
Jet2 chain(const Jet2& w, ComplexScalar f0, ComplexScalar f1, ComplexScalar f2);

/// z = alpha*x + beta*y + gamma.
struct AffineMap {
  ComplexScalar alpha{}, beta{}, gamma{};

  static AffineMap y_plus_jx() { return {kJ, 1.0, 0.0}; }
  static AffineMap y_minus_jx() { return {-kJ, 1.0, 0.0}; }
  static AffineMap y_plus_x() { return {1.0, 1.0, 0.0}; }
  static AffineMap y_minus_x() { return {-1.0, 1.0, 0.0}; }
  /// The characteristic invariant y - r*x of the factor (dx + r dy).
  static AffineMap characteristic(ComplexScalar root) { return {-root, 1.0, 0.0}; }

  ComplexScalar operator()(double x, double y) const { return alpha * x + beta * y + gamma; }
  Jet2 jet(double x, double y) const { return {(*this)(x, y), alpha, beta, {}, {}, {}}; }

  /// Parses the built-in names "y+j*x", "y-j*x", "y+x", "y-x" (spaces ignored).
  static AffineMap parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Jet of the composite field e(arg(x, y)). Holomorphic nodes use the
/// complex chain rule; conj/re/im act slot-wise and abs is evaluated as
/// sqrt(re^2 + im^2) with a DomainError at zero.
Jet2 eval_jet(const Expr& e, const AffineMap& arg, double x, double y);

/// Same, with the argument supplied as a jet.
Jet2 eval_jet(const Expr& e, const Jet2& arg);

}  // namespace harmonic

#endif  // HARMONIC_JET_HPP
