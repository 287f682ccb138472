#ifndef HARMONIC_OPERATOR_HPP
#define HARMONIC_OPERATOR_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "harmonic/field.hpp"

namespace harmonic {

/// a_xx dxx + a_xy dxy + a_yy dyy + a_x dx + a_y dy + a_0 with constant
/// complex coefficients.
struct LinOp2 {
  ComplexScalar a_xx{}, a_xy{}, a_yy{}, a_x{}, a_y{}, a_0{};

  static LinOp2 laplacian() { return {1.0, 0.0, 1.0, 0.0, 0.0, 0.0}; }
  static LinOp2 wave() { return {1.0, 0.0, -1.0, 0.0, 0.0, 0.0}; }

  bool is_principal() const { return a_x == ComplexScalar{} && a_y == ComplexScalar{} && a_0 == ComplexScalar{}; }

  friend bool operator==(const LinOp2&, const LinOp2&) = default;
};

/// coef_x dx + coef_y dy. Normalized factors have coef_x == 1.
struct FirstOrderFactor {
  ComplexScalar coef_x{1.0, 0.0};
  ComplexScalar coef_y{};

  /// The root r of the normalized factor dx + r dy.
  ComplexScalar root() const { return coef_y / coef_x; }

  friend bool operator==(const FirstOrderFactor&, const FirstOrderFactor&) = default;
};

/// Parses sums of terms like "dxx", "2*dxy", "(1+j)*dx", "-dyy", "1".
/// Throws SyntaxError, or HigherOrderTerm for any other identifier.
LinOp2 parse_operator(std::string_view text);

std::string render_operator(const LinOp2& op);
std::string render_factor(const FirstOrderFactor& f);

ComplexScalar apply(const LinOp2& op, const Jet2& jet);

/// First-order factor applied to a jet; only the value slot is meaningful
/// since a Jet2 carries no third derivatives.
ComplexScalar apply(const FirstOrderFactor& f, const Jet2& jet);

/// Splits the principal part into (dx + r1 dy)(dx + r2 dy) scaled by a_xx,
/// with r1, r2 the roots of a_xx t^2 - a_xy t + a_yy. r1 has the larger
/// imaginary part, ties broken by the larger real part.
std::pair<FirstOrderFactor, FirstOrderFactor> factor_principal(const LinOp2& op);

/// Coefficient-level product f1 * f2 as a second-order operator.
LinOp2 compose(const FirstOrderFactor& f1, const FirstOrderFactor& f2);

struct CommutationReport {
  double coefficient_discrepancy = 0.0;  // |compose(f1,f2) - compose(f2,f1)|
  double jet_discrepancy = 0.0;          // nested application on exact jets
  double fd_discrepancy = 0.0;           // nested central differences, h = 1e-4
  double field_scale = 0.0;              // max |u| over the samples
  bool pass = false;
};

/// max over samples of |f1(f2 u) - f2(f1 u)| by three routes. Passes when
/// the coefficient and jet routes are within 1e-8 (1 + scale) and the
/// finite-difference route within 1e-6 (1 + scale).
CommutationReport check_commutation(const FirstOrderFactor& f1, const FirstOrderFactor& f2, const Field& field,
                                    std::span<const Point> samples);

}  // namespace harmonic

#endif  // HARMONIC_OPERATOR_HPP
