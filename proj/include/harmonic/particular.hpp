#ifndef HARMONIC_PARTICULAR_HPP
#define HARMONIC_PARTICULAR_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

#include "harmonic/field.hpp"

namespace harmonic {

enum class QuadraturePath { XThenY, YThenX };

/// Composite Simpson over axis-aligned paths from `base`. `panels` is the
/// panel density per unit length; each segment gets at least 2 panels and
/// always an even count.
struct QuadratureSpec {
  Point base{0.0, 0.0};
  std::size_t panels = 64;
  QuadraturePath path = QuadraturePath::XThenY;

  /// Throws UsageError unless panels is even and >= 2.
  void validate() const;
  std::size_t panels_for(double length) const;
};

using RealField = std::function<double(double, double)>;

/// G_R(x, y) = Re g(y - jx) and G_I(x, y) = Im g(y - jx).
std::pair<RealField, RealField> split_rhs(const Expr& g, bool checked = true);

/// Composite Simpson of f over [lo, hi] with an even number of panels.
ComplexScalar simpson(const std::function<ComplexScalar(double)>& f, double lo, double hi, std::size_t panels);

/**
 * Particular solution u_p = a + jb of (dx - j dy) u = g(y - jx) obtained
 * from the split
 *
 *   a_x =  G_R / 2,   a_y = -G_I / 2,
 *   b_x =  G_I / 2,   b_y =  G_R / 2,
 *
 * integrated from the base point, where a = b = 0. Polynomial right-hand
 * sides use the closed-form antiderivative; everything else is integrated
 * numerically and differentiated by central differences (h = 1e-4).
 */
class ParticularSolution {
 public:
  const Expr& rhs() const { return rhs_; }
  const QuadratureSpec& spec() const { return spec_; }
  /// The exact antiderivative when the polynomial fast path applies.
  const std::optional<Expr>& exact_antiderivative() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  ComplexScalar value(double x, double y) const;
  double a(double x, double y) const { return value(x, y).real(); }
  double b(double x, double y) const { return value(x, y).imag(); }
  Jet2 jet(double x, double y) const;
  Field field() const;

  /// Numeric quadrature along an explicit path, ignoring the fast path.
  ComplexScalar quadrature(double x, double y, QuadraturePath path) const;

  /// A(z) = a(-Im z, Re z) + j b(-Im z, Re z), so that A(y - jx) = u_p(x, y).
  ComplexScalar assemble_A(ComplexScalar z) const;

 private:
  friend ParticularSolution build_particular(const Expr& g, const QuadratureSpec& spec, bool checked);
  ParticularSolution(Expr g, QuadratureSpec spec, std::optional<Expr> exact)
      : rhs_(std::move(g)), spec_(spec), exact_(std::move(exact)) {}

  ComplexScalar quadrature(double x, double y, QuadraturePath path, std::size_t n_first,
                           std::size_t n_second) const;

  Expr rhs_;
  QuadratureSpec spec_;
  std::optional<Expr> exact_;
};

/// Throws NonHolomorphic (when checked), UsageError for a bad spec,
/// IncompatibleSystem when the two path orders disagree beyond 1e-6 scale
/// at the probe points, and DomainError from g.
ParticularSolution build_particular(const Expr& g, const QuadratureSpec& spec = {}, bool checked = true);

/// u = F(y + jx) + u_p.
Field solve_nonhomogeneous(const Expr& g, const Expr& f_hom, const QuadratureSpec& spec = {}, bool checked = true);

/// (dx - j dy) u - g(y - jx) at a point, from the jet of u.
ComplexScalar nonhomogeneous_residual(const Field& u, const Expr& g, double x, double y);

}  // namespace harmonic

#endif  // HARMONIC_PARTICULAR_HPP
