#ifndef HARMONIC_CHARACTERISTICS_HPP
#define HARMONIC_CHARACTERISTICS_HPP

#include <optional>
#include <vector>

#include "harmonic/field.hpp"
#include "harmonic/grid.hpp"
#include "harmonic/operator.hpp"

namespace harmonic {

/**
 * u(x, y) = F(f_arg(x, y)) + G(g_arg(x, y)), or its real part when
 * take_real is set.
 *
 * For the Laplacian the arguments are y + jx and y - jx. In general each
 * argument is the characteristic invariant y - r x of one factor root r.
 */
struct SolutionForm {
  Expr f_expr;
  Expr g_expr;
  AffineMap f_arg = AffineMap::y_plus_jx();
  AffineMap g_arg = AffineMap::y_minus_jx();
  bool take_real = true;

  ComplexScalar value(double x, double y) const;
  Jet2 jet(double x, double y) const;
  Field field() const;
};

/// u = phi(y - r x) for the factor dx + r dy (normalized on entry). Throws
/// NonHolomorphic for conj/re/im/abs unless `checked` is false.
Field solve_first_order(const FirstOrderFactor& factor, const Expr& phi, bool checked = true);

/// Two-family solution of a principal operator: F is fed the invariant of
/// the second root and G that of the first, giving F(y + jx) + G(y - jx) for
/// the Laplacian and F(y + x) + G(y - x) for dxx - dyy. Throws
/// DegenerateRoots when the roots coincide.
SolutionForm general_solution(const LinOp2& op, const Expr& f, const Expr& g, bool take_real, bool checked = true);

struct GridSamples {
  GridSpec grid;
  std::vector<ComplexScalar> values;  // row-major, x fastest
  std::vector<Jet2> jets;             // empty unless requested
};

/// Samples a field on every grid node. DomainError messages carry the grid index.
GridSamples evaluate_on_grid(const Field& field, const GridSpec& grid, bool with_jets = false);
GridSamples evaluate_on_grid(const SolutionForm& sol, const GridSpec& grid, bool with_jets = false);

}  // namespace harmonic

#endif  // HARMONIC_CHARACTERISTICS_HPP
