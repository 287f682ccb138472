#ifndef HARMONIC_VERIFY_HPP
#define HARMONIC_VERIFY_HPP

#include <optional>
#include <span>

#include "harmonic/field.hpp"
#include "harmonic/grid.hpp"
#include "harmonic/operator.hpp"
#include "json.hpp"

namespace harmonic {

/// Second-order central stencils: 3-point second derivatives, 4-corner
/// mixed derivative, central first derivatives.
ComplexScalar fd_apply(const LinOp2& op, const PointField& field, Point p, double hx, double hy);
inline ComplexScalar fd_apply(const LinOp2& op, const PointField& field, Point p, double h) {
  return fd_apply(op, field, p, h, h);
}

struct StencilReport {
  GridSpec grid;  // finest level
  double h_x = 0.0;
  double h_y = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::optional<double> boundary_max;
  /// log2 of the coarse/fine max residual ratio; empty with one level or
  /// when the fine residual sits at the round-off floor.
  std::optional<double> convergence_order;
  int levels = 1;
  double coarse_max_residual = 0.0;  // levels == 2 only
  double tolerance = 0.0;            // certification threshold at the finest level
  double roundoff_floor = 0.0;
  bool certified = false;
};

/**
 * Residual statistics of op(u) = 0 over the interior nodes of `grid`, and
 * of its refinement when levels == 2.
 *
 * Certification needs max_residual <= tolerance, where
 *   tolerance = 10 (1 + max|u| + M) max(h_x, h_y)^2
 * and M is a grid estimate of the fourth (third, for first-order terms)
 * derivative magnitudes weighted by the operator coefficients. With two
 * levels the observed order must also be >= 1.5, unless the fine residual
 * is at the round-off floor (stencil reproduces the field exactly).
 */
StencilReport verify_on_grid(const LinOp2& op, const PointField& field, const GridSpec& grid, int levels = 2);

struct BoundarySegment {
  Point from;
  Point to;
  double expected = 0.0;
};

/// max |u - expected| over 256 evenly spaced samples per segment, endpoints included.
double check_boundary(const PointField& field, std::span<const BoundarySegment> segments);

/// {grid, h, max_residual, mean_residual, convergence_order, certified}
nlohmann::json to_json(const StencilReport& report);

}  // namespace harmonic

#endif  // HARMONIC_VERIFY_HPP
