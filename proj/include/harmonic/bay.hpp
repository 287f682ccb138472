#ifndef HARMONIC_BAY_HPP
#define HARMONIC_BAY_HPP

#include <array>
#include <optional>

#include "harmonic/characteristics.hpp"
#include "harmonic/verify.hpp"

namespace harmonic {

/// Stream function in the semi-infinite strip {x >= 0, 0 <= y <= h}, cut at
/// x_max for sampling. Psi vanishes on all three walls.
struct BaySpec {
  double h = 1.0;
  int n = 1;
  std::optional<double> x_max;  // defaults to 3h
  double k = 1.0;

  double extent() const { return x_max.value_or(3.0 * h); }
  /// n pi / h
  double wavenumber() const;
  /// Throws UsageError unless h > 0, n >= 1 and x_max > 0.
  void validate() const;
};

/// F(z) = k j cos(n pi z / h), G = 0, F fed y + jx, real part taken.
SolutionForm bay_solution(const BaySpec& spec);

/// k sinh(n pi x / h) sin(n pi y / h), evaluated directly.
double bay_closed_form(const BaySpec& spec, double x, double y);

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
};

/// (dPsi/dy, -dPsi/dx) from the jet of the constructed solution.
Velocity bay_velocity(const BaySpec& spec, Point p);

/// dvx/dx + dvy/dy from the same jet.
double bay_divergence(const BaySpec& spec, Point p);

/// The walls x = 0, y = 0 and y = h, each with expected value 0.
std::array<BoundarySegment, 3> bay_walls(const BaySpec& spec);

/// Solution of dxx U - dyy U = 0 obtained by mapping the Laplace solution
/// through X = x, Y = jy: F and G end up fed y + x and y - x.
SolutionForm hyperbolic_general(const Expr& f, const Expr& g, bool checked = true);

}  // namespace harmonic

#endif  // HARMONIC_BAY_HPP
