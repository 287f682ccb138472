#include "harmonic/bay.hpp"

#include <cmath>
#include <numbers>

#include "harmonic/errors.hpp"

namespace harmonic {

double BaySpec::wavenumber() const { return static_cast<double>(n) * std::numbers::pi / h; }

void BaySpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("bay width h must be positive");
  if (n < 1) throw UsageError("bay mode n must be >= 1");
  if (!(extent() > 0.0)) throw UsageError("bay truncation x_max must be positive");
}

SolutionForm bay_solution(const BaySpec& spec) {
  spec.validate();
  const Expr scaled = Expr::mul(Expr::constant(spec.wavenumber()), Expr::var());
  const Expr f = Expr::mul(Expr::constant(spec.k * kJ), Expr::fun(FunName::Cos, scaled));
  return SolutionForm{f, Expr::constant(0.0), AffineMap::y_plus_jx(), AffineMap::y_minus_jx(), true};
}

double bay_closed_form(const BaySpec& spec, double x, double y) {
  const double c = spec.wavenumber();
  return spec.k * std::sinh(c * x) * std::sin(c * y);
}

Velocity bay_velocity(const BaySpec& spec, Point p) {
  const Jet2 j = bay_solution(spec).jet(p.x, p.y);
  return {j.uy.real(), -j.ux.real()};
}

double bay_divergence(const BaySpec& spec, Point p) {
  const Jet2 j = bay_solution(spec).jet(p.x, p.y);
  // d/dx (Psi_y) + d/dy (-Psi_x)
  return j.uxy.real() - j.uxy.real();
}

std::array<BoundarySegment, 3> bay_walls(const BaySpec& spec) {
  const double h = spec.h;
  const double xm = spec.extent();
  return {{
      {{0.0, 0.0}, {0.0, h}, 0.0},
      {{0.0, 0.0}, {xm, 0.0}, 0.0},
      {{0.0, h}, {xm, h}, 0.0},
  }};
}

SolutionForm hyperbolic_general(const Expr& f, const Expr& g, bool checked) {
  if (checked) {
    if (auto path = first_non_holomorphic(f)) throw NonHolomorphic(*path, "F must be holomorphic");
    if (auto path = first_non_holomorphic(g)) throw NonHolomorphic(*path, "G must be holomorphic");
  }
  // Laplace arguments in (X, Y) are Y + jX and Y - jX. Substituting X = x,
  // Y = jy gives j(y + x) and j(y - x); feeding F(-j w) and G(-j w) instead
  // of F, G strips the common factor j. Both steps are applied to the
  // affine maps so the expressions themselves stay untouched.
  auto to_xy = [](const AffineMap& laplace) {
    return AffineMap{laplace.alpha, laplace.beta * kJ, laplace.gamma};
  };
  auto unscale = [](const AffineMap& m) {
    const ComplexScalar s = -kJ;
    return AffineMap{s * m.alpha, s * m.beta, s * m.gamma};
  };
  const AffineMap f_arg = unscale(to_xy(AffineMap::y_plus_jx()));
  const AffineMap g_arg = unscale(to_xy(AffineMap::y_minus_jx()));
  return SolutionForm{f, g, f_arg, g_arg, true};
}

}  // namespace harmonic
