#include "harmonic/characteristics.hpp"

#include <cmath>
#include <string>

#include "harmonic/errors.hpp"
#include "harmonic/parallel.hpp"

namespace harmonic {

namespace {

void require_holomorphic(const Expr& e, const char* role) {
  if (auto path = first_non_holomorphic(e)) {
    throw NonHolomorphic(*path, std::string(role) + " '" + render(e) +
                                    "' is not complex-differentiable; a field built from it is not constant "
                                    "along the complex characteristics, so the factor does not annihilate it");
  }
}

}  // namespace

ComplexScalar SolutionForm::value(double x, double y) const {
  const ComplexScalar v = eval_expr(f_expr, f_arg(x, y)) + eval_expr(g_expr, g_arg(x, y));
  return take_real ? ComplexScalar{v.real(), 0.0} : v;
}

Jet2 SolutionForm::jet(double x, double y) const {
  const Jet2 j = eval_jet(f_expr, f_arg, x, y) + eval_jet(g_expr, g_arg, x, y);
  return take_real ? j.real_part() : j;
}

Field SolutionForm::field() const {
  const SolutionForm self = *this;
  return Field([self](double x, double y) { return self.value(x, y); },
               [self](double x, double y) { return self.jet(x, y); });
}

Field solve_first_order(const FirstOrderFactor& factor, const Expr& phi, bool checked) {
  if (factor.coef_x == ComplexScalar{}) throw DegenerateLeading();
  if (checked) require_holomorphic(phi, "phi");
  const AffineMap arg = AffineMap::characteristic(factor.root());
  return Field([phi, arg](double x, double y) { return eval_expr(phi, arg(x, y)); },
               [phi, arg](double x, double y) { return eval_jet(phi, arg, x, y); });
}

SolutionForm general_solution(const LinOp2& op, const Expr& f, const Expr& g, bool take_real, bool checked) {
  const auto [first, second] = factor_principal(op);
  const ComplexScalar r1 = first.root();
  const ComplexScalar r2 = second.root();
  if (std::abs(r1 - r2) <= 1e-12 * (1.0 + std::abs(r1))) throw DegenerateRoots();
  if (checked) {
    require_holomorphic(f, "F");
    require_holomorphic(g, "G");
  }
  return SolutionForm{f, g, AffineMap::characteristic(r2), AffineMap::characteristic(r1), take_real};
}

GridSamples evaluate_on_grid(const Field& field, const GridSpec& grid, bool with_jets) {
  grid.validate();
  GridSamples out{grid, std::vector<ComplexScalar>(grid.size()), {}};
  if (with_jets) out.jets.resize(grid.size());
  parallel_for(grid.ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      try {
        if (with_jets) {
          out.jets[k] = field.jet(grid.x(i), grid.y(j));
          out.values[k] = out.jets[k].u;
        } else {
          out.values[k] = field.value(grid.x(i), grid.y(j));
        }
      } catch (const DomainError& e) {
        throw DomainError(e.path(), e.detail() + " at grid index (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
      }
    }
  });
  return out;
}

GridSamples evaluate_on_grid(const SolutionForm& sol, const GridSpec& grid, bool with_jets) {
  return evaluate_on_grid(sol.field(), grid, with_jets);
}

}  // namespace harmonic
