#include "harmonic/particular.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

constexpr double kProbeStep = 1e-4;
constexpr std::size_t kProbePanels = 256;

ComplexScalar rhs_at(const Expr& g, double x, double y) { return eval_expr(g, AffineMap::y_minus_jx()(x, y)); }

}  // namespace

void QuadratureSpec::validate() const {
  if (panels < 2 || panels % 2 != 0) throw UsageError("quadrature panels must be even and >= 2");
}

std::size_t QuadratureSpec::panels_for(double length) const {
  const double want = std::ceil(static_cast<double>(panels) * std::abs(length));
  auto n = static_cast<std::size_t>(std::max(2.0, want));
  return n + (n % 2);
}

std::pair<RealField, RealField> split_rhs(const Expr& g, bool checked) {
  if (checked)
    if (auto path = first_non_holomorphic(g)) throw NonHolomorphic(*path, "right-hand side must be holomorphic");
  return {[g](double x, double y) { return rhs_at(g, x, y).real(); },
          [g](double x, double y) { return rhs_at(g, x, y).imag(); }};
}

ComplexScalar simpson(const std::function<ComplexScalar(double)>& f, double lo, double hi, std::size_t panels) {
  if (lo == hi) return {};
  const double h = (hi - lo) / static_cast<double>(panels);
  ComplexScalar odd{}, even{};
  for (std::size_t k = 1; k < panels; ++k) {
    const ComplexScalar v = f(lo + static_cast<double>(k) * h);
    (k % 2 == 1 ? odd : even) += v;
  }
  return (f(lo) + f(hi) + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

ComplexScalar ParticularSolution::quadrature(double x, double y, QuadraturePath path, std::size_t n_first,
                                             std::size_t n_second) const {
  const double x0 = spec_.base.x;
  const double y0 = spec_.base.y;
  const Expr& g = rhs_;
  // Along x the increment of a + jb is G/2 ds; along y it is jG/2 dt.
  if (path == QuadraturePath::XThenY) {
    const ComplexScalar along_x = simpson([&](double s) { return rhs_at(g, s, y0); }, x0, x, n_first);
    const ComplexScalar along_y = simpson([&](double t) { return rhs_at(g, x, t); }, y0, y, n_second);
    return 0.5 * along_x + 0.5 * kJ * along_y;
  }
  const ComplexScalar along_y = simpson([&](double t) { return rhs_at(g, x0, t); }, y0, y, n_first);
  const ComplexScalar along_x = simpson([&](double s) { return rhs_at(g, s, y); }, x0, x, n_second);
  return 0.5 * kJ * along_y + 0.5 * along_x;
}

ComplexScalar ParticularSolution::quadrature(double x, double y, QuadraturePath path) const {
  const std::size_t nx = spec_.panels_for(x - spec_.base.x);
  const std::size_t ny = spec_.panels_for(y - spec_.base.y);
  return path == QuadraturePath::XThenY ? quadrature(x, y, path, nx, ny) : quadrature(x, y, path, ny, nx);
}

ComplexScalar ParticularSolution::value(double x, double y) const {
  if (exact_) return eval_expr(*exact_, AffineMap::y_minus_jx()(x, y));
  return quadrature(x, y, spec_.path);
}

Jet2 ParticularSolution::jet(double x, double y) const {
  if (exact_) return eval_jet(*exact_, AffineMap::y_minus_jx(), x, y);
  // Panel counts are frozen at the centre so every probe integrates the
  // same smooth Simpson approximation.
  const std::size_t nx = spec_.panels_for(x - spec_.base.x);
  const std::size_t ny = spec_.panels_for(y - spec_.base.y);
  const QuadraturePath path = spec_.path;
  auto u = [&](double px, double py) {
    return path == QuadraturePath::XThenY ? quadrature(px, py, path, nx, ny) : quadrature(px, py, path, ny, nx);
  };
  const double h = kProbeStep;
  const ComplexScalar c = u(x, y);
  const ComplexScalar e = u(x + h, y), w = u(x - h, y), n = u(x, y + h), s = u(x, y - h);
  const ComplexScalar ne = u(x + h, y + h), nw = u(x - h, y + h), se = u(x + h, y - h), sw = u(x - h, y - h);
  return {
      c,
      (e - w) / (2.0 * h),
      (n - s) / (2.0 * h),
      (e - 2.0 * c + w) / (h * h),
      (ne - nw - se + sw) / (4.0 * h * h),
      (n - 2.0 * c + s) / (h * h),
  };
}

Field ParticularSolution::field() const {
  const ParticularSolution self = *this;
  return Field([self](double x, double y) { return self.value(x, y); },
               [self](double x, double y) { return self.jet(x, y); });
}

ComplexScalar ParticularSolution::assemble_A(ComplexScalar z) const { return value(-z.imag(), z.real()); }

ParticularSolution build_particular(const Expr& g, const QuadratureSpec& spec, bool checked) {
  spec.validate();
  if (checked)
    if (auto path = first_non_holomorphic(g)) throw NonHolomorphic(*path, "right-hand side must be holomorphic");

  if (auto poly = as_polynomial(g)) {
    // (dx - j dy) A(y - jx) = -2j A'(y - jx), so A' = (j/2) g.
    Expr anti = Expr::constant(0.0);
    for (std::size_t k = 0; k < poly->size(); ++k) {
      const ComplexScalar c = 0.5 * kJ * (*poly)[k] / static_cast<double>(k + 1);
      if (c == ComplexScalar{}) continue;
      const Expr term = Expr::mul(Expr::constant(c), Expr::pow(Expr::var(), static_cast<int>(k + 1)));
      anti = anti.is_const() && anti.value() == ComplexScalar{} ? term : Expr::add(anti, term);
    }
    const ComplexScalar w0 = AffineMap::y_minus_jx()(spec.base.x, spec.base.y);
    const ComplexScalar offset = eval_expr(anti, w0);
    if (offset != ComplexScalar{}) anti = Expr::sub(anti, Expr::constant(offset));
    return ParticularSolution(g, spec, anti);
  }

  ParticularSolution ps(g, spec, std::nullopt);
  // Probes run at a fixed fine density so that coarse user specs are not
  // mistaken for an incompatible right-hand side.
  QuadratureSpec probe_spec = spec;
  probe_spec.panels = std::max<std::size_t>(spec.panels, kProbePanels);
  const ParticularSolution probe(g, probe_spec, std::nullopt);
  const std::array<Point, 4> probes{{{1.0, 1.0}, {-1.0, 0.5}, {0.5, -1.0}, {-0.7, -0.3}}};
  for (const Point& p : probes) {
    const double x = spec.base.x + p.x;
    const double y = spec.base.y + p.y;
    const ComplexScalar xy = probe.quadrature(x, y, QuadraturePath::XThenY);
    const ComplexScalar yx = probe.quadrature(x, y, QuadraturePath::YThenX);
    const double gap = std::abs(xy - yx);
    if (gap > 1e-6 * (1.0 + std::abs(xy)))
      throw IncompatibleSystem("path orders disagree by " + std::to_string(gap) + " at (" + std::to_string(x) + "," +
                               std::to_string(y) + "); the right-hand side is not holomorphic");
  }
  return ps;
}

Field solve_nonhomogeneous(const Expr& g, const Expr& f_hom, const QuadratureSpec& spec, bool checked) {
  if (checked)
    if (auto path = first_non_holomorphic(f_hom)) throw NonHolomorphic(*path, "homogeneous part must be holomorphic");
  const ParticularSolution ps = build_particular(g, spec, checked);
  const AffineMap arg = AffineMap::y_plus_jx();
  const Field hom([f_hom, arg](double x, double y) { return eval_expr(f_hom, arg(x, y)); },
                  [f_hom, arg](double x, double y) { return eval_jet(f_hom, arg, x, y); });
  return hom + ps.field();
}

ComplexScalar nonhomogeneous_residual(const Field& u, const Expr& g, double x, double y) {
  const Jet2 j = u.jet(x, y);
  return (j.ux - kJ * j.uy) - rhs_at(g, x, y);
}

}  // namespace harmonic
