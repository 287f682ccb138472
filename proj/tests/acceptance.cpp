// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "harmonic/bay.hpp"
#include "harmonic/characteristics.hpp"
#include "harmonic/operator.hpp"
#include "harmonic/particular.hpp"
#include "harmonic/verify.hpp"
#include "test_support.hpp"

using namespace harmonic;
using harmonic::testing::C;
using harmonic::testing::phi_suite;
using harmonic::testing::Rng;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

std::string order_text(const StencilReport& r) {
  if (!r.convergence_order) return "null";
  std::ostringstream os;
  os.precision(3);
  os << *r.convergence_order;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void operator_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [f1, f2] = factor_principal(LinOp2::laplacian());
  const LinOp2 back = compose(f1, f2);
  const double elapsed = seconds_since(t0);
  const bool roots = f1.root() == kJ && f2.root() == -kJ;
  const bool exact = back.a_xx == C(1, 0) && back.a_xy == C(0, 0) && back.a_yy == C(1, 0);
  std::ostringstream os;
  os << "roots " << f1.root() << " " << f2.root() << ", recomposition exact=" << exact << ", " << elapsed * 1e3
     << " ms";
  report(1, "Laplacian factorization", roots && exact && elapsed < 1e-3, os.str());
}

void cosine_identity() {
  Rng rng(1001);
  const Expr cos_z = parse_expr("cos(z)");
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
    const C lhs = eval_jet(cos_z, AffineMap::y_plus_jx(), x, y).u;
    const C rhs(std::cosh(x) * std::cos(y), -std::sinh(x) * std::sin(y));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  const double tol = 1e-12 * std::cosh(2.0);
  std::ostringstream os;
  os << "max deviation " << worst << " (tol " << tol << ")";
  report(2, "cos(jx+y) identity", worst <= tol, os.str());
}

void general_harmonicity() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec grid{0, 1, 33, 0, 1, 33};
  int good = 0;
  std::string bad;
  for (const std::string& f : phi_suite())
    for (const std::string& g : phi_suite()) {
      const SolutionForm s = general_solution(LinOp2::laplacian(), parse_expr(f), parse_expr(g), true);
      const StencilReport r = verify_on_grid(LinOp2::laplacian(), s.field().value_fn(), grid, 2);
      const bool ok = r.certified && r.convergence_order && *r.convergence_order >= 1.7 && *r.convergence_order <= 2.3;
      if (ok) {
        ++good;
      } else {
        std::ostringstream os;
        os << " [" << f << "," << g << " certified=" << r.certified << " order=" << order_text(r)
           << " max=" << r.max_residual << "]";
        bad += os.str();
      }
    }
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << good << "/36 pairs certified with order in [1.7, 2.3], " << elapsed << " s";
  if (!bad.empty()) os << "; failing:" << bad;
  report(3, "general solution harmonicity", good == 36 && elapsed < 30.0, os.str());
}

void bay_reproduction() {
  struct Mode {
    int n;
    double h;
  };
  bool ok = true;
  std::ostringstream os;
  Rng rng(1004);
  for (const Mode m : {Mode{1, 1.0}, Mode{2, 1.0}, Mode{3, 0.5}}) {
    const BaySpec spec{m.h, m.n};
    const SolutionForm s = bay_solution(spec);
    const double c = spec.wavenumber();
    double closed = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double x = rng.uniform(0, spec.extent()), y = rng.uniform(0, m.h);
      const double ref = std::sinh(c * x) * std::sin(c * y);
      // Relative to the local amplitude; the product itself crosses zero.
      closed = std::max(closed, std::abs(s.value(x, y).real() - ref) / std::cosh(c * x));
    }
    const auto walls = bay_walls(spec);
    const double boundary = check_boundary(s.field().value_fn(), walls);
    const double boundary_tol = 1e-8 * (1 + std::sinh(c * spec.extent()));
    const GridSpec grid{0.05, spec.extent(), 129, 0.05, m.h - 0.05, 65};
    const StencilReport r = verify_on_grid(LinOp2::laplacian(), s.field().value_fn(), grid, 2);
    const bool mode_ok = closed <= 1e-12 && boundary <= boundary_tol && r.certified;
    ok = ok && mode_ok;
    os << " (n=" << m.n << ",h=" << m.h << ") rel=" << closed << " boundary=" << boundary << "/" << boundary_tol
       << " certified=" << r.certified << " order=" << order_text(r) << ";";
  }
  report(4, "bay reproduction", ok, os.str());
}

void nonhomogeneous() {
  std::ostringstream os;
  const Expr gz = parse_expr("z");
  const ParticularSolution ps = build_particular(gz);
  double closed = 0.0, res_z = 0.0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double x = -1 + 0.1 * i, y = -1 + 0.1 * j;
      closed = std::max({closed, std::abs(ps.a(x, y) - x * y / 2), std::abs(ps.b(x, y) - (y * y - x * x) / 4)});
      res_z = std::max(res_z, std::abs(nonhomogeneous_residual(ps.field(), gz, x, y)));
    }
  const Expr ge = parse_expr("exp(z)");
  const ParticularSolution pe = build_particular(ge, QuadratureSpec{{0, 0}, 64});
  Rng rng(1005);
  double res_e = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    res_e = std::max(res_e, std::abs(nonhomogeneous_residual(pe.field(), ge, x, y)));
  }
  // Reference u_p = (j/2)(exp(y - jx) - 1).
  auto err_at = [&](std::size_t panels) {
    const ParticularSolution p = build_particular(ge, QuadratureSpec{{0, 0}, panels});
    double worst = 0.0;
    for (const Point q : {Point{0.8, 0.9}, Point{-1, 1}, Point{0.3, -0.7}})
      worst = std::max(worst, std::abs(p.value(q.x, q.y) - 0.5 * kJ * (std::exp(C(q.y, -q.x)) - 1.0)));
    return worst;
  };
  const double e64 = err_at(64), e128 = err_at(128);
  const bool reduce = e128 <= 1e-12 || e64 / e128 >= 8.0;
  const bool ok = ps.is_exact() && closed <= 1e-10 && res_z <= 1e-10 && !pe.is_exact() && res_e <= 1e-6 && reduce;
  os << "g=z closed-form gap " << closed << ", residual " << res_z << "; g=exp(z) residual " << res_e
     << ", error 64->128 panels " << e64 << " -> " << e128 << " (x" << e64 / e128 << ")";
  report(5, "nonhomogeneous construction", ok, os.str());
}

void path_independence() {
  double worst = 0.0;
  for (const char* g : {"z", "z^2", "j", "exp(z)"}) {
    const ParticularSolution ps = build_particular(parse_expr(g));
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double x = -1 + 0.1 * i, y = -1 + 0.1 * j;
        const C a = ps.quadrature(x, y, QuadraturePath::XThenY);
        const C b = ps.quadrature(x, y, QuadraturePath::YThenX);
        worst = std::max(worst, std::abs(a - b) / (1 + std::abs(a)));
      }
  }
  std::ostringstream os;
  os << "max relative gap " << worst << " (tol 1e-08)";
  report(6, "quadrature path independence", worst <= 1e-8, os.str());
}

void hyperbolic_equivalence() {
  Rng rng(1007);
  double gap = 0.0;
  int good = 0;
  std::string bad;
  // Unequal steps: on a square grid the stencil reproduces every travelling wave exactly.
  const GridSpec grid{0, 1, 33, 0, 1, 25};
  for (const std::string& f : phi_suite())
    for (const std::string& g : phi_suite()) {
      const SolutionForm a = hyperbolic_general(parse_expr(f), parse_expr(g));
      const SolutionForm b = general_solution(LinOp2::wave(), parse_expr(f), parse_expr(g), true);
      for (int k = 0; k < 100; ++k) {
        const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
        const C va = a.value(x, y);
        gap = std::max(gap, std::abs(va - b.value(x, y)) / (1 + std::abs(va)));
      }
      const StencilReport r = verify_on_grid(LinOp2::wave(), a.field().value_fn(), grid, 2);
      const bool ok = r.certified && r.convergence_order && std::abs(*r.convergence_order - 2.0) <= 0.3;
      if (ok) {
        ++good;
      } else {
        std::ostringstream os;
        os << " [" << f << "," << g << " certified=" << r.certified << " order=" << order_text(r) << "]";
        bad += os.str();
      }
    }
  std::ostringstream os;
  os << "max gap " << gap << "; " << good << "/36 pairs certified at order 2";
  if (!bad.empty()) os << "; failing:" << bad;
  report(7, "hyperbolic equivalence", gap <= 1e-12 && good == 36, os.str());
}

void negative_control() {
  const PointField u = [](double x, double y) { return C(x * x + y * y, 0.0); };
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n : {10, 12, 17, 33, 64, 65, 129})
    for (int levels : {1, 2}) {
      const StencilReport r = verify_on_grid(LinOp2::laplacian(), u, GridSpec{0, 1, n, 0, 1, n}, levels);
      const bool rejected = r.max_residual >= 3.9 && r.max_residual <= 4.1 && !r.certified;
      ok = ok && rejected;
      if (!rejected) os << " grid " << n << " levels " << levels << " max=" << r.max_residual;
    }
  report(8, "non-holomorphic negative control", ok, ok ? "rejected on every grid from 10x10 to 129x129" : os.str());
}

void characteristic_constancy() {
  Rng rng(1009);
  double worst = 0.0;
  for (const std::string& phi : phi_suite()) {
    // The invariant fed to G for the Laplacian belongs to the root j.
    const SolutionForm s = general_solution(LinOp2::laplacian(), parse_expr("0"), parse_expr(phi), false);
    for (int k = 0; k < 20; ++k) {
      const C c(rng.uniform(-1, 1), rng.uniform(-1, 1));
      C first{};
      double spread = 0.0, mag = 0.0;
      bool have = false;
      for (double x : {0.0, 0.5, 1.0, 2.0}) {
        const C y = kJ * x + c;
        const C v = eval_expr(s.g_expr, s.g_arg.alpha * x + s.g_arg.beta * y + s.g_arg.gamma);
        if (!have) first = v;
        have = true;
        spread = std::max(spread, std::abs(v - first));
        mag = std::max(mag, std::abs(v));
      }
      worst = std::max(worst, spread / (1 + mag));
    }
  }
  std::ostringstream os;
  os << "max relative spread " << worst << " (tol 1e-10)";
  report(9, "characteristic constancy", worst <= 1e-10, os.str());
}

}  // namespace

int main() {
  setenv("HARMONIC_THREADS", "1", 1);
  operator_identity();
  cosine_identity();
  general_harmonicity();
  bay_reproduction();
  nonhomogeneous();
  path_independence();
  hyperbolic_equivalence();
  negative_control();
  characteristic_constancy();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
