#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "harmonic/bay.hpp"
#include "harmonic/characteristics.hpp"
#include "harmonic/errors.hpp"
#include "harmonic/operator.hpp"
#include "harmonic/verify.hpp"
#include "test_support.hpp"

using namespace harmonic;
using harmonic::testing::C;
using harmonic::testing::Rng;

namespace {

const double kPi = std::numbers::pi;

C sum_of_squares(double x, double y) { return {x * x + y * y, 0.0}; }

}  // namespace

TEST(FdApply, ExactOnHarmonicQuadratic) {
  const PointField u = [](double x, double y) { return C(x * x - y * y, 0.0); };
  for (const Point p : {Point{0, 0}, Point{1.3, -0.4}, Point{-7, 3}})
    EXPECT_LE(std::abs(fd_apply(LinOp2::laplacian(), u, p, 1e-2)), 1e-10);
}

TEST(FdApply, SumOfSquaresGivesFour) {
  for (const Point p : {Point{0, 0}, Point{0.5, 0.25}, Point{-2, 1}})
    EXPECT_NEAR(std::abs(fd_apply(LinOp2::laplacian(), sum_of_squares, p, 1e-2) - 4.0), 0.0, 1e-9);
}

TEST(FdApply, BayModeConvergesAtSecondOrder) {
  const PointField u = [](double x, double y) { return C(std::sinh(kPi * x) * std::sin(kPi * y), 0.0); };
  const Point p{0.5, 0.5};
  const double h = 1.0 / 64;
  const double r1 = std::abs(fd_apply(LinOp2::laplacian(), u, p, h));
  const double r2 = std::abs(fd_apply(LinOp2::laplacian(), u, p, h / 2));
  EXPECT_LE(r1, 10 * h * h * std::pow(kPi, 4) * std::abs(u(p.x, p.y)));
  EXPECT_NEAR(r1 / r2, 4.0, 0.2);
}

TEST(FdApply, StencilExactOnCubics) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    double c[10];
    for (double& v : c) v = rng.uniform(-3, 3);
    const PointField u = [c](double x, double y) {
      return C(c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y + c[6] * x * x * x +
                   c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y,
               0.0);
    };
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    // Exact Laplacian of the cubic.
    const double lap = 2 * c[3] + 2 * c[5] + 6 * c[6] * x + 2 * c[7] * y + 2 * c[8] * x + 6 * c[9] * y;
    EXPECT_LE(std::abs(fd_apply(LinOp2::laplacian(), u, {x, y}, 1e-2) - lap), 1e-10);
    // Mixed and first-order stencils are exact on quadratics.
    const double xy = c[4] + 2 * c[7] * x + 2 * c[8] * y;
    const PointField q = [c](double x, double y) {
      return C(c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y, 0.0);
    };
    const C got = fd_apply(parse_operator("dxy + dx"), q, {x, y}, 1e-2);
    EXPECT_LE(std::abs(got - (c[4] + c[1] + 2 * c[3] * x + c[4] * y)), 1e-10);
    (void)xy;
  }
}

TEST(FdApply, OracleAgreement) {
  Rng rng(9);
  for (const LinOp2& op : {LinOp2::laplacian(), parse_operator("dxx + 0.5*dxy - 2*dyy + j*dx + dy - 1")}) {
    for (const std::string& phi : harmonic::testing::phi_suite()) {
      const Expr e = parse_expr(phi);
      const Point p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const Jet2 j = eval_jet(e, AffineMap::y_plus_jx(), p.x, p.y);
      const PointField u = [e](double x, double y) { return eval_jet(e, AffineMap::y_plus_jx(), x, y).u; };
      double errs[3];
      int k = 0;
      for (double h : {1e-1, 5e-2, 2.5e-2}) errs[k++] = std::abs(fd_apply(op, u, p, h) - apply(op, j));
      for (int m = 0; m < 2; ++m) {
        if (errs[m] < 1e-9) continue;  // polynomial below its stencil's degree
        EXPECT_NEAR(errs[m] / errs[m + 1], 4.0, 0.6) << phi;
      }
    }
  }
}

TEST(VerifyOnGrid, ExponentialConvergesAtSecondOrder) {
  const SolutionForm s = general_solution(LinOp2::laplacian(), parse_expr("exp(z)"), parse_expr("0"), true);
  const StencilReport rep = verify_on_grid(LinOp2::laplacian(), s.field().value_fn(), GridSpec{0, 1, 33, 0, 1, 33}, 2);
  ASSERT_TRUE(rep.convergence_order);
  EXPECT_NEAR(*rep.convergence_order, 2.0, 0.3);
  EXPECT_TRUE(rep.certified);
  EXPECT_EQ(rep.grid, (GridSpec{0, 1, 65, 0, 1, 65}));
  EXPECT_DOUBLE_EQ(rep.h_x, 1.0 / 64);
  EXPECT_GE(rep.max_residual, rep.mean_residual);
  EXPECT_GE(rep.mean_residual, 0.0);
}

TEST(VerifyOnGrid, ZeroField) {
  const StencilReport rep =
      verify_on_grid(LinOp2::laplacian(), [](double, double) { return C{}; }, GridSpec{0, 1, 9, 0, 1, 9}, 2);
  EXPECT_EQ(rep.max_residual, 0.0);
  EXPECT_FALSE(rep.convergence_order);
  EXPECT_TRUE(rep.certified);
}

TEST(VerifyOnGrid, SumOfSquaresIsRejected) {
  const StencilReport rep = verify_on_grid(LinOp2::laplacian(), sum_of_squares, GridSpec{0, 1, 17, 0, 1, 17}, 2);
  EXPECT_NEAR(rep.max_residual, 4.0, 1e-6);
  ASSERT_TRUE(rep.convergence_order);
  EXPECT_NEAR(*rep.convergence_order, 0.0, 1e-3);
  EXPECT_FALSE(rep.certified);
}

TEST(VerifyOnGrid, DetectionPowerOnManyGrids) {
  for (std::size_t n : {3, 5, 9, 10, 17, 33, 64}) {
    // Two levels never certify: the residual does not shrink.
    const GridSpec wide{-2, 3, n, -1, 0.5, n + 2};
    const StencilReport two = verify_on_grid(LinOp2::laplacian(), sum_of_squares, wide, 2);
    EXPECT_GE(two.max_residual, 3.9);
    EXPECT_FALSE(two.certified) << n;
    // A single level relies on the tolerance alone, which rejects on the unit square past 9x9.
    const StencilReport one = verify_on_grid(LinOp2::laplacian(), sum_of_squares, GridSpec{0, 1, n, 0, 1, n}, 1);
    EXPECT_GE(one.max_residual, 3.9);
    if (n > 9) {
      EXPECT_FALSE(one.certified) << n;
    }
  }
}

TEST(VerifyOnGrid, SingleLevelHasNoOrder) {
  const SolutionForm s = general_solution(LinOp2::laplacian(), parse_expr("sin(z)"), parse_expr("0"), true);
  const StencilReport rep = verify_on_grid(LinOp2::laplacian(), s.field().value_fn(), GridSpec{0, 1, 9, 0, 1, 9}, 1);
  EXPECT_FALSE(rep.convergence_order);
  EXPECT_EQ(rep.levels, 1);
  EXPECT_TRUE(rep.certified);
}

TEST(VerifyOnGrid, Errors) {
  const PointField u = [](double, double) { return C{}; };
  EXPECT_THROW(verify_on_grid(LinOp2::laplacian(), u, GridSpec{0, 1, 2, 0, 1, 5}, 1), UsageError);
  EXPECT_THROW(verify_on_grid(LinOp2::laplacian(), u, GridSpec{0, 1, 5, 0, 1, 5}, 3), UsageError);
  const PointField pole = [](double x, double y) { return eval_expr(parse_expr("1/z"), C(y, x)); };
  EXPECT_THROW(verify_on_grid(LinOp2::laplacian(), pole, GridSpec{0, 1, 5, 0, 1, 5}, 1), DomainError);
}

TEST(CheckBoundary, BayWalls) {
  const BaySpec spec;
  const PointField psi = bay_solution(spec).field().value_fn();
  const BoundarySegment left{{0, 0}, {0, 1}, 0.0};
  EXPECT_EQ(check_boundary(psi, std::span<const BoundarySegment>(&left, 1)), 0.0);
  const BoundarySegment top{{0, 1}, {3, 1}, 0.0};
  EXPECT_LE(check_boundary(psi, std::span<const BoundarySegment>(&top, 1)), 1e-8);
  const BoundarySegment seg{{0, 0}, {1, 1}, 0.0};
  EXPECT_EQ(check_boundary([](double, double) { return C(1.0, 0.0); }, std::span<const BoundarySegment>(&seg, 1)),
            1.0);
}

TEST(Report, JsonFields) {
  const StencilReport rep = verify_on_grid(LinOp2::laplacian(), sum_of_squares, GridSpec{0, 1, 5, 0, 1, 5}, 1);
  const nlohmann::json j = to_json(rep);
  EXPECT_EQ(j.size(), 6u);
  for (const char* key : {"grid", "h", "max_residual", "mean_residual", "convergence_order", "certified"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["convergence_order"].is_null());
  EXPECT_EQ(j["grid"], "0:1:5,0:1:5");
  EXPECT_EQ(j["certified"], false);
}

TEST(GridSpec, ParseAndRefine) {
  const GridSpec g = GridSpec::parse("0:1:17,-0.5:2:9");
  EXPECT_EQ(g, (GridSpec{0, 1, 17, -0.5, 2, 9}));
  EXPECT_EQ(GridSpec::parse(g.to_string()), g);
  EXPECT_EQ(g.refined().nx, 33u);
  EXPECT_EQ(g.x(16), 1.0);
  EXPECT_THROW(GridSpec::parse("0:1:1,0:1:5"), UsageError);
  EXPECT_THROW(GridSpec::parse("0:1:5"), UsageError);
  EXPECT_THROW(GridSpec::parse("1:0:5,0:1:5"), UsageError);
}
