#include "harmonic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "harmonic/errors.hpp"
#include "harmonic/parallel.hpp"

namespace harmonic {

namespace {

constexpr double kCertifyConstant = 10.0;
constexpr double kMinOrder = 1.5;
constexpr double kFloorFactor = 64.0;

// Neighbourhood values around a node; names are compass directions with +x east, +y north.
struct Stencil9 {
  ComplexScalar c, e, w, n, s, ne, nw, se, sw;
};

ComplexScalar apply_stencil(const LinOp2& op, const Stencil9& v, double hx, double hy) {
  ComplexScalar r = op.a_xx * (v.e - 2.0 * v.c + v.w) / (hx * hx) + op.a_yy * (v.n - 2.0 * v.c + v.s) / (hy * hy);
  if (op.a_xy != ComplexScalar{}) r += op.a_xy * (v.ne - v.nw - v.se + v.sw) / (4.0 * hx * hy);
  if (op.a_x != ComplexScalar{}) r += op.a_x * (v.e - v.w) / (2.0 * hx);
  if (op.a_y != ComplexScalar{}) r += op.a_y * (v.n - v.s) / (2.0 * hy);
  if (op.a_0 != ComplexScalar{}) r += op.a_0 * v.c;
  return r;
}

struct LevelStats {
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double max_abs = 0.0;
  double derivative_scale = 0.0;
  double floor = 0.0;
  double tolerance = 0.0;
};

LevelStats run_level(const LinOp2& op, const PointField& field, const GridSpec& g) {
  if (g.nx < 3 || g.ny < 3) throw UsageError("verification grid needs at least 3x3 nodes");
  std::vector<ComplexScalar> u(g.size());
  parallel_for(g.ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      try {
        u[g.index(i, j)] = field(g.x(i), g.y(j));
      } catch (const DomainError& e) {
        throw DomainError(e.path(), e.detail() + " at grid index (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
      }
    }
  });
  const double hx = g.hx();
  const double hy = g.hy();
  auto at = [&](std::size_t i, std::size_t j) { return u[g.index(i, j)]; };

  LevelStats st;
  for (const auto& v : u) st.max_abs = std::max(st.max_abs, std::abs(v));

  // Residuals: deterministic reduction in index order.
  std::vector<double> res((g.nx - 2) * (g.ny - 2));
  parallel_for(g.ny - 2, [&](std::size_t jj) {
    const std::size_t j = jj + 1;
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const Stencil9 s{at(i, j),         at(i + 1, j),     at(i - 1, j),     at(i, j + 1),    at(i, j - 1),
                       at(i + 1, j + 1), at(i - 1, j + 1), at(i + 1, j - 1), at(i - 1, j - 1)};
      res[jj * (g.nx - 2) + (i - 1)] = std::abs(apply_stencil(op, s, hx, hy));
    }
  });
  double sum = 0.0;
  for (double r : res) {
    st.max_residual = std::max(st.max_residual, r);
    sum += r;
  }
  st.mean_residual = res.empty() ? 0.0 : sum / static_cast<double>(res.size());

  // Derivative scale from undivided differences along each axis.
  const double cxx = std::abs(op.a_xx) + std::abs(op.a_xy);
  const double cyy = std::abs(op.a_yy) + std::abs(op.a_xy);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      double m = 0.0;
      if (i >= 2 && i + 2 < g.nx) {
        const double d4 = std::abs(at(i - 2, j) - 4.0 * at(i - 1, j) + 6.0 * at(i, j) - 4.0 * at(i + 1, j) +
                                   at(i + 2, j)) / std::pow(hx, 4);
        const double d3 = std::abs(-at(i - 2, j) + 2.0 * at(i - 1, j) - 2.0 * at(i + 1, j) + at(i + 2, j)) /
                          (2.0 * std::pow(hx, 3));
        m += cxx * d4 + std::abs(op.a_x) * d3;
      }
      if (j >= 2 && j + 2 < g.ny) {
        const double d4 = std::abs(at(i, j - 2) - 4.0 * at(i, j - 1) + 6.0 * at(i, j) - 4.0 * at(i, j + 1) +
                                   at(i, j + 2)) / std::pow(hy, 4);
        const double d3 = std::abs(-at(i, j - 2) + 2.0 * at(i, j - 1) - 2.0 * at(i, j + 1) + at(i, j + 2)) /
                          (2.0 * std::pow(hy, 3));
        m += cyy * d4 + std::abs(op.a_y) * d3;
      }
      st.derivative_scale = std::max(st.derivative_scale, m);
    }
  }

  const double weight = 4.0 * std::abs(op.a_xx) / (hx * hx) + 4.0 * std::abs(op.a_yy) / (hy * hy) +
                        std::abs(op.a_xy) / (hx * hy) + std::abs(op.a_x) / hx + std::abs(op.a_y) / hy +
                        std::abs(op.a_0);
  st.floor = kFloorFactor * std::numeric_limits<double>::epsilon() * (1.0 + st.max_abs) * weight;
  const double h = std::max(hx, hy);
  st.tolerance = kCertifyConstant * (1.0 + st.max_abs + st.derivative_scale) * h * h;
  return st;
}

}  // namespace

ComplexScalar fd_apply(const LinOp2& op, const PointField& field, Point p, double hx, double hy) {
  if (!(hx > 0.0) || !(hy > 0.0)) throw UsageError("finite-difference step must be positive");
  const double x = p.x, y = p.y;
  const bool mixed = op.a_xy != ComplexScalar{};
  const Stencil9 s{
      field(x, y),
      field(x + hx, y),
      field(x - hx, y),
      field(x, y + hy),
      field(x, y - hy),
      mixed ? field(x + hx, y + hy) : ComplexScalar{},
      mixed ? field(x - hx, y + hy) : ComplexScalar{},
      mixed ? field(x + hx, y - hy) : ComplexScalar{},
      mixed ? field(x - hx, y - hy) : ComplexScalar{},
  };
  return apply_stencil(op, s, hx, hy);
}

StencilReport verify_on_grid(const LinOp2& op, const PointField& field, const GridSpec& grid, int levels) {
  grid.validate();
  if (levels != 1 && levels != 2) throw UsageError("levels must be 1 or 2");
  const LevelStats coarse = run_level(op, field, grid);
  StencilReport rep;
  rep.levels = levels;
  if (levels == 1) {
    rep.grid = grid;
    rep.max_residual = coarse.max_residual;
    rep.mean_residual = coarse.mean_residual;
    rep.tolerance = coarse.tolerance;
    rep.roundoff_floor = coarse.floor;
    rep.certified = coarse.max_residual <= coarse.tolerance;
  } else {
    const GridSpec fine_grid = grid.refined();
    const LevelStats fine = run_level(op, field, fine_grid);
    rep.grid = fine_grid;
    rep.max_residual = fine.max_residual;
    rep.mean_residual = fine.mean_residual;
    rep.coarse_max_residual = coarse.max_residual;
    rep.tolerance = fine.tolerance;
    rep.roundoff_floor = fine.floor;
    const bool exact = fine.max_residual <= fine.floor;
    if (!exact && coarse.max_residual > 0.0) rep.convergence_order = std::log2(coarse.max_residual / fine.max_residual);
    const bool converging = exact || (rep.convergence_order && *rep.convergence_order >= kMinOrder);
    rep.certified = fine.max_residual <= fine.tolerance && converging;
  }
  rep.h_x = rep.grid.hx();
  rep.h_y = rep.grid.hy();
  return rep;
}

double check_boundary(const PointField& field, std::span<const BoundarySegment> segments) {
  constexpr std::size_t kSamples = 256;
  double worst = 0.0;
  for (const auto& seg : segments) {
    for (std::size_t k = 0; k < kSamples; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(kSamples - 1);
      const double x = k + 1 == kSamples ? seg.to.x : seg.from.x + t * (seg.to.x - seg.from.x);
      const double y = k + 1 == kSamples ? seg.to.y : seg.from.y + t * (seg.to.y - seg.from.y);
      worst = std::max(worst, std::abs(field(x, y) - ComplexScalar{seg.expected, 0.0}));
    }
  }
  return worst;
}

nlohmann::json to_json(const StencilReport& report) {
  nlohmann::json j;
  j["grid"] = report.grid.to_string();
  j["h"] = {report.h_x, report.h_y};
  j["max_residual"] = report.max_residual;
  j["mean_residual"] = report.mean_residual;
  j["convergence_order"] = report.convergence_order ? nlohmann::json(*report.convergence_order) : nlohmann::json();
  j["certified"] = report.certified;
  return j;
}

}  // namespace harmonic
