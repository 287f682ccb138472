#ifndef HARMONIC_GRID_HPP
#define HARMONIC_GRID_HPP

#include <cstddef>
#include <string>

namespace harmonic {

/// Uniform rectangle [x0, x1] x [y0, y1] with nx * ny nodes, endpoints included.
struct GridSpec {
  double x0 = 0.0, x1 = 1.0;
  std::size_t nx = 2;
  double y0 = 0.0, y1 = 1.0;
  std::size_t ny = 2;

  double hx() const { return (x1 - x0) / static_cast<double>(nx - 1); }
  double hy() const { return (y1 - y0) / static_cast<double>(ny - 1); }
  double x(std::size_t i) const { return i + 1 == nx ? x1 : x0 + static_cast<double>(i) * hx(); }
  double y(std::size_t j) const { return j + 1 == ny ? y1 : y0 + static_cast<double>(j) * hy(); }
  std::size_t size() const { return nx * ny; }
  /// Row-major: x varies fastest.
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }

  /// Same rectangle with the spacing halved (2n - 1 nodes per axis).
  GridSpec refined() const { return {x0, x1, 2 * nx - 1, y0, y1, 2 * ny - 1}; }

  /// Throws UsageError unless nx, ny >= 2 and both extents are positive and finite.
  void validate() const;

  /// "x0:x1:nx,y0:y1:ny"
  static GridSpec parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace harmonic

#endif  // HARMONIC_GRID_HPP
