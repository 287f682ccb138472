#include "harmonic/grid.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

double to_double(const std::string& s, const std::string& whole) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw UsageError("bad number '" + s + "' in grid '" + whole + "'");
  return v;
}

std::size_t to_count(const std::string& s, const std::string& whole) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw UsageError("bad node count '" + s + "' in grid '" + whole + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ' ') continue;
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw UsageError("grid needs at least 2 nodes per axis");
  if (!(x1 > x0) || !(y1 > y0) || !std::isfinite(x1 - x0) || !std::isfinite(y1 - y0))
    throw UsageError("grid extents must be finite with x0 < x1 and y0 < y1");
}

GridSpec GridSpec::parse(const std::string& text) {
  const auto axes = split(text, ',');
  if (axes.size() != 2) throw UsageError("grid must look like x0:x1:nx,y0:y1:ny, got '" + text + "'");
  const auto xs = split(axes[0], ':');
  const auto ys = split(axes[1], ':');
  if (xs.size() != 3 || ys.size() != 3) throw UsageError("grid must look like x0:x1:nx,y0:y1:ny, got '" + text + "'");
  GridSpec g{to_double(xs[0], text), to_double(xs[1], text), to_count(xs[2], text),
             to_double(ys[0], text), to_double(ys[1], text), to_count(ys[2], text)};
  g.validate();
  return g;
}

std::string GridSpec::to_string() const {
  return num(x0) + ":" + num(x1) + ":" + std::to_string(nx) + "," + num(y0) + ":" + num(y1) + ":" + std::to_string(ny);
}

}  // namespace harmonic
