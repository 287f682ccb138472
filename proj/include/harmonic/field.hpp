#ifndef HARMONIC_FIELD_HPP
#define HARMONIC_FIELD_HPP

#include <functional>
#include <utility>

#include "harmonic/jet.hpp"

namespace harmonic {

/// A point-evaluable field u(x, y).
using PointField = std::function<ComplexScalar(double, double)>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// A field that can be sampled for its value and for its second-order jet.
/// Copies share the underlying callables; both must be pure.
class Field {
 public:
  using JetFn = std::function<Jet2(double, double)>;

  Field() = default;
  Field(PointField value, JetFn jet) : value_(std::move(value)), jet_(std::move(jet)) {}

  /// A field whose value is read off its jet.
  static Field from_jet(JetFn jet) {
    return Field([jet](double x, double y) { return jet(x, y).u; }, jet);
  }

  ComplexScalar value(double x, double y) const { return value_(x, y); }
  Jet2 jet(double x, double y) const { return jet_(x, y); }
  const PointField& value_fn() const { return value_; }

  /// Slot-wise real part.
  Field real_part() const {
    auto v = value_;
    auto j = jet_;
    return Field([v](double x, double y) { return ComplexScalar{v(x, y).real(), 0.0}; },
                 [j](double x, double y) { return j(x, y).real_part(); });
  }

  friend Field operator+(const Field& a, const Field& b) {
    return Field([a, b](double x, double y) { return a.value(x, y) + b.value(x, y); },
                 [a, b](double x, double y) { return a.jet(x, y) + b.jet(x, y); });
  }

 private:
  PointField value_;
  JetFn jet_;
};

}  // namespace harmonic

#endif  // HARMONIC_FIELD_HPP
