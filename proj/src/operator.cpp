#include "harmonic/operator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

enum class Slot { Xx, Xy, Yy, X, Y, Identity };

// Recursive descent over: op := ['+'|'-'] term (('+'|'-') term)*
//                         term := factor ('*' factor)*
// A term holds at most one derivative token; without one it is an identity term.
class OperatorParser {
 public:
  explicit OperatorParser(std::string_view s) : src_(s) {}

  LinOp2 parse() {
    LinOp2 op;
    skip_ws();
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (at('+') || at('-')) {
        sign = at('-') ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        if (pos_ >= src_.size()) break;
        throw SyntaxError(pos_, "'+', '-' or end of input");
      }
      first = false;
      add_term(op, sign);
      skip_ws();
      if (pos_ >= src_.size()) break;
    }
    return op;
  }

 private:
  bool at(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  void add_term(LinOp2& op, double sign) {
    ComplexScalar coef{sign, 0.0};
    std::optional<Slot> slot;
    for (;;) {
      skip_ws();
      factor(coef, slot);
      skip_ws();
      if (!at('*')) break;
      ++pos_;
    }
    switch (slot.value_or(Slot::Identity)) {
      case Slot::Xx: op.a_xx += coef; break;
      case Slot::Xy: op.a_xy += coef; break;
      case Slot::Yy: op.a_yy += coef; break;
      case Slot::X: op.a_x += coef; break;
      case Slot::Y: op.a_y += coef; break;
      case Slot::Identity: op.a_0 += coef; break;
    }
  }

  void factor(ComplexScalar& coef, std::optional<Slot>& slot) {
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "coefficient or derivative token");
    const char c = src_[pos_];
    if (c == '(') {
      int depth = 0;
      std::size_t p = pos_;
      for (; p < src_.size(); ++p) {
        if (src_[p] == '(') ++depth;
        if (src_[p] == ')' && --depth == 0) break;
      }
      if (p >= src_.size()) throw SyntaxError(src_.size(), "')'");
      const std::string_view inner = src_.substr(pos_ + 1, p - pos_ - 1);
      Expr e;
      try {
        e = parse_expr(inner);
      } catch (const SyntaxError& err) {
        throw SyntaxError(pos_ + 1 + err.offset(), err.expected());
      }
      if (e.contains_var() || !e.is_const()) throw SyntaxError(pos_ + 1, "constant coefficient");
      coef *= e.value();
      pos_ = p + 1;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t p = pos_;
      while (p < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[p])) || src_[p] == '.' ||
                                 src_[p] == 'e' || src_[p] == 'E' ||
                                 ((src_[p] == '+' || src_[p] == '-') && p > pos_ &&
                                  (src_[p - 1] == 'e' || src_[p - 1] == 'E'))))
        ++p;
      const Expr e = parse_expr(src_.substr(pos_, p - pos_));
      coef *= e.value();
      pos_ = p;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t p = pos_;
      while (p < src_.size() && std::isalnum(static_cast<unsigned char>(src_[p]))) ++p;
      const std::string_view word = src_.substr(pos_, p - pos_);
      pos_ = p;
      if (word == "j") {
        coef *= kJ;
        return;
      }
      if (word == "pi") {
        coef *= std::numbers::pi;
        return;
      }
      std::optional<Slot> s;
      if (word == "dxx") s = Slot::Xx;
      if (word == "dxy" || word == "dyx") s = Slot::Xy;
      if (word == "dyy") s = Slot::Yy;
      if (word == "dx") s = Slot::X;
      if (word == "dy") s = Slot::Y;
      if (!s) throw HigherOrderTerm(start, std::string(word));
      if (slot) throw SyntaxError(start, "at most one derivative token per term");
      slot = s;
      return;
    }
    throw SyntaxError(start, "coefficient or derivative token");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string term_text(ComplexScalar c, const std::string& token, bool first) {
  const bool negative = (c.imag() == 0.0 && c.real() < 0.0) || (c.real() == 0.0 && c.imag() < 0.0);
  const ComplexScalar mag = negative ? -c : c;
  std::string body;
  if (mag == ComplexScalar{1.0, 0.0} && !token.empty()) {
    body = token;
  } else {
    std::string coef = render(Expr::constant(mag));
    if (mag.real() != 0.0 && mag.imag() != 0.0) coef = "(" + coef + ")";
    body = token.empty() ? coef : coef + "*" + token;
  }
  if (first) return negative ? "-" + body : body;
  return (negative ? " - " : " + ") + body;
}

}  // namespace

LinOp2 parse_operator(std::string_view text) { return OperatorParser(text).parse(); }

std::string render_operator(const LinOp2& op) {
  const std::pair<ComplexScalar, const char*> terms[] = {
      {op.a_xx, "dxx"}, {op.a_xy, "dxy"}, {op.a_yy, "dyy"}, {op.a_x, "dx"}, {op.a_y, "dy"}, {op.a_0, ""},
  };
  std::string out;
  for (const auto& [c, tok] : terms) {
    if (c == ComplexScalar{}) continue;
    out += term_text(c, tok, out.empty());
  }
  return out.empty() ? "0" : out;
}

std::string render_factor(const FirstOrderFactor& f) {
  std::string out = term_text(f.coef_x, "dx", true);
  if (f.coef_y != ComplexScalar{}) out += term_text(f.coef_y, "dy", false);
  return out;
}

ComplexScalar apply(const LinOp2& op, const Jet2& jet) {
  return op.a_xx * jet.uxx + op.a_xy * jet.uxy + op.a_yy * jet.uyy + op.a_x * jet.ux + op.a_y * jet.uy +
         op.a_0 * jet.u;
}

ComplexScalar apply(const FirstOrderFactor& f, const Jet2& jet) { return f.coef_x * jet.ux + f.coef_y * jet.uy; }

std::pair<FirstOrderFactor, FirstOrderFactor> factor_principal(const LinOp2& op) {
  if (!op.is_principal()) throw NotPrincipal();
  if (op.a_xx == ComplexScalar{}) throw DegenerateLeading();
  // t^2 - s t + p = 0 with s = r1 + r2, p = r1 r2.
  const ComplexScalar s = op.a_xy / op.a_xx;
  const ComplexScalar p = op.a_yy / op.a_xx;
  ComplexScalar sq = std::sqrt(s * s - 4.0 * p);
  // Pick the sign that avoids cancellation, then recover the other root from the product.
  if ((std::conj(s) * sq).real() < 0.0) sq = -sq;
  const ComplexScalar q = 0.5 * (s + sq);
  ComplexScalar r1 = q;
  ComplexScalar r2 = q == ComplexScalar{} ? 0.5 * (s - sq) : p / q;
  const double tie = 1e-14 * (std::abs(r1) + std::abs(r2));
  const bool swap = std::abs(r1.imag() - r2.imag()) > tie ? r2.imag() > r1.imag() : r2.real() > r1.real();
  if (swap) std::swap(r1, r2);
  return {FirstOrderFactor{1.0, r1}, FirstOrderFactor{1.0, r2}};
}

LinOp2 compose(const FirstOrderFactor& f1, const FirstOrderFactor& f2) {
  return {f1.coef_x * f2.coef_x, f1.coef_x * f2.coef_y + f1.coef_y * f2.coef_x, f1.coef_y * f2.coef_y, 0.0, 0.0, 0.0};
}

CommutationReport check_commutation(const FirstOrderFactor& f1, const FirstOrderFactor& f2, const Field& field,
                                    std::span<const Point> samples) {
  CommutationReport rep;
  const LinOp2 a = compose(f1, f2);
  const LinOp2 b = compose(f2, f1);
  rep.coefficient_discrepancy =
      std::max({std::abs(a.a_xx - b.a_xx), std::abs(a.a_xy - b.a_xy), std::abs(a.a_yy - b.a_yy)});

  // g = f u is a first-order combination; its own x/y derivatives come from
  // the second-order slots of the jet.
  auto nested = [](const FirstOrderFactor& outer, const FirstOrderFactor& inner, const Jet2& j) {
    const ComplexScalar gx = inner.coef_x * j.uxx + inner.coef_y * j.uxy;
    const ComplexScalar gy = inner.coef_x * j.uxy + inner.coef_y * j.uyy;
    return outer.coef_x * gx + outer.coef_y * gy;
  };

  constexpr double h = 1e-4;
  auto first = [&](const FirstOrderFactor& f, const PointField& u) -> PointField {
    return [f, u](double x, double y) {
      const ComplexScalar dx = (u(x + h, y) - u(x - h, y)) / (2.0 * h);
      const ComplexScalar dy = (u(x, y + h) - u(x, y - h)) / (2.0 * h);
      return f.coef_x * dx + f.coef_y * dy;
    };
  };
  const PointField& u = field.value_fn();
  const PointField f1f2 = first(f1, first(f2, u));
  const PointField f2f1 = first(f2, first(f1, u));

  for (const Point& pt : samples) {
    const Jet2 j = field.jet(pt.x, pt.y);
    rep.field_scale = std::max(rep.field_scale, std::abs(j.u));
    rep.jet_discrepancy = std::max(rep.jet_discrepancy, std::abs(nested(f1, f2, j) - nested(f2, f1, j)));
    rep.fd_discrepancy = std::max(rep.fd_discrepancy, std::abs(f1f2(pt.x, pt.y) - f2f1(pt.x, pt.y)));
  }
  const double scale = 1.0 + rep.field_scale;
  rep.pass = rep.coefficient_discrepancy <= 1e-8 * scale && rep.jet_discrepancy <= 1e-8 * scale &&
             rep.fd_discrepancy <= 1e-6 * scale;
  return rep;
}

}  // namespace harmonic
