#include "harmonic/jet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "harmonic/errors.hpp"

namespace harmonic {

Jet2& Jet2::operator+=(const Jet2& o) {
  u += o.u, ux += o.ux, uy += o.uy, uxx += o.uxx, uxy += o.uxy, uyy += o.uyy;
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  u -= o.u, ux -= o.ux, uy -= o.uy, uxx -= o.uxx, uxy -= o.uxy, uyy -= o.uyy;
  return *this;
}

Jet2& Jet2::operator*=(ComplexScalar s) {
  u *= s, ux *= s, uy *= s, uxx *= s, uxy *= s, uyy *= s;
  return *this;
}

Jet2 Jet2::real_part() const {
  return {u.real(), ux.real(), uy.real(), uxx.real(), uxy.real(), uyy.real()};
}

Jet2 Jet2::imag_part() const {
  return {u.imag(), ux.imag(), uy.imag(), uxx.imag(), uxy.imag(), uyy.imag()};
}

Jet2 Jet2::conj() const {
  return {std::conj(u), std::conj(ux), std::conj(uy), std::conj(uxx), std::conj(uxy), std::conj(uyy)};
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator-(const Jet2& a) { return {-a.u, -a.ux, -a.uy, -a.uxx, -a.uxy, -a.uyy}; }
Jet2 operator*(ComplexScalar s, Jet2 a) { return a *= s; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {
      a.u * b.u,
      a.ux * b.u + a.u * b.ux,
      a.uy * b.u + a.u * b.uy,
      a.uxx * b.u + 2.0 * a.ux * b.ux + a.u * b.uxx,
      a.uxy * b.u + a.ux * b.uy + a.uy * b.ux + a.u * b.uxy,
      a.uyy * b.u + 2.0 * a.uy * b.uy + a.u * b.uyy,
  };
}

Jet2 chain(const Jet2& w, ComplexScalar f0, ComplexScalar f1, ComplexScalar f2) {
  return {
      f0,
      f1 * w.ux,
      f1 * w.uy,
      f2 * w.ux * w.ux + f1 * w.uxx,
      f2 * w.ux * w.uy + f1 * w.uxy,
      f2 * w.uy * w.uy + f1 * w.uyy,
  };
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.u == ComplexScalar{}) throw DomainError("", "division by zero");
  const ComplexScalar inv = 1.0 / b.u;
  return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

namespace {

struct JetFault {
  std::vector<std::size_t> reversed_path;
  std::string detail;
};

Jet2 pow_jet(const Jet2& w, int n) {
  if (n == 0) return Jet2::constant(1.0);
  if (n < 0 && w.u == ComplexScalar{}) throw JetFault{{}, "negative power of zero"};
  auto p = [&](int k) { return k == 0 ? ComplexScalar{1.0} : ipow(w.u, k); };
  const double dn = n;
  const ComplexScalar f0 = p(n);
  const ComplexScalar f1 = dn * p(n - 1);
  const ComplexScalar f2 = n == 1 ? ComplexScalar{} : dn * (dn - 1.0) * p(n - 2);
  return chain(w, f0, f1, f2);
}

Jet2 sqrt_jet(const Jet2& w) {
  if (w.u == ComplexScalar{}) throw JetFault{{}, "sqrt has no derivative at 0"};
  const ComplexScalar s = std::sqrt(w.u);
  return chain(w, s, 0.5 / s, -0.25 / (s * w.u));
}

Jet2 fun_jet(FunName f, const Jet2& w) {
  const ComplexScalar a = w.u;
  switch (f) {
    case FunName::Sin: {
      const ComplexScalar s = std::sin(a), c = std::cos(a);
      return chain(w, s, c, -s);
    }
    case FunName::Cos: {
      const ComplexScalar s = std::sin(a), c = std::cos(a);
      return chain(w, c, -s, -c);
    }
    case FunName::Exp: {
      const ComplexScalar e = std::exp(a);
      return chain(w, e, e, e);
    }
    case FunName::Sinh: {
      const ComplexScalar s = std::sinh(a), c = std::cosh(a);
      return chain(w, s, c, s);
    }
    case FunName::Cosh: {
      const ComplexScalar s = std::sinh(a), c = std::cosh(a);
      return chain(w, c, s, c);
    }
    case FunName::Sqrt: return sqrt_jet(w);
    case FunName::Log: {
      if (a == ComplexScalar{}) throw JetFault{{}, "log(0)"};
      const ComplexScalar inv = 1.0 / a;
      return chain(w, std::log(a), inv, -inv * inv);
    }
    case FunName::Conj: return w.conj();
    case FunName::Re: return w.real_part();
    case FunName::Im: return w.imag_part();
    case FunName::Abs: {
      const Jet2 re = w.real_part();
      const Jet2 im = w.imag_part();
      const Jet2 sq = re * re + im * im;
      if (sq.u == ComplexScalar{}) throw JetFault{{}, "abs has no derivative at 0"};
      return sqrt_jet(sq).real_part();
    }
  }
  return {};
}

Jet2 jet_node(const Expr& e, const Jet2& arg) {
  auto child = [&](std::size_t i) {
    try {
      return jet_node(e.child(i), arg);
    } catch (JetFault& f) {
      f.reversed_path.push_back(i);
      throw;
    }
  };
  switch (e.kind()) {
    case ExprKind::Const: return Jet2::constant(e.value());
    case ExprKind::Var: return arg;
    case ExprKind::Add: return child(0) + child(1);
    case ExprKind::Sub: return child(0) - child(1);
    case ExprKind::Mul: {
      const Jet2 l = child(0);
      const Jet2 r = child(1);
      if (e.child(0).is_const()) return e.child(0).value() * r;
      if (e.child(1).is_const()) return e.child(1).value() * l;
      return l * r;
    }
    case ExprKind::Div: {
      const Jet2 l = child(0);
      const Jet2 r = child(1);
      if (r.u == ComplexScalar{}) throw JetFault{{}, "division by zero"};
      return l / r;
    }
    case ExprKind::Pow: return pow_jet(child(0), e.exponent());
    case ExprKind::Neg: return -child(0);
    case ExprKind::Fun: return fun_jet(e.fun_name(), child(0));
  }
  return {};
}

std::string path_string(const std::vector<std::size_t>& reversed) {
  std::string out;
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += std::to_string(*it);
  }
  return out;
}

}  // namespace

Jet2 eval_jet(const Expr& e, const Jet2& arg) {
  try {
    return jet_node(e, arg);
  } catch (const JetFault& f) {
    throw DomainError(path_string(f.reversed_path), f.detail);
  }
}

Jet2 eval_jet(const Expr& e, const AffineMap& arg, double x, double y) {
  try {
    return jet_node(e, arg.jet(x, y));
  } catch (const JetFault& f) {
    throw DomainError(path_string(f.reversed_path),
                      f.detail + " at (x,y)=(" + std::to_string(x) + "," + std::to_string(y) + ")");
  }
}

AffineMap AffineMap::parse(const std::string& text) {
  std::string s;
  std::copy_if(text.begin(), text.end(), std::back_inserter(s), [](char c) { return c != ' '; });
  if (s == "y+j*x" || s == "y+jx") return y_plus_jx();
  if (s == "y-j*x" || s == "y-jx") return y_minus_jx();
  if (s == "y+x") return y_plus_x();
  if (s == "y-x") return y_minus_x();
  throw UsageError("unknown substitution '" + text + "' (expected y+j*x, y-j*x, y+x or y-x)");
}

std::string AffineMap::to_string() const {
  if (*this == y_plus_jx()) return "y+j*x";
  if (*this == y_minus_jx()) return "y-j*x";
  if (*this == y_plus_x()) return "y+x";
  if (*this == y_minus_x()) return "y-x";
  auto c = [](ComplexScalar v) {
    return "(" + std::to_string(v.real()) + (v.imag() < 0 ? "-" : "+") + std::to_string(std::abs(v.imag())) + "*j)";
  };
  return c(alpha) + "*x+" + c(beta) + "*y+" + c(gamma);
}

}  // namespace harmonic
