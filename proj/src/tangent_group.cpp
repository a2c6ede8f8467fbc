#include "tricover/tangent_group.hpp"

#include <cmath>
#include <numbers>

#include "tricover/errors.hpp"

namespace tricover {

UnitComplex::UnitComplex(Complex z, double tol) : z_(z) {
  if (!(std::abs(std::abs(z) - 1.0) <= tol)) {
    raise(ErrorCode::off_circle, "|z| = " + std::to_string(std::abs(z)));
  }
}

UnitComplex UnitComplex::from_turns(const CirclePoint& t) { return e_turns(t); }

CirclePoint UnitComplex::turns() const {
  return CirclePoint(std::atan2(z_.imag(), z_.real()) / (2.0 * std::numbers::pi));
}

SinCos sincos_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // [-1, 1]
  const double q = std::round(2.0 * r);            // quarter turns, in [-2, 2]
  const double y = r - 0.5 * q;                    // [-1/4, 1/4], exact
  double s = std::sin(std::numbers::pi * y);
  double c = std::cos(std::numbers::pi * y);
  if (std::abs(y) == 0.25) {
    s = std::copysign(std::numbers::sqrt2 / 2.0, y);
    c = std::numbers::sqrt2 / 2.0;
  }
  switch ((static_cast<int>(q) % 4 + 4) % 4) {
    case 1: return {c, -s};
    case 2: return {-s, -c};
    case 3: return {-c, s};
    default: return {s, c};
  }
}

UnitComplex e_turns(const CirclePoint& t) {
  const SinCos sc = sincos_pi(2.0 * t.t());
  return UnitComplex(Complex(sc.cos, sc.sin));
}

UnitComplex cayley(const ProjPoint& p) {
  const double a = p.a();
  const double b = p.b();
  const double n = a * a + b * b;
  return UnitComplex(Complex(2.0 * a * b / n, (a - b) * (a + b) / n));
}

ProjPoint cayley_inv(Complex z) {
  if (!(std::abs(std::abs(z) - 1.0) <= 1e-8)) {
    raise(ErrorCode::off_circle, "|z| = " + std::to_string(std::abs(z)));
  }
  const double c = z.real();
  const double s = z.imag();
  // x = c / (1 - s) = (1 + s) / c; use the pair that avoids cancellation
  if (s > 0.0) return ProjPoint::homogeneous(1.0 + s, c);
  return ProjPoint::homogeneous(c, 1.0 - s);
}

ProjPoint cayley_inv(const UnitComplex& z) { return cayley_inv(z.value()); }

ProjPoint stereo_param(const CirclePoint& t) {
  const SinCos sc = sincos_pi(t.t() + 0.25);
  return ProjPoint::homogeneous(sc.sin, sc.cos);
}

Complex SU11Matrix::apply(Complex w) const {
  return (u * w + v) / (std::conj(v) * w + std::conj(u));
}

SU11Matrix su11_conjugate(const MobiusMap& m) {
  if (std::abs(m.det() - 1.0) > 1e-10) {
    raise(ErrorCode::det_not_one, "det = " + std::to_string(m.det()));
  }
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  return {Complex(0.5 * (a + d), 0.5 * (c - b)), Complex(0.5 * (b + c), 0.5 * (d - a))};
}

ProjPoint group_add(const ProjPoint& p, const ProjPoint& q) {
  // the pair is the complex product (b_p + i a_p)(b_q + i a_q), never zero
  return ProjPoint::homogeneous(p.a() * q.b() + q.a() * p.b(), p.b() * q.b() - p.a() * q.a());
}

ProjPoint group_neg(const ProjPoint& p) { return ProjPoint::homogeneous(-p.a(), p.b()); }

ProjPoint group_mul_int(std::int64_t m, const ProjPoint& p) {
  std::uint64_t k = m < 0 ? 0 - static_cast<std::uint64_t>(m) : static_cast<std::uint64_t>(m);
  ProjPoint acc = ProjPoint::affine(0.0);
  ProjPoint base = p;
  while (k != 0) {
    if (k & 1u) acc = group_add(acc, base);
    k >>= 1;
    if (k != 0) base = group_add(base, base);
  }
  return m < 0 ? group_neg(acc) : acc;
}

ProjPoint torsion_point(std::int64_t num, std::int64_t den) {
  if (den == 0) raise(ErrorCode::domain_error, "torsion point with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t r = ((num % den) + den) % den;  // tan has period pi
  if (2 * r == den) return ProjPoint::infinity();
  const SinCos sc = sincos_pi(static_cast<double>(r) / static_cast<double>(den));
  return ProjPoint::homogeneous(sc.sin, sc.cos);
}

UnitComplex cayley_L(const ProjPoint& p) {
  const double a = p.a();
  const double b = p.b();
  const double n = a * a + b * b;
  return UnitComplex(Complex((b - a) * (b + a) / n, 2.0 * a * b / n));
}

}  // namespace tricover
