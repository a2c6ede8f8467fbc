#pragma once

#include <complex>
#include <cstdint>

#include "tricover/cover.hpp"
#include "tricover/projline.hpp"

namespace tricover {

using Complex = std::complex<double>;

/// A point of the unit circle in C.
class UnitComplex {
public:
  /// Throws OffCircle if ||z| - 1| > tol.
  explicit UnitComplex(Complex z, double tol = 1e-8);

  static UnitComplex from_turns(const CirclePoint& t);

  Complex value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  /// arg / 2pi, as a point of R/Z.
  CirclePoint turns() const;

private:
  Complex z_;
};

/// e(t) = exp(2 pi i t).
UnitComplex e_turns(const CirclePoint& t);

/// sin(pi x) and cos(pi x) with exact zeros at integers and half-integers.
struct SinCos {
  double sin;
  double cos;
};
SinCos sincos_pi(double x);

/// Stereographic projection z = (x - i) / (1 - i x); inf -> i, 0 -> -i.
UnitComplex cayley(const ProjPoint& p);
/// Inverse of cayley. Throws OffCircle when |z| is off the unit circle by more than 1e-8.
ProjPoint cayley_inv(Complex z);
ProjPoint cayley_inv(const UnitComplex& z);

/// tan(pi (t + 1/4)) = cayley_inv(e(t)); the pole t = 1/4 maps exactly to inf.
ProjPoint stereo_param(const CirclePoint& t);

/// [[u, v], [conj v, conj u]] with |u|^2 - |v|^2 = 1.
struct SU11Matrix {
  Complex u;
  Complex v;

  double determinant() const { return std::norm(u) - std::norm(v); }
  /// w -> (u w + v) / (conj(v) w + conj(u)).
  Complex apply(Complex w) const;
  /// The complex-conjugate matrix [[conj u, conj v], [v, u]].
  SU11Matrix conjugate() const { return {std::conj(u), std::conj(v)}; }
};

/// u = ((a + d) + i (c - b)) / 2, v = ((b + c) + i (d - a)) / 2.
/// The result intertwines the conjugate Cayley map x -> (x + i) / (1 + i x);
/// its conjugate() intertwines cayley itself. Throws DetNotOne if |det - 1| > 1e-10.
SU11Matrix su11_conjugate(const MobiusMap& m);

/// (p + q) / (1 - p q) in homogeneous form [a_p b_q + a_q b_p : b_p b_q - a_p a_q].
ProjPoint group_add(const ProjPoint& p, const ProjPoint& q);
ProjPoint group_neg(const ProjPoint& p);
/// m-fold sum by double-and-add.
ProjPoint group_mul_int(std::int64_t m, const ProjPoint& p);

/// tan(pi num / den); inf exactly when num / den = 1/2 mod 1. Throws DomainError for den == 0.
ProjPoint torsion_point(std::int64_t num, std::int64_t den);

/// The renormalized Cayley map L(z) = (1 + i z) / (1 - i z), carrying +_L to multiplication.
UnitComplex cayley_L(const ProjPoint& p);

}  // namespace tricover
