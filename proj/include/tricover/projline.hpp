#pragma once

#include <array>
#include <span>
#include <string>

namespace tricover {

/// Default tolerance for point equality, measured in the chordal metric.
inline constexpr double kPointTolerance = 1e-12;

/// A point [a : b] of the real projective line, stored in canonical form:
/// max(|a|, |b|) = 1 and the first nonzero entry of (b, a) is positive.
/// The affine value is a / b; b == 0 is the point at infinity.
class ProjPoint {
public:
  /// The point 0.
  ProjPoint() : a_(0.0), b_(1.0) {}

  /// Homogeneous constructor. Throws DomainError for (0, 0) or non-finite input.
  static ProjPoint homogeneous(double a, double b);
  /// Affine constructor [x : 1]. Throws DomainError for non-finite x.
  static ProjPoint affine(double x);
  static ProjPoint infinity() { return ProjPoint(1.0, 0.0, raw_tag{}); }

  double a() const { return a_; }
  double b() const { return b_; }

  bool is_infinity() const { return b_ == 0.0; }
  /// a / b. Returns +inf for the point at infinity; callers that need a
  /// finite number check is_infinity() first.
  double value() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
  struct raw_tag {};
  ProjPoint(double a, double b, raw_tag) : a_(a), b_(b) {}

  double a_;
  double b_;
};

/// |a_p b_q - a_q b_p| / (|p| |q|); sine of the angle between representatives.
double chordal_distance(const ProjPoint& p, const ProjPoint& q);

/// Chordal equality at the given tolerance.
bool near(const ProjPoint& p, const ProjPoint& q, double tol = kPointTolerance);

/// Homogeneous determinant a_p b_q - a_q b_p of canonical representatives.
double bracket(const ProjPoint& p, const ProjPoint& q);

/// "inf" or a 12-significant-digit decimal.
std::string format_point(const ProjPoint& p);

/// A fractional linear transformation x -> (a x + b) / (c x + d) with ad - bc != 0.
class MobiusMap {
public:
  /// Throws DegenerateMatrix when the determinant vanishes relative to the
  /// entry scale (|det| <= 1e-14 max|entry|^2) or an entry is not finite.
  MobiusMap(double a, double b, double c, double d);

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  ProjPoint apply(const ProjPoint& p) const;
  MobiusMap inverse() const;
  /// Rescaled so that det = +-1.
  MobiusMap normalized() const;

private:
  std::array<double, 4> m_;
};

ProjPoint mobius_apply(const MobiusMap& m, const ProjPoint& p);

/// Matrix product: apply(compose(m, n), p) == apply(m, apply(n, p)).
MobiusMap mobius_compose(const MobiusMap& m, const MobiusMap& n);

/// True when m and n are scalar multiples of each other (up to tol, relative).
bool same_action(const MobiusMap& m, const MobiusMap& n, double tol = 1e-12);

namespace maps {
/// 1 / (1 - x), the order-three rotation 0 -> 1 -> inf -> 0.
MobiusMap sigma();
/// 1 - 1/x, the inverse rotation.
MobiusMap sigma2();
/// 1 - x, swaps 0 and 1.
MobiusMap tau01();
/// x / (x - 1), swaps 1 and inf.
MobiusMap tau1inf();
/// 1 / x, swaps 0 and inf.
MobiusMap tau0inf();
}  // namespace maps

/// The six symmetries of {0, 1, inf} realized as Mobius maps.
enum class S3Element { e, tau01, tau1inf, sigma, sigma2, tau0inf };

/// Reduces a word in the generators (applied right to left, as composition).
S3Element s3_compose(S3Element g, S3Element h);
S3Element s3_inverse(S3Element g);
S3Element s3_from_word(std::span<const S3Element> word);
MobiusMap s3_matrix(S3Element g);
ProjPoint s3_apply(S3Element g, const ProjPoint& p);
const char* to_string(S3Element g);

/// Homogeneous cross-ratio [x01 x23 : x02 x13] with x_ij = a_i b_j - a_j b_i.
/// Throws IndeterminateCrossRatio when both components vanish.
ProjPoint cross_ratio(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                      const ProjPoint& p3);

/// The Mobius map sending (p0, p2, p3) to (0, 1, inf), i.e. x -> [p0 : x : p2 : p3].
/// Throws DegenerateAnchor if two anchors coincide.
MobiusMap normalize_quadruple(const ProjPoint& p0, const ProjPoint& p2, const ProjPoint& p3);

}  // namespace tricover
