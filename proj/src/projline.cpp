#include "tricover/projline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tricover/errors.hpp"

namespace tricover {

ProjPoint ProjPoint::homogeneous(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    raise(ErrorCode::domain_error, "homogeneous coordinates must be finite");
  }
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) {
    raise(ErrorCode::domain_error, "[0 : 0] is not a point of the projective line");
  }
  a /= scale;
  b /= scale;
  if (b < 0.0 || (b == 0.0 && a < 0.0)) {
    a = -a;
    b = -b;
  }
  // -0.0 would break exact comparisons of canonical forms
  if (a == 0.0) a = 0.0;
  if (b == 0.0) b = 0.0;
  return ProjPoint(a, b, raw_tag{});
}

ProjPoint ProjPoint::affine(double x) {
  if (!std::isfinite(x)) {
    raise(ErrorCode::domain_error, "affine value must be finite; use ProjPoint::infinity()");
  }
  return homogeneous(x, 1.0);
}

double ProjPoint::value() const {
  if (is_infinity()) return std::numeric_limits<double>::infinity();
  return a_ / b_;
}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  const double np = std::hypot(p.a(), p.b());
  const double nq = std::hypot(q.a(), q.b());
  return std::abs(bracket(p, q)) / (np * nq);
}

bool near(const ProjPoint& p, const ProjPoint& q, double tol) {
  return chordal_distance(p, q) <= tol;
}

double bracket(const ProjPoint& p, const ProjPoint& q) {
  // fma keeps the cancellation error at one rounding
  const double prod = p.b() * q.a();
  const double err = std::fma(p.b(), q.a(), -prod);
  return std::fma(p.a(), q.b(), -prod) - err;
}

std::string format_point(const ProjPoint& p) {
  if (p.is_infinity()) return "inf";
  double x = p.value();
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

MobiusMap::MobiusMap(double a, double b, double c, double d) : m_{a, b, c, d} {
  for (double v : m_) {
    if (!std::isfinite(v)) raise(ErrorCode::degenerate_matrix, "matrix entries must be finite");
  }
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0 || std::abs(det()) <= 1e-14 * scale * scale) {
    raise(ErrorCode::degenerate_matrix, "determinant vanishes");
  }
}

ProjPoint MobiusMap::apply(const ProjPoint& p) const {
  return ProjPoint::homogeneous(m_[0] * p.a() + m_[1] * p.b(), m_[2] * p.a() + m_[3] * p.b());
}

MobiusMap MobiusMap::inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

MobiusMap MobiusMap::normalized() const {
  const double s = 1.0 / std::sqrt(std::abs(det()));
  return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s};
}

ProjPoint mobius_apply(const MobiusMap& m, const ProjPoint& p) { return m.apply(p); }

MobiusMap mobius_compose(const MobiusMap& m, const MobiusMap& n) {
  return {m.a() * n.a() + m.b() * n.c(), m.a() * n.b() + m.b() * n.d(),
          m.c() * n.a() + m.d() * n.c(), m.c() * n.b() + m.d() * n.d()};
}

bool same_action(const MobiusMap& m, const MobiusMap& n, double tol) {
  const std::array<double, 4> x{m.a(), m.b(), m.c(), m.d()};
  const std::array<double, 4> y{n.a(), n.b(), n.c(), n.d()};
  // proportional iff every 2x2 minor of the 2x4 matrix [x; y] vanishes
  double nx = 0.0, ny = 0.0;
  for (int i = 0; i < 4; ++i) {
    nx = std::max(nx, std::abs(x[i]));
    ny = std::max(ny, std::abs(y[i]));
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(x[i] * y[j] - x[j] * y[i]) > tol * nx * ny) return false;
    }
  }
  return true;
}

namespace maps {
MobiusMap sigma() { return {0.0, 1.0, -1.0, 1.0}; }
MobiusMap sigma2() { return {1.0, -1.0, 1.0, 0.0}; }
MobiusMap tau01() { return {-1.0, 1.0, 0.0, 1.0}; }
MobiusMap tau1inf() { return {1.0, 0.0, 1.0, -1.0}; }
MobiusMap tau0inf() { return {0.0, 1.0, 1.0, 0.0}; }
}  // namespace maps

namespace {

// Each element is determined by where it sends the labels 0 -> 0, 1 -> 1, 2 -> inf.
using Perm = std::array<int, 3>;

Perm perm_of(S3Element g) {
  switch (g) {
    case S3Element::e: return {0, 1, 2};
    case S3Element::tau01: return {1, 0, 2};
    case S3Element::tau1inf: return {0, 2, 1};
    case S3Element::tau0inf: return {2, 1, 0};
    case S3Element::sigma: return {1, 2, 0};
    case S3Element::sigma2: return {2, 0, 1};
  }
  return {0, 1, 2};
}

constexpr std::array<S3Element, 6> kAll{S3Element::e,     S3Element::tau01,  S3Element::tau1inf,
                                        S3Element::sigma, S3Element::sigma2, S3Element::tau0inf};

S3Element element_of(const Perm& p) {
  for (S3Element g : kAll) {
    if (perm_of(g) == p) return g;
  }
  raise(ErrorCode::invalid_argument, "not a permutation of {0, 1, inf}");
}

}  // namespace

S3Element s3_compose(S3Element g, S3Element h) {
  const Perm pg = perm_of(g);
  const Perm ph = perm_of(h);
  return element_of({pg[ph[0]], pg[ph[1]], pg[ph[2]]});
}

S3Element s3_inverse(S3Element g) {
  const Perm p = perm_of(g);
  Perm inv{};
  for (int i = 0; i < 3; ++i) inv[p[i]] = i;
  return element_of(inv);
}

S3Element s3_from_word(std::span<const S3Element> word) {
  S3Element acc = S3Element::e;
  for (S3Element g : word) acc = s3_compose(acc, g);
  return acc;
}

MobiusMap s3_matrix(S3Element g) {
  switch (g) {
    case S3Element::e: return MobiusMap::identity();
    case S3Element::tau01: return maps::tau01();
    case S3Element::tau1inf: return maps::tau1inf();
    case S3Element::tau0inf: return maps::tau0inf();
    case S3Element::sigma: return maps::sigma();
    case S3Element::sigma2: return maps::sigma2();
  }
  return MobiusMap::identity();
}

ProjPoint s3_apply(S3Element g, const ProjPoint& p) { return s3_matrix(g).apply(p); }

const char* to_string(S3Element g) {
  switch (g) {
    case S3Element::e: return "e";
    case S3Element::tau01: return "tau01";
    case S3Element::tau1inf: return "tau1inf";
    case S3Element::tau0inf: return "tau0inf";
    case S3Element::sigma: return "sigma";
    case S3Element::sigma2: return "sigma2";
  }
  return "?";
}

ProjPoint cross_ratio(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                      const ProjPoint& p3) {
  const double num = bracket(p0, p1) * bracket(p2, p3);
  const double den = bracket(p0, p2) * bracket(p1, p3);
  if (num == 0.0 && den == 0.0) {
    raise(ErrorCode::indeterminate_cross_ratio, "both homogeneous components vanish");
  }
  return ProjPoint::homogeneous(num, den);
}

MobiusMap normalize_quadruple(const ProjPoint& p0, const ProjPoint& p2, const ProjPoint& p3) {
  if (near(p0, p2) || near(p0, p3) || near(p2, p3)) {
    raise(ErrorCode::degenerate_anchor, "anchor points must be pairwise distinct");
  }
  // x -> x_{0x} x_{23} / (x_{02} x_{x3}), linear in the homogeneous pair of x
  const double x23 = bracket(p2, p3);
  const double x02 = bracket(p0, p2);
  return {-p0.b() * x23, p0.a() * x23, p3.b() * x02, -p3.a() * x02};
}

}  // namespace tricover
