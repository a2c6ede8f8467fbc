#include "tricover/cover.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "tricover/errors.hpp"

namespace tricover {

double reduce_mod1(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;  // t slightly below an integer can round up to 1
  return r;
}

CirclePoint::CirclePoint(double t) : t_(reduce_mod1(t)) {
  if (!std::isfinite(t)) raise(ErrorCode::domain_error, "circle coordinate must be finite");
}

double circle_delta(double s, double t) {
  double d = s - t;
  d -= std::round(d);
  return d;
}

double circle_distance(const CirclePoint& s, const CirclePoint& t) {
  return std::abs(circle_delta(s.t(), t.t()));
}

long circle_winding(std::span<const CirclePoint> loop) {
  if (loop.size() < 2) return 0;
  double total = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const CirclePoint& from = loop[i];
    const CirclePoint& to = loop[(i + 1) % loop.size()];
    const double step = circle_delta(to.t(), from.t());
    if (std::abs(step) >= 0.25) {
      raise(ErrorCode::lift_step_too_large,
            "consecutive circle samples " + std::to_string(i) + " are too far apart to lift");
    }
    total += step;
  }
  return std::lround(total);
}

const char* to_string(IntervalTag tag) {
  switch (tag) {
    case IntervalTag::I: return "I";
    case IntervalTag::II: return "II";
    case IntervalTag::III: return "III";
    case IntervalTag::boundary0: return "boundary(0)";
    case IntervalTag::boundary1: return "boundary(1)";
    case IntervalTag::boundary_inf: return "boundary(inf)";
  }
  return "?";
}

IntervalTag interval_classify(const ProjPoint& p) {
  if (near(p, ProjPoint::affine(0.0))) return IntervalTag::boundary0;
  if (near(p, ProjPoint::affine(1.0))) return IntervalTag::boundary1;
  if (near(p, ProjPoint::infinity())) return IntervalTag::boundary_inf;
  // canonical form has b > 0 for finite points
  if (p.a() < 0.0) return IntervalTag::I;
  if (p.a() < p.b()) return IntervalTag::II;
  return IntervalTag::III;
}

namespace {

// Region by exact sign tests; only the marked points themselves are boundary.
// The logarithmic branches stay accurate right up to the seams, so they must
// not be clipped at the point tolerance.
IntervalTag exact_region(const ProjPoint& p) {
  if (p.a() == 0.0) return IntervalTag::boundary0;
  if (p.b() == 0.0) return IntervalTag::boundary_inf;
  if (p.a() == p.b()) return IntervalTag::boundary1;
  if (p.a() < 0.0) return IntervalTag::I;
  if (p.a() < p.b()) return IntervalTag::II;
  return IntervalTag::III;
}

}  // namespace

CirclePoint kappa(const ProjPoint& p) {
  const double a = p.a();
  const double b = p.b();
  switch (interval_classify(p)) {
    case IntervalTag::I: return CirclePoint(b / (b - a));
    case IntervalTag::II: return CirclePoint(a / b);
    case IntervalTag::III: return CirclePoint((a - b) / a);
    default: return CirclePoint(0.0);
  }
}

double kappa_prime(const ProjPoint& p) {
  const double a = p.a();
  const double b = p.b();
  switch (interval_classify(p)) {
    case IntervalTag::I: {
      const double r = b / (b - a);
      return r * r;
    }
    case IntervalTag::III: {
      const double r = b / a;
      return r * r;
    }
    case IntervalTag::boundary_inf: return 0.0;
    default: return 1.0;
  }
}

ProjPoint logit_D(const ProjPoint& p) {
  const IntervalTag tag = exact_region(p);
  if (tag == IntervalTag::boundary0 || tag == IntervalTag::boundary1) {
    return ProjPoint::infinity();
  }
  if (tag != IntervalTag::II) {
    // just outside [0, 1] by rounding
    const IntervalTag snapped = interval_classify(p);
    if (snapped == IntervalTag::boundary0 || snapped == IntervalTag::boundary1) {
      return ProjPoint::infinity();
    }
    raise(ErrorCode::domain_error, "logit is defined on [0, 1] only, got " + format_point(p));
  }
  return ProjPoint::affine(std::log(p.a()) - std::log(p.b() - p.a()));
}

double logistic(double g) {
  if (g >= 0.0) return 1.0 / (1.0 + std::exp(-g));
  const double e = std::exp(g);
  return e / (1.0 + e);
}

ProjPoint varkappa(const ProjPoint& p) {
  const double a = p.a();
  const double b = p.b();
  switch (exact_region(p)) {
    case IntervalTag::I:  // -log|x|
      return ProjPoint::affine(std::log(b) - std::log(-a));
    case IntervalTag::II:  // -log|1 - 1/x|
      return ProjPoint::affine(std::log(a) - std::log(b - a));
    case IntervalTag::III:  // -log|1 / (1 - x)|
      return ProjPoint::affine(std::log(a - b) - std::log(b));
    default: return ProjPoint::infinity();
  }
}

ProjPoint devadoss_gamma(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3) {
  return varkappa(cross_ratio(p0, p1, p2, p3));
}

long kappa_winding(std::span<const ProjPoint> loop) {
  std::vector<CirclePoint> images;
  images.reserve(loop.size());
  for (const ProjPoint& p : loop) images.push_back(kappa(p));
  return circle_winding(images);
}

KappaIntegral kappa_prime_integral() {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  // x = sigma^2(u) = 1 - 1/u maps (0, 1) onto (I), dx = du / u^2
  auto branch_one = [](double u) {
    return kappa_prime(ProjPoint::homogeneous(u - 1.0, u)) / (u * u);
  };
  auto branch_two = [](double u) { return kappa_prime(ProjPoint::affine(u)); };
  // x = sigma(u) = 1 / (1 - u) maps (0, 1) onto (III), dx = du / (1 - u)^2
  auto branch_three = [](double u) {
    const double w = 1.0 - u;
    return kappa_prime(ProjPoint::homogeneous(1.0, w)) / (w * w);
  };
  KappaIntegral out;
  out.branch_I = Quadrature::integrate(branch_one, 0.0, 1.0, 10, 1e-13);
  out.branch_II = Quadrature::integrate(branch_two, 0.0, 1.0, 10, 1e-13);
  out.branch_III = Quadrature::integrate(branch_three, 0.0, 1.0, 10, 1e-13);
  return out;
}

}  // namespace tricover
