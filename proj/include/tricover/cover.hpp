#pragma once

#include <span>
#include <vector>

#include "tricover/projline.hpp"

namespace tricover {

/// A point of the circle R/Z, stored as a representative in [0, 1).
class CirclePoint {
public:
  CirclePoint() = default;
  explicit CirclePoint(double t);

  double t() const { return t_; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

private:
  double t_ = 0.0;
};

/// t - floor(t), folded into [0, 1).
double reduce_mod1(double t);

/// Signed representative of s - t in [-1/2, 1/2).
double circle_delta(double s, double t);

/// min(|s - t|, 1 - |s - t|) on representatives.
double circle_distance(const CirclePoint& s, const CirclePoint& t);

/// Winding number of a closed circle-valued path, computed by lifting step by
/// step; the closing step from the last sample back to the first is included.
/// Throws LiftStepTooLarge when a step is at least 1/4.
long circle_winding(std::span<const CirclePoint> loop);

/// Open intervals (I) = (-inf, 0), (II) = (0, 1), (III) = (1, inf) and the three seams.
enum class IntervalTag { I, II, III, boundary0, boundary1, boundary_inf };

const char* to_string(IntervalTag tag);

IntervalTag interval_classify(const ProjPoint& p);

/// The three-fold cover P1(R) -> R/Z: sigma on (I), identity on (II),
/// sigma^-1 on (III), with {0, 1, inf} sent to 0.
CirclePoint kappa(const ProjPoint& p);

/// Derivative of kappa in the affine chart; 0 at infinity.
double kappa_prime(const ProjPoint& p);

/// Logit log(x / (1 - x)) on [0, 1], with D(0) = D(1) = inf.
/// Throws DomainError for points outside [0, 1].
ProjPoint logit_D(const ProjPoint& p);

/// Logistic function 1 / (1 + e^-g); inverse of logit_D on (0, 1).
double logistic(double g);

/// D o kappa, evaluated by its three branch formulas. inf at {0, 1, inf}.
ProjPoint varkappa(const ProjPoint& p);

/// Signed internal-edge length of the three-leaf tree with ideal vertices
/// p0 (root), p1, p2, p3: varkappa of the cross-ratio.
ProjPoint devadoss_gamma(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3);

/// Winding number of kappa along a sampled closed loop in P1(R).
long kappa_winding(std::span<const ProjPoint> loop);

/// Integral of kappa' over each of the three branches, each computed as a
/// bounded quadrature after pulling the branch back to (0, 1) by a power of sigma.
struct KappaIntegral {
  double branch_I = 0.0;
  double branch_II = 0.0;
  double branch_III = 0.0;
  double total() const { return branch_I + branch_II + branch_III; }
};

KappaIntegral kappa_prime_integral();

}  // namespace tricover
