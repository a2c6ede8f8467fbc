#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tricover/cover.hpp"
#include "tricover/projline.hpp"

namespace tricover {

inline constexpr double kDefaultStep = 1e-6;
inline constexpr double kDefaultRankTol = 1e-6;

/// n + 1 marked points (x0, ..., xn) of P1(R); x0 is the root.
class Configuration {
public:
  /// Throws InvalidArgument unless n >= 3 and points.size() == n + 1.
  Configuration(int n, std::vector<ProjPoint> points);

  int n() const { return n_; }
  const std::vector<ProjPoint>& points() const { return points_; }
  const ProjPoint& operator[](int i) const { return points_.at(static_cast<std::size_t>(i)); }

  /// Smallest pairwise chordal distance.
  double min_separation() const;
  /// All points pairwise distinct at the given tolerance.
  bool in_open_stratum(double tol = kPointTolerance) const { return min_separation() > tol; }

private:
  int n_;
  std::vector<ProjPoint> points_;
};

/// Affine coordinates of x1, ..., x_{n-2} in the gauge x0 = 0, x_{n-1} = 1, xn = inf.
struct ChartPoint {
  int n = 3;
  Eigen::VectorXd u;

  /// Throws InvalidArgument when u.size() != n - 2 or n < 3.
  ChartPoint(int n, Eigen::VectorXd u);
};

/// S = {i < j < k}, 1-based leaf labels.
struct TripleIndex {
  int i;
  int j;
  int k;
  friend bool operator==(const TripleIndex&, const TripleIndex&) = default;
};

std::int64_t binomial3(int n);

/// All C(n, 3) triples in lexicographic order.
std::vector<TripleIndex> triples(int n);

/// G = C(n,3)^-1 J^T J in chart coordinates.
struct MetricMatrix {
  Eigen::MatrixXd g;

  double asymmetry() const;
  /// Smallest eigenvalue of the symmetric part.
  double min_eigenvalue() const;
};

/// Throws DegenerateAnchor when the gauge points coincide, InvalidChart when a
/// leaf lands on the point at infinity.
ChartPoint chart_coords(const Configuration& c);

/// (0, u1, ..., u_{n-2}, 1, inf). Throws InvalidChart on coincidences.
Configuration chart_embed(const ChartPoint& u);

/// (x0, xi, xj, xk). Throws BadIndex for an invalid triple.
std::array<ProjPoint, 4> forgetful(const Configuration& c, const TripleIndex& s);

CirclePoint kappa_S(const Configuration& c, const TripleIndex& s);

/// (kappa_S(c))_S over the lexicographic triples.
std::vector<CirclePoint> albanese(const Configuration& c);

/// Chordal distance from u to the nearest chart seam (a collision among
/// 0, u1, ..., u_{n-2}, 1, inf).
double seam_distance(const ChartPoint& u);

enum class SeamPolicy {
  /// Throw SeamTooClose when seam_distance(u) <= 10 h.
  strict,
  /// Central differences where a step of h crosses no seam; otherwise a
  /// second-order one-sided difference from the base point's side.
  one_sided,
};

/// C(n,3) x (n-2) finite-difference Jacobian of the circle-lifted kappa_S.
Eigen::MatrixXd albanese_jacobian(const ChartPoint& u, double h = kDefaultStep,
                                  SeamPolicy policy = SeamPolicy::strict);

/// Jacobian in the angle coordinates theta_m = atan(u_m): central differences of
/// step h in each angle, i.e. albanese_jacobian(u) diag(1 + u_m^2) without the
/// loss of accuracy for coordinates near infinity. Throws SeamTooClose when
/// seam_distance(u) <= 10 h.
Eigen::MatrixXd albanese_jacobian_angle(const ChartPoint& u, double h = kDefaultStep);

/// The same Jacobian from the chain rule kappa'(rho_S) d rho_S / du.
Eigen::MatrixXd albanese_jacobian_analytic(const ChartPoint& u);

/// Singular values above tol * sigma_max. Throws NonFiniteEntry.
int jacobian_rank(const Eigen::MatrixXd& j, double tol = kDefaultRankTol);

MetricMatrix metric_matrix(const ChartPoint& u, double h = kDefaultStep,
                           SeamPolicy policy = SeamPolicy::strict);

/// v^T G(u) w. Throws DimensionMismatch.
double metric_eval(const ChartPoint& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                   double h = kDefaultStep);

/// New x_{perm[i-1]} = old x_i for leaves; the root is fixed.
/// perm holds the 1-based images of 1..n. Throws NotAPermutation.
Configuration perm_apply(std::span<const int> perm, const Configuration& c);

/// chart_coords(perm_apply(perm, chart_embed(u))).
ChartPoint chart_transition(std::span<const int> perm, const ChartPoint& u);

/// Sum over segments of sqrt(du^T G(mid) du); segments are split where they
/// cross a seam. Throws InvalidArgument for fewer than two samples.
double curve_length(std::span<const ChartPoint> samples, double h = kDefaultStep);

struct RankScanReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double h = kDefaultStep;
  double tol = kDefaultRankTol;
  int full_rank_count = 0;
  int min_rank = 0;
  /// Smallest sigma_min / sigma_max over all trials.
  double worst_sigma_ratio = 0.0;
  /// Redraws caused by near-seam samples.
  std::int64_t rejected_draws = 0;
  /// First chart with rank below n - 2, if any.
  std::optional<Eigen::VectorXd> counterexample;
};

/// Random open-stratum charts (coordinates drawn from stereo_param of uniform
/// R/Z), rank of the Albanese Jacobian at each, taken in angle coordinates so
/// that a coordinate near infinity does not fake a small singular value. Trial t uses a stream seeded
/// from (seed, t) alone, so the report does not depend on evaluation order.
/// Throws InvalidArgument unless 3 <= n <= 8 and trials >= 1.
RankScanReport rank_scan(int n, int trials, std::uint64_t seed, double h = kDefaultStep,
                         double tol = kDefaultRankTol);

/// The chart point drawn for trial `trial` of a scan.
ChartPoint rank_scan_sample(int n, std::uint64_t seed, int trial, double h,
                            std::int64_t* rejected = nullptr);

}  // namespace tricover
