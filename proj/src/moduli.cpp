#include "tricover/moduli.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tricover/errors.hpp"
#include "tricover/tangent_group.hpp"

namespace tricover {

Configuration::Configuration(int n, std::vector<ProjPoint> points)
    : n_(n), points_(std::move(points)) {
  if (n_ < 3) raise(ErrorCode::invalid_argument, "need n >= 3 leaves");
  if (points_.size() != static_cast<std::size_t>(n_) + 1) {
    raise(ErrorCode::invalid_argument, "configuration with n = " + std::to_string(n_) +
                                           " needs " + std::to_string(n_ + 1) + " points");
  }
}

double Configuration::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      best = std::min(best, chordal_distance(points_[i], points_[j]));
    }
  }
  return best;
}

ChartPoint::ChartPoint(int n_, Eigen::VectorXd u_) : n(n_), u(std::move(u_)) {
  if (n < 3 || u.size() != n - 2) {
    raise(ErrorCode::invalid_argument, "chart for n = " + std::to_string(n) + " needs " +
                                           std::to_string(n - 2) + " coordinates");
  }
}

std::int64_t binomial3(int n) {
  const std::int64_t m = n;
  return m * (m - 1) * (m - 2) / 6;
}

std::vector<TripleIndex> triples(int n) {
  std::vector<TripleIndex> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(binomial3(n), 0)));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

double MetricMatrix::asymmetry() const { return (g - g.transpose()).cwiseAbs().maxCoeff(); }

double MetricMatrix::min_eigenvalue() const {
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ChartPoint chart_coords(const Configuration& c) {
  const int n = c.n();
  const MobiusMap gauge = normalize_quadruple(c[0], c[n - 1], c[n]);
  Eigen::VectorXd u(n - 2);
  for (int i = 1; i <= n - 2; ++i) {
    const ProjPoint image = gauge.apply(c[i]);
    if (near(image, ProjPoint::infinity())) {
      raise(ErrorCode::invalid_chart, "leaf " + std::to_string(i) + " collides with leaf " +
                                          std::to_string(n));
    }
    u[i - 1] = image.value();
  }
  return ChartPoint(n, std::move(u));
}

namespace {

std::vector<ProjPoint> chart_points(const Eigen::VectorXd& u) {
  std::vector<ProjPoint> pts;
  pts.reserve(static_cast<std::size_t>(u.size()) + 3);
  pts.push_back(ProjPoint::affine(0.0));
  for (Eigen::Index m = 0; m < u.size(); ++m) pts.push_back(ProjPoint::affine(u[m]));
  pts.push_back(ProjPoint::affine(1.0));
  pts.push_back(ProjPoint::infinity());
  return pts;
}

// kappa_S for every triple, straight from chart coordinates
Eigen::VectorXd kappa_values(const Eigen::VectorXd& u, const std::vector<TripleIndex>& ts) {
  const std::vector<ProjPoint> pts = chart_points(u);
  Eigen::VectorXd out(static_cast<Eigen::Index>(ts.size()));
  for (std::size_t r = 0; r < ts.size(); ++r) {
    const TripleIndex& s = ts[r];
    out[static_cast<Eigen::Index>(r)] =
        kappa(cross_ratio(pts[0], pts[s.i], pts[s.j], pts[s.k])).t();
  }
  return out;
}

Eigen::VectorXd lifted_delta(const Eigen::VectorXd& to, const Eigen::VectorXd& from) {
  Eigen::VectorXd d(to.size());
  for (Eigen::Index r = 0; r < to.size(); ++r) d[r] = circle_delta(to[r], from[r]);
  return d;
}

struct Gaps {
  double below;
  double above;
};

// affine distance from u_m to the nearest seam value on either side
Gaps seam_gaps(const Eigen::VectorXd& u, Eigen::Index m) {
  Gaps g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  auto visit = [&](double w) {
    const double d = w - u[m];
    if (d >= 0.0) g.above = std::min(g.above, d);
    if (d <= 0.0) g.below = std::min(g.below, -d);
  };
  visit(0.0);
  visit(1.0);
  for (Eigen::Index l = 0; l < u.size(); ++l) {
    if (l != m) visit(u[l]);
  }
  return g;
}

}  // namespace

Configuration chart_embed(const ChartPoint& u) {
  for (Eigen::Index m = 0; m < u.u.size(); ++m) {
    if (!std::isfinite(u.u[m])) raise(ErrorCode::invalid_chart, "chart coordinates must be finite");
  }
  Configuration c(u.n, chart_points(u.u));
  if (!c.in_open_stratum()) raise(ErrorCode::invalid_chart, "chart coordinates collide");
  return c;
}

std::array<ProjPoint, 4> forgetful(const Configuration& c, const TripleIndex& s) {
  if (!(1 <= s.i && s.i < s.j && s.j < s.k && s.k <= c.n())) {
    raise(ErrorCode::bad_index, "triple {" + std::to_string(s.i) + "," + std::to_string(s.j) +
                                    "," + std::to_string(s.k) + "} invalid for n = " +
                                    std::to_string(c.n()));
  }
  return {c[0], c[s.i], c[s.j], c[s.k]};
}

CirclePoint kappa_S(const Configuration& c, const TripleIndex& s) {
  const auto q = forgetful(c, s);
  return kappa(cross_ratio(q[0], q[1], q[2], q[3]));
}

std::vector<CirclePoint> albanese(const Configuration& c) {
  std::vector<CirclePoint> out;
  for (const TripleIndex& s : triples(c.n())) out.push_back(kappa_S(c, s));
  return out;
}

double seam_distance(const ChartPoint& u) {
  const std::vector<ProjPoint> pts = chart_points(u.u);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::min(best, chordal_distance(pts[i], pts[j]));
  return best;
}

Eigen::MatrixXd albanese_jacobian(const ChartPoint& u, double h, SeamPolicy policy) {
  if (!(h > 0.0)) raise(ErrorCode::invalid_argument, "step h must be positive");
  if (policy == SeamPolicy::strict && !(seam_distance(u) > 10.0 * h)) {
    raise(ErrorCode::seam_too_close, "chart point within 10h of a seam");
  }
  const std::vector<TripleIndex> ts = triples(u.n);
  const Eigen::Index dim = u.u.size();
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(ts.size()), dim);
  const Eigen::VectorXd base = kappa_values(u.u, ts);

  for (Eigen::Index m = 0; m < dim; ++m) {
    auto shifted = [&](double step) {
      Eigen::VectorXd v = u.u;
      v[m] += step;
      return kappa_values(v, ts);
    };
    const Gaps gaps = seam_gaps(u.u, m);
    if (policy == SeamPolicy::strict || (gaps.below > h && gaps.above > h)) {
      jac.col(m) = lifted_delta(shifted(h), shifted(-h)) / (2.0 * h);
    } else if (gaps.above > 2.0 * h) {
      jac.col(m) = (4.0 * lifted_delta(shifted(h), base) - lifted_delta(shifted(2.0 * h), base)) /
                   (2.0 * h);
    } else if (gaps.below > 2.0 * h) {
      jac.col(m) =
          -(4.0 * lifted_delta(shifted(-h), base) - lifted_delta(shifted(-2.0 * h), base)) /
          (2.0 * h);
    } else {
      raise(ErrorCode::seam_too_close,
            "coordinate " + std::to_string(m + 1) + " has seams within 2h on both sides");
    }
  }
  return jac;
}

Eigen::MatrixXd albanese_jacobian_angle(const ChartPoint& u, double h) {
  if (!(h > 0.0)) raise(ErrorCode::invalid_argument, "step h must be positive");
  if (!(seam_distance(u) > 10.0 * h)) {
    raise(ErrorCode::seam_too_close, "chart point within 10h of a seam");
  }
  const std::vector<TripleIndex> ts = triples(u.n);
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(ts.size()), u.u.size());
  const double t = std::tan(h);
  for (Eigen::Index m = 0; m < u.u.size(); ++m) {
    // tan(theta +- h) by the addition formula; 1 -+ u t stays positive off the seams
    Eigen::VectorXd plus = u.u, minus = u.u;
    plus[m] = (u.u[m] + t) / (1.0 - u.u[m] * t);
    minus[m] = (u.u[m] - t) / (1.0 + u.u[m] * t);
    jac.col(m) = lifted_delta(kappa_values(plus, ts), kappa_values(minus, ts)) / (2.0 * h);
  }
  return jac;
}

Eigen::MatrixXd albanese_jacobian_analytic(const ChartPoint& u) {
  const std::vector<TripleIndex> ts = triples(u.n);
  const int n = u.n;
  const Eigen::Index dim = u.u.size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ts.size()), dim);
  const std::vector<ProjPoint> pts = chart_points(u.u);

  for (std::size_t r = 0; r < ts.size(); ++r) {
    const TripleIndex& s = ts[r];
    const std::array<int, 4> label{0, s.i, s.j, s.k};
    // affine values; the last leaf n sits at infinity and only ever occupies slot 3
    std::array<double, 4> p{};
    for (int q = 0; q < 4; ++q) p[q] = label[q] == n ? 0.0 : pts[label[q]].value();
    const bool p3_inf = label[3] == n;
    auto inv = [](double x) { return 1.0 / x; };

    std::array<double, 4> dlog{};
    dlog[1] = -inv(p[0] - p[1]) - (p3_inf ? 0.0 : inv(p[1] - p[3]));
    dlog[2] = inv(p[0] - p[2]) + (p3_inf ? 0.0 : inv(p[2] - p[3]));
    dlog[3] = p3_inf ? 0.0 : -inv(p[2] - p[3]) + inv(p[1] - p[3]);

    const ProjPoint rho = cross_ratio(pts[0], pts[s.i], pts[s.j], pts[s.k]);
    const double scale = kappa_prime(rho) * rho.value();
    for (int q = 1; q < 4; ++q) {
      if (label[q] <= n - 2) jac(static_cast<Eigen::Index>(r), label[q] - 1) += scale * dlog[q];
    }
  }
  return jac;
}

int jacobian_rank(const Eigen::MatrixXd& j, double tol) {
  if (!j.allFinite()) raise(ErrorCode::non_finite_entry, "Jacobian has non-finite entries");
  if (j.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() ? sv[0] : 0.0;
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * smax) ++rank;
  }
  return rank;
}

MetricMatrix metric_matrix(const ChartPoint& u, double h, SeamPolicy policy) {
  const Eigen::MatrixXd j = albanese_jacobian(u, h, policy);
  Eigen::MatrixXd g = j.transpose() * j / static_cast<double>(binomial3(u.n));
  g = 0.5 * (g + g.transpose());
  return {g};
}

double metric_eval(const ChartPoint& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                   double h) {
  if (v.size() != u.u.size() || w.size() != u.u.size()) {
    raise(ErrorCode::dimension_mismatch, "tangent vectors need " + std::to_string(u.u.size()) +
                                             " components");
  }
  return v.dot(metric_matrix(u, h).g * w);
}

Configuration perm_apply(std::span<const int> perm, const Configuration& c) {
  const int n = c.n();
  if (perm.size() != static_cast<std::size_t>(n)) {
    raise(ErrorCode::not_a_permutation, "permutation must have " + std::to_string(n) + " entries");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int image : perm) {
    if (image < 1 || image > n || seen[image]) {
      raise(ErrorCode::not_a_permutation, "not a bijection of {1.." + std::to_string(n) + "}");
    }
    seen[image] = true;
  }
  std::vector<ProjPoint> pts = c.points();
  for (int i = 1; i <= n; ++i) pts[perm[i - 1]] = c[i];
  return Configuration(n, std::move(pts));
}

ChartPoint chart_transition(std::span<const int> perm, const ChartPoint& u) {
  return chart_coords(perm_apply(perm, chart_embed(u)));
}

double curve_length(std::span<const ChartPoint> samples, double h) {
  if (samples.size() < 2) raise(ErrorCode::invalid_argument, "curve needs at least two samples");
  const int n = samples.front().n;
  for (const ChartPoint& s : samples) {
    if (s.n != n) raise(ErrorCode::dimension_mismatch, "curve samples from different charts");
  }
  double total = 0.0;
  for (std::size_t seg = 0; seg + 1 < samples.size(); ++seg) {
    const Eigen::VectorXd& p = samples[seg].u;
    const Eigen::VectorXd& q = samples[seg + 1].u;
    const Eigen::VectorXd dq = q - p;
    if (dq.norm() == 0.0) continue;

    // parameters in (0, 1) where the segment meets a seam
    std::vector<double> cuts{0.0, 1.0};
    auto add_root = [&](double f0, double f1) {
      if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) cuts.push_back(f0 / (f0 - f1));
    };
    for (Eigen::Index m = 0; m < p.size(); ++m) {
      add_root(p[m], q[m]);
      add_root(p[m] - 1.0, q[m] - 1.0);
      for (Eigen::Index l = m + 1; l < p.size(); ++l) add_root(p[m] - p[l], q[m] - q[l]);
    }
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double width = cuts[c + 1] - cuts[c];
      if (width <= 0.0) continue;
      const ChartPoint mid(n, p + 0.5 * (cuts[c] + cuts[c + 1]) * dq);
      const Eigen::VectorXd piece = width * dq;
      const MetricMatrix g = metric_matrix(mid, h, SeamPolicy::one_sided);
      total += std::sqrt(std::max(0.0, piece.dot(g.g * piece)));
    }
  }
  return total;
}

namespace {

constexpr int kMaxRedraws = 10000;

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

ChartPoint rank_scan_sample(int n, std::uint64_t seed, int trial, double h,
                            std::int64_t* rejected) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 gen(seq);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Eigen::VectorXd u(n - 2);
    bool finite = true;
    for (int m = 0; m < n - 2; ++m) {
      const ProjPoint x = stereo_param(CirclePoint(uniform01(gen)));
      if (x.is_infinity()) finite = false;
      u[m] = finite ? x.value() : 0.0;
    }
    if (finite) {
      ChartPoint chart(n, std::move(u));
      if (seam_distance(chart) > 10.0 * h) return chart;
    }
    if (rejected) ++*rejected;
  }
  raise(ErrorCode::seam_too_close, "could not draw an off-seam chart point");
}

RankScanReport rank_scan(int n, int trials, std::uint64_t seed, double h, double tol) {
  if (n < 3 || n > 8) raise(ErrorCode::invalid_argument, "rank scan supports 3 <= n <= 8");
  if (trials < 1) raise(ErrorCode::invalid_argument, "rank scan needs at least one trial");
  if (!(h > 0.0) || !(tol > 0.0)) raise(ErrorCode::invalid_argument, "h and tol must be positive");

  RankScanReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.h = h;
  report.tol = tol;
  report.min_rank = n - 2;
  report.worst_sigma_ratio = 1.0;

  for (int t = 0; t < trials; ++t) {
    const ChartPoint u = rank_scan_sample(n, seed, t, h, &report.rejected_draws);
    const Eigen::MatrixXd j = albanese_jacobian_angle(u, h);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double ratio = sv[0] > 0.0 ? sv[sv.size() - 1] / sv[0] : 0.0;
    const int rank = jacobian_rank(j, tol);

    report.worst_sigma_ratio = std::min(report.worst_sigma_ratio, ratio);
    report.min_rank = std::min(report.min_rank, rank);
    if (rank == n - 2) {
      ++report.full_rank_count;
    } else if (!report.counterexample) {
      report.counterexample = u.u;
    }
  }
  return report;
}

}  // namespace tricover
