#include "tricover/plots.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tricover/errors.hpp"
#include "tricover/io.hpp"

namespace tricover {

namespace {

Vec2 on_circle(const CirclePoint& t) {
  const UnitComplex z = e_turns(t);
  return {z.re(), z.im()};
}

// SVG coordinates carry 9 significant digits
std::string fmt9(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

constexpr double kCanvas = 1000.0;
constexpr double kDiskRadius = 480.0;

std::string disk_xy(Vec2 p) {
  return fmt9(kCanvas / 2 + kDiskRadius * p.x) + "," + fmt9(kCanvas / 2 - kDiskRadius * p.y);
}

constexpr double kMargin = 20.0;
constexpr double kSide = kCanvas - 2 * kMargin;

std::string square_xy(double s, double t) {
  return fmt9(kMargin + kSide * s) + "," + fmt9(kCanvas - kMargin - kSide * t);
}

std::string svg_header() {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" "
         "height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
}

// Polylines on the unit-square torus, broken wherever a coordinate wraps.
std::string torus_polylines(const std::vector<std::pair<double, double>>& pts,
                            const char* stroke) {
  std::ostringstream out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\""
          << current << "\"/>\n";
    }
    current.clear();
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && (std::abs(pts[i].first - pts[i - 1].first) > 0.5 ||
                  std::abs(pts[i].second - pts[i - 1].second) > 0.5)) {
      flush();
    }
    if (!current.empty()) current += ' ';
    current += square_xy(pts[i].first, pts[i].second);
  }
  flush();
  return out.str();
}

std::string torus_frame() {
  return "  <rect x=\"20\" y=\"20\" width=\"960\" height=\"960\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

double ArcDescriptor::orthogonality_residual() const {
  if (kind == Kind::diameter) return 0.0;
  return center.x * center.x + center.y * center.y - 1.0 - radius * radius;
}

Vec2 ArcDescriptor::midpoint() const {
  if (kind == Kind::diameter) return {0.0, 0.0};
  const double norm = std::hypot(center.x, center.y);
  const double s = 1.0 - radius / norm;
  return {center.x * s, center.y * s};
}

ArcDescriptor ideal_geodesic(const CirclePoint& t1, const CirclePoint& t2) {
  const double gap = circle_distance(t1, t2);
  if (gap < 1e-12) raise(ErrorCode::coincident_ideal_points, "geodesic endpoints coincide");
  ArcDescriptor arc;
  arc.end1 = t1;
  arc.end2 = t2;
  if (std::abs(gap - 0.5) <= 1e-12) {
    arc.kind = ArcDescriptor::Kind::diameter;
    return arc;
  }
  // half the central angle between the endpoints
  const double half = std::numbers::pi * gap;
  const Vec2 p = on_circle(t1);
  const Vec2 q = on_circle(t2);
  const double sx = p.x + q.x;
  const double sy = p.y + q.y;
  const double norm = std::hypot(sx, sy);
  const double dist = 1.0 / std::cos(half);
  arc.kind = ArcDescriptor::Kind::circular;
  arc.center = {sx / norm * dist, sy / norm * dist};
  arc.radius = std::tan(half);
  return arc;
}

Tree3Figure tree3_figure(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3) {
  Tree3Figure fig;
  fig.points = {p0, p1, p2, p3};
  for (int i = 0; i < 4; ++i) fig.ideal[i] = cayley(fig.points[i]).turns();
  fig.gamma = devadoss_gamma(p0, p1, p2, p3);
  fig.boundary = fig.gamma.is_infinity();

  const std::array<std::array<int, 2>, 2> pairs{{{1, 2}, {3, 0}}};
  for (int k = 0; k < 2; ++k) {
    const CirclePoint& a = fig.ideal[pairs[k][0]];
    const CirclePoint& b = fig.ideal[pairs[k][1]];
    if (circle_distance(a, b) < 1e-12) {
      fig.joints[k] = on_circle(a);  // collapsed pair
      continue;
    }
    const ArcDescriptor arc = ideal_geodesic(a, b);
    fig.geodesics.push_back(arc);
    fig.joints[k] = arc.midpoint();
  }
  return fig;
}

std::vector<std::pair<CirclePoint, CirclePoint>> helix_samples(int k) {
  if (k < 2) raise(ErrorCode::invalid_argument, "helix needs at least two samples");
  std::vector<std::pair<CirclePoint, CirclePoint>> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const ProjPoint x = stereo_param(CirclePoint(static_cast<double>(j) / (k - 1)));
    out.emplace_back(cayley(x).turns(), kappa(x));
  }
  return out;
}

std::vector<KappaGraphSample> kappa_graph_samples(int k) {
  if (k < 2) raise(ErrorCode::invalid_argument, "graph needs at least two samples");
  std::vector<KappaGraphSample> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const CirclePoint t(static_cast<double>(j) / (k - 1));
    const ProjPoint x = stereo_param(t);
    out.push_back({t, x, kappa(x)});
  }
  return out;
}

std::string tree3_svg(const Tree3Figure& fig) {
  std::ostringstream out;
  out << svg_header();
  out << "  <circle cx=\"500\" cy=\"500\" r=\"480\" fill=\"none\" stroke=\"black\"/>\n";
  for (const ArcDescriptor& arc : fig.geodesics) {
    const Vec2 p = on_circle(arc.end1);
    const Vec2 q = on_circle(arc.end2);
    out << "  <polyline fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6,4\" points=\"";
    if (arc.kind == ArcDescriptor::Kind::diameter) {
      out << disk_xy(p) << ' ' << disk_xy(q);
    } else {
      const double a1 = std::atan2(p.y - arc.center.y, p.x - arc.center.x);
      const double a2 = std::atan2(q.y - arc.center.y, q.x - arc.center.x);
      double sweep = a2 - a1;
      sweep -= 2 * std::numbers::pi * std::round(sweep / (2 * std::numbers::pi));
      constexpr int kSegments = 64;
      for (int s = 0; s <= kSegments; ++s) {
        const double ang = a1 + sweep * s / kSegments;
        if (s) out << ' ';
        out << disk_xy({arc.center.x + arc.radius * std::cos(ang),
                        arc.center.y + arc.radius * std::sin(ang)});
      }
    }
    out << "\"/>\n";
  }
  const std::array<int, 4> joint_of{1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) {
    const Vec2 leaf = on_circle(fig.ideal[i]);
    out << "  <line x1=\"" << fmt9(kCanvas / 2 + kDiskRadius * leaf.x) << "\" y1=\""
        << fmt9(kCanvas / 2 - kDiskRadius * leaf.y) << "\" x2=\""
        << fmt9(kCanvas / 2 + kDiskRadius * fig.joints[joint_of[i]].x) << "\" y2=\""
        << fmt9(kCanvas / 2 - kDiskRadius * fig.joints[joint_of[i]].y)
        << "\" stroke=\"" << (i == 0 ? "#c0392b" : "black") << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << fmt9(kCanvas / 2 + (kDiskRadius + 12) * leaf.x) << "\" y=\""
        << fmt9(kCanvas / 2 - (kDiskRadius + 12) * leaf.y) << "\" font-size=\"16\">x" << i
        << "</text>\n";
  }
  out << "  <line x1=\"" << fmt9(kCanvas / 2 + kDiskRadius * fig.joints[0].x) << "\" y1=\""
      << fmt9(kCanvas / 2 - kDiskRadius * fig.joints[0].y) << "\" x2=\""
      << fmt9(kCanvas / 2 + kDiskRadius * fig.joints[1].x) << "\" y2=\""
      << fmt9(kCanvas / 2 - kDiskRadius * fig.joints[1].y)
      << "\" stroke=\"#2471a3\" stroke-width=\"3\"/>\n";
  out << "  <text x=\"20\" y=\"30\" font-size=\"20\">gamma = " << format_point(fig.gamma)
      << (fig.boundary ? " (boundary)" : "") << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string tree3_csv(const Tree3Figure& fig) {
  std::ostringstream out;
  out << "kind,label,x,y,extra\n";
  for (int i = 0; i < 4; ++i) {
    const Vec2 v = on_circle(fig.ideal[i]);
    out << "ideal,x" << i << ',' << format_number(v.x) << ',' << format_number(v.y) << ','
        << format_point(fig.points[i]) << '\n';
  }
  for (std::size_t g = 0; g < fig.geodesics.size(); ++g) {
    const ArcDescriptor& arc = fig.geodesics[g];
    if (arc.kind == ArcDescriptor::Kind::diameter) {
      out << "diameter,arc" << g << ",0,0,0\n";
    } else {
      out << "circular,arc" << g << ',' << format_number(arc.center.x) << ','
          << format_number(arc.center.y) << ',' << format_number(arc.radius) << '\n';
    }
  }
  for (int k = 0; k < 2; ++k) {
    out << "joint,j" << k << ',' << format_number(fig.joints[k].x) << ','
        << format_number(fig.joints[k].y) << ",\n";
  }
  out << "gamma,gamma,,," << format_point(fig.gamma) << '\n';
  return out.str();
}

std::string helix_csv(const std::vector<std::pair<CirclePoint, CirclePoint>>& samples) {
  std::ostringstream out;
  out << "index,cayley_turns,kappa\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << i << ',' << format_number(samples[i].first.t()) << ','
        << format_number(samples[i].second.t()) << '\n';
  }
  return out.str();
}

std::string helix_svg(const std::vector<std::pair<CirclePoint, CirclePoint>>& samples) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [s, t] : samples) pts.emplace_back(s.t(), t.t());
  return svg_header() + torus_frame() + torus_polylines(pts, "#2471a3") + "</svg>\n";
}

std::string kappa_graph_csv(const std::vector<KappaGraphSample>& samples) {
  std::ostringstream out;
  out << "t,x,kappa\n";
  for (const KappaGraphSample& s : samples) {
    out << format_number(s.t.t()) << ',' << format_point(s.x) << ','
        << format_number(s.kappa.t()) << '\n';
  }
  return out.str();
}

std::string kappa_graph_svg(const std::vector<KappaGraphSample>& samples) {
  std::vector<std::pair<double, double>> pts;
  for (const KappaGraphSample& s : samples) pts.emplace_back(s.t.t(), s.kappa.t());
  return svg_header() + torus_frame() + torus_polylines(pts, "#c0392b") + "</svg>\n";
}

}  // namespace tricover
