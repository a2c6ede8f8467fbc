#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tricover/cover.hpp"
#include "tricover/projline.hpp"
#include "tricover/tangent_group.hpp"

namespace tricover {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// A hyperbolic geodesic of the Poincare disk between two ideal points.
struct ArcDescriptor {
  enum class Kind { diameter, circular };

  Kind kind = Kind::diameter;
  Vec2 center;          // circular arcs only
  double radius = 0.0;  // circular arcs only
  CirclePoint end1;
  CirclePoint end2;

  /// |center|^2 - 1 - radius^2; zero for a circle orthogonal to the boundary.
  double orthogonality_residual() const;
  /// The point of the arc closest to the origin.
  Vec2 midpoint() const;
};

/// Throws CoincidentIdealPoints when t1 and t2 agree to 1e-12.
ArcDescriptor ideal_geodesic(const CirclePoint& t1, const CirclePoint& t2);

/// Schematic three-leaf tree: leaves paired as {p1, p2} | {p3, p0}, each pair
/// joined at the midpoint of its geodesic, the two joints forming the internal edge.
struct Tree3Figure {
  std::array<ProjPoint, 4> points;
  std::array<CirclePoint, 4> ideal;  // cayley images, in turns
  std::vector<ArcDescriptor> geodesics;
  std::array<Vec2, 2> joints;
  ProjPoint gamma;
  bool boundary = false;  // gamma = inf
};

Tree3Figure tree3_figure(const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3);

/// One loop of P1(R): (cayley angle of x, kappa(x)) at k equally spaced
/// parameters, first and last sample both at x = 1. Throws InvalidArgument for k < 2.
std::vector<std::pair<CirclePoint, CirclePoint>> helix_samples(int k);

struct KappaGraphSample {
  CirclePoint t;  // loop parameter; x = stereo_param(t)
  ProjPoint x;
  CirclePoint kappa;
};
std::vector<KappaGraphSample> kappa_graph_samples(int k);

std::string tree3_svg(const Tree3Figure& fig);
std::string tree3_csv(const Tree3Figure& fig);
std::string helix_csv(const std::vector<std::pair<CirclePoint, CirclePoint>>& samples);
std::string helix_svg(const std::vector<std::pair<CirclePoint, CirclePoint>>& samples);
std::string kappa_graph_csv(const std::vector<KappaGraphSample>& samples);
std::string kappa_graph_svg(const std::vector<KappaGraphSample>& samples);

}  // namespace tricover
