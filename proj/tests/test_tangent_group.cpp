#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "test_support.hpp"
#include "tricover/errors.hpp"
#include "tricover/tangent_group.hpp"

using namespace tricover;
using tricover::testing::Rng;

namespace {
ProjPoint pt(double x) { return ProjPoint::affine(x); }
const ProjPoint kInf = ProjPoint::infinity();
const Complex kI(0.0, 1.0);

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("sincos_pi is exact at quarter turns") {
  CHECK(sincos_pi(0.5).cos == 0.0);
  CHECK(sincos_pi(0.5).sin == 1.0);
  CHECK(sincos_pi(1.0).sin == 0.0);
  CHECK(sincos_pi(-1.5).cos == 0.0);
  CHECK(sincos_pi(0.25).sin == sincos_pi(0.25).cos);
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-5, 5);
    CHECK(sincos_pi(x).sin == doctest::Approx(std::sin(std::numbers::pi * x)).epsilon(1e-12));
    CHECK(sincos_pi(x).cos == doctest::Approx(std::cos(std::numbers::pi * x)).epsilon(1e-12));
  }
}

TEST_CASE("e_turns is a homomorphism") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const double s = rng.uniform(), t = rng.uniform();
    const Complex lhs = e_turns(CirclePoint(s + t)).value();
    const Complex rhs = e_turns(CirclePoint(s)).value() * e_turns(CirclePoint(t)).value();
    CHECK(close(lhs, rhs, 1e-14));
    CHECK(std::abs(std::abs(lhs) - 1.0) < 1e-12);
    CHECK(circle_distance(e_turns(CirclePoint(s)).turns(), CirclePoint(s)) < 1e-14);
  }
  CHECK_THROWS_AS(UnitComplex(Complex(2.0, 0.0)), Error);
}

TEST_CASE("cayley") {
  CHECK(cayley(kInf).value() == kI);
  CHECK(cayley(pt(1.0)).value() == Complex(1.0, 0.0));
  CHECK(cayley(pt(-1.0)).value() == Complex(-1.0, 0.0));
  CHECK(cayley(pt(0.0)).value() == -kI);

  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.affine();
    const Complex want = (Complex(x, 0.0) - kI) / (1.0 - kI * x);
    CHECK(close(cayley(pt(x)).value(), want, 1e-14));
  }
}

TEST_CASE("cayley_inv") {
  CHECK(cayley_inv(kI) == kInf);
  CHECK(cayley_inv(Complex(-1.0, 0.0)) == pt(-1.0));
  const ProjPoint x = cayley_inv(e_turns(CirclePoint(0.125)));
  CHECK(x.value() == doctest::Approx(2.414213562373095).epsilon(1e-14));
  CHECK_THROWS_AS(cayley_inv(Complex(0.5, 0.0)), Error);
  try {
    cayley_inv(Complex(1.0 + 1e-6, 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::off_circle);
  }

  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const ProjPoint p = rng.point();
    CHECK(near(cayley_inv(cayley(p)), p, 1e-14));
    const UnitComplex z = e_turns(CirclePoint(rng.uniform()));
    CHECK(close(cayley(cayley_inv(z)).value(), z.value(), 1e-14));
  }
}

TEST_CASE("stereo_param") {
  CHECK(near(stereo_param(CirclePoint(0.0)), pt(1.0), 1e-15));
  CHECK(stereo_param(CirclePoint(0.25)) == kInf);
  CHECK(near(stereo_param(CirclePoint(0.5)), pt(-1.0), 1e-15));
  Rng rng(25);
  for (int i = 0; i < 500; ++i) {
    const CirclePoint t(rng.uniform());
    CHECK(near(stereo_param(t), cayley_inv(e_turns(t)), 1e-13));
  }
}

TEST_CASE("pulled-back angle form") {
  // d(arg z) / 2pi pulls back to dx / (pi (1 + x^2))
  Rng rng(26);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.affine();
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    const double fd =
        circle_delta(cayley(pt(x + h)).turns().t(), cayley(pt(x - h)).turns().t()) / (2 * h);
    CHECK(fd == doctest::Approx(1.0 / (std::numbers::pi * (1 + x * x))).epsilon(1e-6));
  }
}

TEST_CASE("su11_conjugate") {
  const SU11Matrix sigma_t = su11_conjugate(maps::sigma());
  CHECK(close(sigma_t.u, Complex(0.5, -1.0), 1e-15));
  CHECK(close(sigma_t.v, Complex(0.0, 0.5), 1e-15));
  const SU11Matrix id = su11_conjugate(MobiusMap::identity());
  CHECK(id.u == Complex(1.0, 0.0));
  CHECK(id.v == Complex(0.0, 0.0));
  CHECK_THROWS_AS(su11_conjugate(MobiusMap(2.0, 0.0, 0.0, 1.0)), Error);

  // {1, i, -i} is an orbit of the rotation
  const std::array<Complex, 3> orbit{Complex(1, 0), kI, -kI};
  for (Complex w : orbit) {
    const Complex image = sigma_t.apply(w);
    int hits = 0;
    for (Complex o : orbit) hits += close(image, o, 1e-14);
    CHECK(hits == 1);
  }
  // and {-1, (4 + 3i)/5, (4 - 3i)/5} is another
  const std::array<Complex, 3> second{Complex(-1, 0), Complex(0.8, 0.6), Complex(0.8, -0.6)};
  for (Complex w : second) {
    const Complex image = sigma_t.apply(w);
    int hits = 0;
    for (Complex o : second) hits += close(image, o, 1e-14);
    CHECK(hits == 1);
  }
  // the square of the rotation matrix, up to the central sign
  const Eigen::Matrix2cd s{{sigma_t.u, sigma_t.v}, {std::conj(sigma_t.v), std::conj(sigma_t.u)}};
  const Eigen::Matrix2cd s2 = -(s * s);
  CHECK(close(s2(0, 0), Complex(0.5, 1.0), 1e-15));
  CHECK(close(s2(0, 1), Complex(0.0, -0.5), 1e-15));
  CHECK(close(s2(1, 0), Complex(0.0, 0.5), 1e-15));
  CHECK(close(s2(1, 1), Complex(0.5, -1.0), 1e-15));
  CHECK(((s * s * s) + Eigen::Matrix2cd::Identity()).norm() < 1e-15);

  Rng rng(27);
  for (int i = 0; i < 200; ++i) {
    const MobiusMap m = rng.sl2();
    const SU11Matrix s11 = su11_conjugate(m);
    CHECK(std::abs(s11.determinant() - 1.0) < 1e-10);
    for (int j = 0; j < 5; ++j) {
      const ProjPoint x = rng.point();
      // the conjugate matrix intertwines cayley; the matrix itself the conjugate Cayley map
      CHECK(close(cayley(m.apply(x)).value(), s11.conjugate().apply(cayley(x).value()), 1e-9));
      CHECK(close(std::conj(cayley(m.apply(x)).value()),
                  s11.apply(std::conj(cayley(x).value())), 1e-9));
      // the image of a circle point stays on the circle
      const Complex w = e_turns(CirclePoint(rng.uniform())).value();
      const Complex image = s11.apply(w);
      CHECK(close(std::conj(image), 1.0 / image, 1e-12));
    }
  }
}

TEST_CASE("group_add") {
  CHECK(group_add(pt(1.0), pt(1.0)) == kInf);
  CHECK(group_add(pt(0.0), pt(17.0)) == pt(17.0));
  CHECK(group_add(pt(1.0 / std::sqrt(3.0)), pt(1.0 / std::sqrt(3.0))).value() ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(group_add(kInf, kInf) == pt(0.0));
  CHECK(group_add(pt(2.0), kInf) == pt(-0.5));
  CHECK(group_add(kInf, pt(-4.0)) == pt(0.25));

  Rng rng(28);
  for (int i = 0; i < 2000; ++i) {
    const ProjPoint a = rng.point(), b = rng.point(), c = rng.point();
    CHECK(near(group_add(a, b), group_add(b, a), 1e-15));
    CHECK(near(group_add(group_add(a, b), c), group_add(a, group_add(b, c)), 1e-9));
    CHECK(near(group_add(a, pt(0.0)), a, 1e-15));
    CHECK(near(group_add(a, group_neg(a)), pt(0.0), 1e-15));
  }
}

TEST_CASE("group law against tan addition and L") {
  Rng rng(29);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.affine(), y = rng.affine();
    CHECK(near(group_add(pt(x), pt(y)), testing::tan_addition(x, y), 1e-12));
    // L(a +_L b) = L(a) L(b)
    const Complex lhs = cayley_L(group_add(pt(x), pt(y))).value();
    const Complex rhs = cayley_L(pt(x)).value() * cayley_L(pt(y)).value();
    CHECK(close(lhs, rhs, 1e-12));
    // L = i C
    CHECK(close(cayley_L(pt(x)).value(), kI * cayley(pt(x)).value(), 1e-14));
  }
}

TEST_CASE("group_neg") {
  CHECK(group_neg(pt(2.0)) == pt(-2.0));
  CHECK(group_neg(pt(0.0)) == pt(0.0));
  CHECK(group_neg(kInf) == kInf);
}

TEST_CASE("group_mul_int") {
  CHECK(group_mul_int(3, pt(0.5)).value() == doctest::Approx(5.5).epsilon(1e-14));
  CHECK(group_mul_int(1, pt(std::numbers::pi)) == pt(std::numbers::pi));
  CHECK(near(group_mul_int(4, pt(1.0)), pt(0.0), 1e-15));
  CHECK(group_mul_int(2, pt(1.0)) == kInf);
  CHECK(group_mul_int(0, pt(3.0)) == pt(0.0));
  CHECK(group_mul_int(-3, pt(0.5)).value() == doctest::Approx(-5.5).epsilon(1e-14));

  Rng rng(30);
  for (int i = 0; i < 300; ++i) {
    const double x = rng.uniform(-3, 3);
    const int m = rng.index(41) - 20;
    // tan(m atan x) via the angle
    const double angle = m * std::atan(x);
    const ProjPoint want = ProjPoint::homogeneous(std::sin(angle), std::cos(angle));
    CHECK(near(group_mul_int(m, pt(x)), want, 1e-12));
    // double-and-add agrees with repeated addition
    ProjPoint acc = pt(0.0);
    for (int j = 0; j < std::abs(m); ++j) acc = group_add(acc, pt(x));
    if (m < 0) acc = group_neg(acc);
    CHECK(near(group_mul_int(m, pt(x)), acc, 1e-12));
  }
}

TEST_CASE("torsion_point") {
  CHECK(near(torsion_point(1, 4), pt(1.0), 1e-16));
  CHECK(torsion_point(0, 1) == pt(0.0));
  CHECK(torsion_point(1, 2) == kInf);
  CHECK(torsion_point(-3, 2) == kInf);
  CHECK(torsion_point(1, 3).value() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(near(group_mul_int(3, torsion_point(1, 3)), pt(0.0), 1e-14));
  CHECK_THROWS_AS(torsion_point(1, 0), Error);

  for (int den = 1; den <= 24; ++den) {
    for (int num = 0; num < den; ++num) {
      const ProjPoint p = torsion_point(num, den);
      CHECK(near(group_mul_int(den, p), pt(0.0), 1e-12));
      // the only element of order two is inf
      const bool order_two = !near(p, pt(0.0), 1e-12) && near(group_add(p, p), pt(0.0), 1e-12);
      CHECK(order_two == p.is_infinity());
    }
  }
}

TEST_CASE("formal group law coefficients near the origin") {
  // Least-squares fit of a total-degree-9 polynomial to samples of x +_L y on a
  // small grid; the degree <= 5 coefficients of (x + y) / (1 - x y) are
  // x + y + x^2 y + x y^2 + x^3 y^2 + x^2 y^3.
  constexpr int kDeg = 9;
  constexpr double kRadius = 0.1;
  constexpr int kGrid = 21;
  std::vector<std::pair<int, int>> monomials;
  for (int d = 0; d <= kDeg; ++d)
    for (int i = 0; i <= d; ++i) monomials.emplace_back(i, d - i);

  Eigen::MatrixXd a(kGrid * kGrid, static_cast<Eigen::Index>(monomials.size()));
  Eigen::VectorXd b(kGrid * kGrid);
  int row = 0;
  for (int r = 0; r < kGrid; ++r) {
    for (int c = 0; c < kGrid; ++c) {
      // Chebyshev nodes, scaled to [-1, 1] for conditioning
      const double sx = std::cos(std::numbers::pi * (r + 0.5) / kGrid);
      const double sy = std::cos(std::numbers::pi * (c + 0.5) / kGrid);
      for (std::size_t m = 0; m < monomials.size(); ++m) {
        a(row, static_cast<Eigen::Index>(m)) =
            std::pow(sx, monomials[m].first) * std::pow(sy, monomials[m].second);
      }
      b[row] = group_add(pt(kRadius * sx), pt(kRadius * sy)).value();
      ++row;
    }
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  auto coefficient = [&](int i, int j) {
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      if (monomials[m] == std::make_pair(i, j)) {
        return coef[static_cast<Eigen::Index>(m)] / std::pow(kRadius, i + j);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  for (int d = 0; d <= 5; ++d) {
    for (int i = 0; i <= d; ++i) {
      const int j = d - i;
      double want = 0.0;
      if (d == 1) want = 1.0;
      if (d == 3 && (i == 2 || i == 1)) want = 1.0;
      if (d == 5 && (i == 3 || i == 2)) want = 1.0;
      CAPTURE(i);
      CAPTURE(j);
      CHECK(std::abs(coefficient(i, j) - want) < 1e-4);
    }
  }
}
