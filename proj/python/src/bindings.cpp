#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "tricover/cover.hpp"
#include "tricover/errors.hpp"
#include "tricover/io.hpp"
#include "tricover/moduli.hpp"
#include "tricover/plots.hpp"
#include "tricover/projline.hpp"
#include "tricover/tangent_group.hpp"

namespace py = pybind11;
using namespace tricover;

namespace {

// float (inf for the point at infinity), a string token, or a pair (a, b)
ProjPoint to_point(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_point(h.cast<std::string>());
  if (py::isinstance<py::tuple>(h) || py::isinstance<py::list>(h)) {
    const auto pair = h.cast<std::vector<double>>();
    if (pair.size() != 2) raise(ErrorCode::parse_error, "a homogeneous point needs two entries");
    return ProjPoint::homogeneous(pair[0], pair[1]);
  }
  const double x = h.cast<double>();
  if (std::isinf(x)) return ProjPoint::infinity();
  return ProjPoint::affine(x);
}

double from_point(const ProjPoint& p) {
  return p.is_infinity() ? std::numeric_limits<double>::infinity() : p.value();
}

std::vector<ProjPoint> to_points(const py::iterable& items) {
  std::vector<ProjPoint> out;
  for (const py::handle& h : items) out.push_back(to_point(h));
  return out;
}

std::vector<double> from_points(const std::vector<ProjPoint>& pts) {
  std::vector<double> out;
  for (const ProjPoint& p : pts) out.push_back(from_point(p));
  return out;
}

Configuration to_configuration(const py::iterable& items) {
  std::vector<ProjPoint> pts = to_points(items);
  const int n = static_cast<int>(pts.size()) - 1;
  return Configuration(n, std::move(pts));
}

ChartPoint to_chart(const Eigen::VectorXd& u) { return ChartPoint(static_cast<int>(u.size()) + 2, u); }

py::object json_to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerics on the real projective line and moduli of marked points";

  static py::exception<Error> base(m, "TricoverError", PyExc_ValueError);
  static py::exception<Error> input(m, "InputError", base.ptr());
  static py::exception<Error> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = e.error_class() == ErrorClass::numerical ? numerical : input;
      py::object exc = cls(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  m.def("parse_point", [](const std::string& s) { return from_point(parse_point(s)); });
  m.def("format_number", &format_number);

  // projective line
  m.def("cross_ratio", [](py::handle a, py::handle b, py::handle c, py::handle d) {
    return from_point(cross_ratio(to_point(a), to_point(b), to_point(c), to_point(d)));
  });
  m.def("mobius_apply", [](double a, double b, double c, double d, py::handle p) {
    return from_point(MobiusMap(a, b, c, d).apply(to_point(p)));
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("p"));
  m.def("chordal_distance", [](py::handle p, py::handle q) {
    return chordal_distance(to_point(p), to_point(q));
  });

  // the three-fold cover
  m.def("kappa", [](py::handle p) { return kappa(to_point(p)).t(); });
  m.def("kappa_prime", [](py::handle p) { return kappa_prime(to_point(p)); });
  m.def("interval", [](py::handle p) { return std::string(to_string(interval_classify(to_point(p)))); });
  m.def("varkappa", [](py::handle p) { return from_point(varkappa(to_point(p))); });
  m.def("logistic", &logistic);
  m.def("devadoss_gamma", [](py::handle a, py::handle b, py::handle c, py::handle d) {
    return from_point(devadoss_gamma(to_point(a), to_point(b), to_point(c), to_point(d)));
  });
  m.def("kappa_winding", [](const py::iterable& loop) {
    const std::vector<ProjPoint> pts = to_points(loop);
    return kappa_winding(pts);
  });
  m.def("kappa_prime_integral", [] {
    const KappaIntegral q = kappa_prime_integral();
    return py::make_tuple(q.branch_I, q.branch_II, q.branch_III);
  });

  // tangent group and the circle
  m.def("group_add", [](py::handle p, py::handle q) { return from_point(group_add(to_point(p), to_point(q))); });
  m.def("group_neg", [](py::handle p) { return from_point(group_neg(to_point(p))); });
  m.def("group_mul", [](std::int64_t k, py::handle p) { return from_point(group_mul_int(k, to_point(p))); });
  m.def("torsion_point", [](std::int64_t num, std::int64_t den) { return from_point(torsion_point(num, den)); });
  m.def("cayley", [](py::handle p) { return cayley(to_point(p)).value(); });
  m.def("cayley_inv", [](Complex z) { return from_point(cayley_inv(z)); });
  m.def("stereo_param", [](double t) { return from_point(stereo_param(CirclePoint(t))); });
  m.def("su11", [](double a, double b, double c, double d) {
    const SU11Matrix s = su11_conjugate(MobiusMap(a, b, c, d));
    return py::make_tuple(s.u, s.v);
  }, "(u, v) of the SU(1,1) form of a determinant-one real matrix");

  // moduli
  m.def("chart_coords", [](const py::iterable& pts) { return chart_coords(to_configuration(pts)).u; });
  m.def("chart_embed", [](const Eigen::VectorXd& u) { return from_points(chart_embed(to_chart(u)).points()); });
  m.def("albanese", [](const py::iterable& pts) {
    std::vector<double> out;
    for (const CirclePoint& t : albanese(to_configuration(pts))) out.push_back(t.t());
    return out;
  });
  m.def("triples", [](int n) {
    std::vector<std::tuple<int, int, int>> out;
    for (const TripleIndex& s : triples(n)) out.emplace_back(s.i, s.j, s.k);
    return out;
  });
  m.def("albanese_jacobian", [](const Eigen::VectorXd& u, double h, bool one_sided) {
    return albanese_jacobian(to_chart(u), h, one_sided ? SeamPolicy::one_sided : SeamPolicy::strict);
  }, py::arg("u"), py::arg("h") = kDefaultStep, py::arg("one_sided") = false);
  m.def("albanese_jacobian_analytic", [](const Eigen::VectorXd& u) {
    return albanese_jacobian_analytic(to_chart(u));
  });
  m.def("jacobian_rank", &jacobian_rank, py::arg("j"), py::arg("tol") = kDefaultRankTol);
  m.def("metric_matrix", [](const Eigen::VectorXd& u, double h) { return metric_matrix(to_chart(u), h).g; },
        py::arg("u"), py::arg("h") = kDefaultStep);
  m.def("metric_eval", [](const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                          double h) { return metric_eval(to_chart(u), v, w, h); },
        py::arg("u"), py::arg("v"), py::arg("w"), py::arg("h") = kDefaultStep);
  m.def("perm_apply", [](const std::vector<int>& perm, const py::iterable& pts) {
    return from_points(perm_apply(perm, to_configuration(pts)).points());
  });
  m.def("curve_length", [](const Eigen::MatrixXd& samples, double h) {
    std::vector<ChartPoint> pts;
    for (Eigen::Index r = 0; r < samples.rows(); ++r) pts.push_back(to_chart(samples.row(r).transpose()));
    return curve_length(pts, h);
  }, py::arg("samples"), py::arg("h") = kDefaultStep, "Rows are chart points");
  m.def("rank_scan", [](int n, int trials, std::uint64_t seed, double h, double tol) {
    return json_to_python(report_to_json(rank_scan(n, trials, seed, h, tol)));
  }, py::arg("n"), py::arg("trials"), py::arg("seed") = 0, py::arg("h") = kDefaultStep,
     py::arg("tol") = kDefaultRankTol);

  // figure data
  m.def("ideal_geodesic", [](double t1, double t2) {
    const ArcDescriptor a = ideal_geodesic(CirclePoint(t1), CirclePoint(t2));
    py::dict d;
    d["kind"] = a.kind == ArcDescriptor::Kind::diameter ? "diameter" : "circular";
    d["ends"] = py::make_tuple(a.end1.t(), a.end2.t());
    if (a.kind == ArcDescriptor::Kind::circular) {
      d["center"] = py::make_tuple(a.center.x, a.center.y);
      d["radius"] = a.radius;
    }
    return d;
  });
  m.def("helix_samples", [](int k) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [a, b] : helix_samples(k)) out.emplace_back(a.t(), b.t());
    return out;
  });
  m.def("tree3_svg", [](py::handle a, py::handle b, py::handle c, py::handle d) {
    return tree3_svg(tree3_figure(to_point(a), to_point(b), to_point(c), to_point(d)));
  });
  m.def("helix_svg", [](int k) { return helix_svg(helix_samples(k)); });
  m.def("kappa_graph_svg", [](int k) { return kappa_graph_svg(kappa_graph_samples(k)); });
}
