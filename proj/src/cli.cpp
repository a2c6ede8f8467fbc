#include "tricover/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "tricover/cover.hpp"
#include "tricover/errors.hpp"
#include "tricover/io.hpp"
#include "tricover/moduli.hpp"
#include "tricover/plots.hpp"
#include "tricover/projline.hpp"
#include "tricover/tangent_group.hpp"

namespace tricover::cli {

namespace {

struct Options {
  std::string format = "text";
  double h = kDefaultStep;
  double tol = kDefaultRankTol;
  std::uint64_t seed = 0;
  int n = 4;
  int trials = 100;
  int k = 64;
  std::string input;
  std::string u;
  bool normalize = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<ProjPoint> parse_points(const std::vector<std::string>& tokens) {
  std::vector<ProjPoint> pts;
  pts.reserve(tokens.size());
  for (const std::string& t : tokens) pts.push_back(parse_point(t));
  return pts;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  if (opt.format == "text") return;
  for (const char* f : allowed) {
    if (opt.format == f) return;
  }
  throw UsageError("--format " + opt.format + " is not supported by this command");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::parse_error, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& source) {
  if (source.empty()) throw UsageError("--input is required");
  const std::string text =
      source.find_first_not_of(" \t\r\n") != std::string::npos &&
              source[source.find_first_not_of(" \t\r\n")] == '{'
          ? source
          : read_text(source);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

// accepts a configuration or any emitted document that carries one under "config"
Configuration load_configuration(const std::string& source) {
  const Json j = load_json(source);
  if (j.is_object() && j.contains("config")) return configuration_from_json(j["config"]);
  return configuration_from_json(j);
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(std::strtod(format_number(m(r, c)).c_str(), nullptr));
    }
    rows.push_back(row);
  }
  return rows;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(std::strtod(format_number(v[i]).c_str(), nullptr));
  }
  return out;
}

std::string complex_text(Complex z) {
  return "[" + format_number(z.real()) + ", " + format_number(z.imag()) + "]";
}

ChartPoint chart_from_options(const Options& opt) {
  if (!opt.u.empty()) {
    const std::vector<double> u = parse_vector(opt.u);
    return ChartPoint(static_cast<int>(u.size()) + 2,
                      Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size())));
  }
  if (!opt.input.empty()) return chart_coords(load_configuration(opt.input));
  throw UsageError("metric needs --u or --input");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Numerics on the real projective line and moduli of marked points", "tricover"};
  // -h would shadow the --h step option
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--format", opt.format, "Output format: text, json, csv or svg")
      ->check(CLI::IsMember({"text", "json", "csv", "svg"}));
  app.add_option("--h", opt.h, "Finite-difference step")->capture_default_str();
  app.add_option("--tol", opt.tol, "Relative singular-value tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  app.add_option("--n", opt.n, "Number of leaves")->capture_default_str();
  app.add_option("--trials", opt.trials, "Number of random trials")->capture_default_str();
  app.add_option("--k", opt.k, "Number of samples")->capture_default_str();
  app.add_option("--input", opt.input, "Input file, or inline JSON");
  app.add_option("--u", opt.u, "Chart coordinates, comma separated");
  app.add_flag("--normalize", opt.normalize, "Rescale the matrix to determinant 1");

  std::vector<std::string> pos;
  std::function<void()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  int arity, std::function<void()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    if (arity > 0) sub->add_option("args", pos, "Arguments")->expected(arity)->required();
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
    return sub;
  };

  leaf(&app, "crossratio", "Cross-ratio [p0 : p1 : p2 : p3]", 4, [&] {
    require_format(opt, {"json"});
    const auto p = parse_points(pos);
    const ProjPoint rho = cross_ratio(p[0], p[1], p[2], p[3]);
    if (opt.format == "json") {
      Json pts = Json::array();
      for (const auto& q : p) pts.push_back(point_to_json(q));
      out << Json{{"points", pts}, {"cross_ratio", point_to_json(rho)}}.dump(2) << '\n';
    } else {
      out << format_point(rho) << '\n';
    }
  });

  leaf(&app, "kappa", "Three-fold cover kappa(p) in R/Z", 1, [&] {
    require_format(opt, {"json"});
    const ProjPoint p = parse_point(pos[0]);
    const CirclePoint t = kappa(p);
    if (opt.format == "json") {
      out << Json{{"point", point_to_json(p)},
                  {"interval", to_string(interval_classify(p))},
                  {"kappa", std::strtod(format_number(t.t()).c_str(), nullptr)},
                  {"kappa_prime", std::strtod(format_number(kappa_prime(p)).c_str(), nullptr)},
                  {"varkappa", point_to_json(varkappa(p))}}
                 .dump(2)
          << '\n';
    } else {
      out << format_number(t.t()) << '\n';
    }
  });

  leaf(&app, "gamma", "Signed internal-edge length of the three-leaf tree", 4, [&] {
    require_format(opt, {"json"});
    const auto p = parse_points(pos);
    const ProjPoint g = devadoss_gamma(p[0], p[1], p[2], p[3]);
    if (opt.format == "json") {
      out << Json{{"cross_ratio", point_to_json(cross_ratio(p[0], p[1], p[2], p[3]))},
                  {"gamma", point_to_json(g)},
                  {"boundary", g.is_infinity()}}
                 .dump(2)
          << '\n';
    } else {
      out << format_point(g) << '\n';
    }
  });

  CLI::App* group = app.add_subcommand("group", "Tangent-addition group law on P1(R)");
  group->fallthrough();
  group->require_subcommand(1);
  auto emit_group = [&](const char* op, const ProjPoint& result) {
    require_format(opt, {"json"});
    if (opt.format == "json") {
      out << Json{{"op", op}, {"args", pos}, {"result", point_to_json(result)}}.dump(2) << '\n';
    } else {
      out << format_point(result) << '\n';
    }
  };
  leaf(group, "add", "p +_L q", 2, [&] {
    const auto p = parse_points(pos);
    emit_group("add", group_add(p[0], p[1]));
  });
  leaf(group, "mul", "[m] p", 2, [&] {
    const Rational m = parse_rational(pos[0]);
    if (m.den != 1) raise(ErrorCode::parse_error, "multiplier must be an integer: '" + pos[0] + "'");
    emit_group("mul", group_mul_int(m.num, parse_point(pos[1])));
  });
  leaf(group, "neg", "[-1] p", 1, [&] { emit_group("neg", group_neg(parse_point(pos[0]))); });
  leaf(group, "torsion", "tan(pi a/b)", 1, [&] {
    const Rational q = parse_rational(pos[0]);
    emit_group("torsion", torsion_point(q.num, q.den));
  });

  leaf(&app, "cayley", "Stereographic image (x - i) / (1 - i x)", 1, [&] {
    require_format(opt, {"json"});
    const ProjPoint p = parse_point(pos[0]);
    const UnitComplex z = cayley(p);
    if (opt.format == "json") {
      out << Json{{"point", point_to_json(p)}, {"z", complex_to_json(z.value())}}.dump(2) << '\n';
    } else {
      out << complex_text(z.value()) << '\n';
    }
  });

  leaf(&app, "su11", "SU(1,1) form of the real matrix [[a, b], [c, d]]", 4, [&] {
    require_format(opt, {"json"});
    std::vector<double> e;
    for (const std::string& t : pos) e.push_back(parse_vector(t).at(0));
    MobiusMap m(e[0], e[1], e[2], e[3]);
    if (opt.normalize) {
      if (m.det() < 0.0) raise(ErrorCode::det_not_one, "negative determinant cannot be normalized to 1");
      m = m.normalized();
    }
    const SU11Matrix s = su11_conjugate(m);
    if (opt.format == "json") {
      out << Json{{"u", complex_to_json(s.u)},
                  {"v", complex_to_json(s.v)},
                  {"det", std::strtod(format_number(s.determinant()).c_str(), nullptr)}}
                 .dump(2)
          << '\n';
    } else {
      out << "u = " << complex_text(s.u) << "\nv = " << complex_text(s.v) << '\n';
    }
  });

  leaf(&app, "albanese", "All kappa_S of a configuration (--input)", 0, [&] {
    require_format(opt, {"json", "csv"});
    const Configuration c = load_configuration(opt.input);
    const std::vector<TripleIndex> ts = triples(c.n());
    const std::vector<CirclePoint> values = albanese(c);
    if (opt.format == "csv") {
      out << "# n=" << c.n() << "\ni,j,k,kappa\n";
      for (std::size_t r = 0; r < ts.size(); ++r) {
        out << ts[r].i << ',' << ts[r].j << ',' << ts[r].k << ',' << format_number(values[r].t())
            << '\n';
      }
    } else if (opt.format == "json") {
      Json tj = Json::array();
      Json vj = Json::array();
      for (std::size_t r = 0; r < ts.size(); ++r) {
        tj.push_back({ts[r].i, ts[r].j, ts[r].k});
        vj.push_back(std::strtod(format_number(values[r].t()).c_str(), nullptr));
      }
      out << Json{{"config", configuration_to_json(c)}, {"triples", tj}, {"kappa", vj}}.dump(2)
          << '\n';
    } else {
      for (std::size_t r = 0; r < ts.size(); ++r) {
        out << ts[r].i << ' ' << ts[r].j << ' ' << ts[r].k << ' ' << format_number(values[r].t())
            << '\n';
      }
    }
  });

  leaf(&app, "metric", "Averaged metric G at a chart point (--u or --input)", 0, [&] {
    require_format(opt, {"json", "csv"});
    const ChartPoint u = chart_from_options(opt);
    const MetricMatrix g = metric_matrix(u, opt.h);
    const Eigen::MatrixXd j = albanese_jacobian(u, opt.h);
    if (opt.format == "json") {
      out << Json{{"config", configuration_to_json(chart_embed(u))},
                  {"n", u.n},
                  {"u", vector_to_json(u.u)},
                  {"h", std::strtod(format_number(opt.h).c_str(), nullptr)},
                  {"tol", std::strtod(format_number(opt.tol).c_str(), nullptr)},
                  {"G", matrix_to_json(g.g)},
                  {"min_eigenvalue", std::strtod(format_number(g.min_eigenvalue()).c_str(), nullptr)},
                  {"rank", jacobian_rank(j, opt.tol)}}
                 .dump(2)
          << '\n';
    } else {
      out << "# n=" << u.n << " h=" << format_number(opt.h) << '\n';
      for (Eigen::Index r = 0; r < g.g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.g.cols(); ++c) {
          out << (c ? "," : "") << format_number(g.g(r, c));
        }
        out << '\n';
      }
    }
  });

  leaf(&app, "rank-scan", "Rank of the Albanese Jacobian at random charts", 0, [&] {
    require_format(opt, {"json", "csv"});
    const RankScanReport r = rank_scan(opt.n, opt.trials, opt.seed, opt.h, opt.tol);
    const Json j = report_to_json(r);
    if (opt.format == "csv") {
      out << "key,value\n";
      for (const auto& [key, value] : j.items()) out << key << ',' << value.dump() << '\n';
    } else {
      out << j.dump(2) << '\n';
    }
  });

  leaf(&app, "curve-length", "Length of a sampled chart curve (--input CSV)", 0, [&] {
    require_format(opt, {"json"});
    if (opt.input.empty()) throw UsageError("--input is required");
    const std::vector<ChartPoint> samples = parse_curve_csv(read_text(opt.input));
    const double len = curve_length(samples, opt.h);
    if (opt.format == "json") {
      out << Json{{"samples", samples.size()},
                  {"h", std::strtod(format_number(opt.h).c_str(), nullptr)},
                  {"length", std::strtod(format_number(len).c_str(), nullptr)}}
                 .dump(2)
          << '\n';
    } else {
      out << format_number(len) << '\n';
    }
  });

  CLI::App* plot = app.add_subcommand("plot", "Figure data");
  plot->fallthrough();
  plot->require_subcommand(1);
  leaf(plot, "tree3", "Three-leaf tree in the Poincare disk", 4, [&] {
    require_format(opt, {"svg", "csv", "json"});
    const auto p = parse_points(pos);
    const Tree3Figure fig = tree3_figure(p[0], p[1], p[2], p[3]);
    if (opt.format == "csv") {
      out << tree3_csv(fig);
    } else if (opt.format == "json") {
      Json arcs = Json::array();
      for (const ArcDescriptor& a : fig.geodesics) {
        Json aj{{"kind", a.kind == ArcDescriptor::Kind::diameter ? "diameter" : "circular"},
                {"ends", {std::strtod(format_number(a.end1.t()).c_str(), nullptr),
                          std::strtod(format_number(a.end2.t()).c_str(), nullptr)}}};
        if (a.kind == ArcDescriptor::Kind::circular) {
          aj["center"] = {std::strtod(format_number(a.center.x).c_str(), nullptr),
                          std::strtod(format_number(a.center.y).c_str(), nullptr)};
          aj["radius"] = std::strtod(format_number(a.radius).c_str(), nullptr);
        }
        arcs.push_back(aj);
      }
      Json pts = Json::array();
      for (const auto& q : fig.points) pts.push_back(point_to_json(q));
      out << Json{{"points", pts}, {"arcs", arcs}, {"gamma", point_to_json(fig.gamma)},
                  {"boundary", fig.boundary}}
                 .dump(2)
          << '\n';
    } else {
      out << tree3_svg(fig);
    }
  });
  leaf(plot, "helix", "(cayley angle, kappa) along one loop", 0, [&] {
    require_format(opt, {"csv", "svg"});
    const auto samples = helix_samples(opt.k);
    if (opt.format == "svg") {
      out << helix_svg(samples);
    } else {
      out << "# k=" << opt.k << '\n' << helix_csv(samples);
    }
  });
  leaf(plot, "kappa-graph", "Graph of kappa along one loop", 0, [&] {
    require_format(opt, {"csv", "svg"});
    const auto samples = kappa_graph_samples(opt.k);
    if (opt.format == "svg") {
      out << kappa_graph_svg(samples);
    } else {
      out << "# k=" << opt.k << '\n' << kappa_graph_csv(samples);
    }
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitInput;
  }

  try {
    if (!action) throw UsageError("no command given");
    action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.error_class() == ErrorClass::numerical ? kExitNumerical : kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace tricover::cli
