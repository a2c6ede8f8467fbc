#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tricover/cli.hpp"
#include "tricover/errors.hpp"
#include "tricover/io.hpp"

using namespace tricover;

namespace {
ProjPoint pt(double x) { return ProjPoint::affine(x); }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tricover_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}
}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-6) == "1e-06");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_point(ProjPoint::infinity()) == "inf");
}

TEST_CASE("parse_point") {
  CHECK(parse_point("inf") == ProjPoint::infinity());
  CHECK(parse_point("-inf") == ProjPoint::infinity());
  CHECK(parse_point("1/3") == ProjPoint::homogeneous(1.0, 3.0));
  CHECK(parse_point("-2/4") == pt(-0.5));
  CHECK(parse_point("1/0") == ProjPoint::infinity());
  CHECK(parse_point("0.25") == pt(0.25));
  CHECK(parse_point(" 1e-3 ") == pt(1e-3));
  CHECK(parse_point("+7") == pt(7.0));
  for (const char* bad : {"abc", "", "1/x", "0/0", "nan", "1.5.2", "1e999", "2/"}) {
    CAPTURE(bad);
    try {
      parse_point(bad);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse_error);
      CHECK(std::string(e.what()).find("'" + std::string(bad) + "'") != std::string::npos);
    }
  }
}

TEST_CASE("parse_rational and parse_vector") {
  const Rational q = parse_rational("-3/7");
  CHECK(q.num == -3);
  CHECK(q.den == 7);
  CHECK(parse_rational("5").den == 1);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK(parse_vector("0.3,0.7") == std::vector<double>{0.3, 0.7});
  CHECK_THROWS_AS(parse_vector("0.3,,0.7"), Error);
}

TEST_CASE("configuration json round trip") {
  const Configuration c(4, {pt(0), pt(0.25), ProjPoint::homogeneous(1, 3), pt(1), ProjPoint::infinity()});
  const Json j = configuration_to_json(c);
  CHECK(j["points"][4] == "inf");
  const Configuration back = configuration_from_json(Json::parse(j.dump()));
  REQUIRE(back.n() == 4);
  for (int i = 0; i <= 4; ++i) CHECK(near(back[i], c[i], 1e-11));

  CHECK(point_from_json(Json::parse("[1, 0]")) == ProjPoint::infinity());
  CHECK(point_from_json(Json::parse("\"2/4\"")) == pt(0.5));
  CHECK_THROWS_AS(point_from_json(Json::parse("[0, 0]")), Error);
  CHECK_THROWS_AS(point_from_json(Json::parse("true")), Error);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"n": 3, "points": [0, 1, "inf"]})")), Error);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"points": [0, 1, 2, "inf"]})")), Error);
}

TEST_CASE("report json") {
  const RankScanReport r = rank_scan(4, 5, 3);
  const Json j = report_to_json(r);
  CHECK(validate_report_json(j).empty());
  for (const char* key : {"n", "trials", "seed", "h", "tol", "full_rank_count", "min_rank",
                          "worst_sigma_ratio"}) {
    CHECK(j.contains(key));
  }
  Json broken = j;
  broken.erase("min_rank");
  CHECK_FALSE(validate_report_json(broken).empty());
  broken = j;
  broken["full_rank_count"] = 99;
  CHECK_FALSE(validate_report_json(broken).empty());
}

TEST_CASE("parse_curve_csv") {
  const auto c = parse_curve_csv("u1,u2\n# comment\n0.1,0.5\n0.2,0.6\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].n == 4);
  CHECK(c[1].u[1] == 0.6);
  CHECK(parse_curve_csv("0.3\n0.6\n").size() == 2);
  CHECK_THROWS_AS(parse_curve_csv("0.1,0.2\n0.3\n"), Error);
  CHECK_THROWS_AS(parse_curve_csv("0.1\n0.3\n", 4), Error);
}

TEST_CASE("cli examples") {
  auto r = run({"group", "add", "1", "1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "inf\n");

  r = run({"crossratio", "0", "0.5", "1", "inf"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "0.5\n");

  CHECK(run({"crossratio", "-1", "0", "1", "inf"}).out == "0.5\n");
  CHECK(run({"kappa", "2"}).out == "0.5\n");
  CHECK(run({"gamma", "0", "1/2", "1", "inf"}).out == "0\n");
  CHECK(run({"gamma", "0", "0", "1", "inf"}).out == "inf\n");
  CHECK(run({"group", "mul", "3", "1/2"}).out == "5.5\n");
  CHECK(run({"group", "neg", "2"}).out == "-2\n");
  CHECK(run({"group", "torsion", "1/4"}).out == "1\n");
  CHECK(run({"cayley", "inf"}).out == "[0, 1]\n");
  CHECK(run({"su11", "0", "1", "-1", "1"}).out == "u = [0.5, -1]\nv = [0, 0.5]\n");
  CHECK(run({"su11", "2", "0", "0", "2", "--normalize"}).out == "u = [1, 0]\nv = [0, 0]\n");
  CHECK(run({"metric", "--u", "0.5"}).out == "# n=3 h=1e-06\n1\n");
  CHECK(run({"--format", "json", "kappa", "0.5"}).code == cli::kExitOk);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kExitInput);
  CHECK(run({"bogus"}).code == cli::kExitInput);
  CHECK(run({"crossratio", "1", "2"}).code == cli::kExitInput);
  CHECK(run({"crossratio", "1", "2", "3", "4", "--frobnicate"}).code == cli::kExitInput);
  CHECK(run({"kappa", "abc"}).code == cli::kExitInput);
  CHECK(run({"kappa", "1", "--format", "svg"}).code == cli::kExitInput);
  CHECK(run({"su11", "2", "0", "0", "1"}).code == cli::kExitInput);
  CHECK(run({"rank-scan", "--n", "2"}).code == cli::kExitInput);
  CHECK(run({"plot", "tree3", "0", "0", "0", "inf"}).code == cli::kExitNumerical);

  const Result usage = run({"group"});
  CHECK(usage.code == cli::kExitInput);
  CHECK(usage.err.find("Usage") != std::string::npos);

  const Result help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("rank-scan") != std::string::npos);

  const Result seam = run({"metric", "--u", "0.3,0.3000001"});
  CHECK(seam.code == cli::kExitNumerical);
  CHECK(seam.err.find("SeamTooClose") != std::string::npos);
  CHECK(run({"crossratio", "1", "1", "1", "2"}).code == cli::kExitNumerical);
}

TEST_CASE("cli rank-scan determinism and json round trip") {
  const Result a = run({"rank-scan", "--n", "4", "--trials", "10", "--seed", "0"});
  const Result b = run({"rank-scan", "--n", "4", "--trials", "10", "--seed", "0"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(validate_report_json(Json::parse(a.out)).empty());
  CHECK(run({"rank-scan", "--n", "4", "--trials", "10", "--seed", "1"}).out != a.out);

  // albanese emits its configuration; feeding the document back reproduces it
  const std::string config = R"({"n": 4, "points": [0, 0.2, "1/3", 1, "inf"]})";
  const Result first = run({"albanese", "--input", config, "--format", "json"});
  REQUIRE(first.code == cli::kExitOk);
  const Result again = run({"albanese", "--input", first.out, "--format", "json"});
  REQUIRE(again.code == cli::kExitOk);
  const Json ja = Json::parse(first.out), jb = Json::parse(again.out);
  REQUIRE(ja["kappa"].size() == jb["kappa"].size());
  for (std::size_t r = 0; r < ja["kappa"].size(); ++r) {
    CHECK(jb["kappa"][r].get<double>() == doctest::Approx(ja["kappa"][r].get<double>()).epsilon(1e-10));
  }

  const Result metric = run({"metric", "--u", "0.3,0.7", "--format", "json"});
  REQUIRE(metric.code == cli::kExitOk);
  const Result metric_again = run({"metric", "--input", metric.out, "--format", "json"});
  REQUIRE(metric_again.code == cli::kExitOk);
  CHECK(Json::parse(metric_again.out)["u"] == Json::parse(metric.out)["u"]);
}

TEST_CASE("cli files and config") {
  const auto curve = scratch("curve.csv");
  write_file(curve, "u\n0.3\n0.45\n0.6\n");
  const Result len = run({"curve-length", "--input", curve.string()});
  CHECK(len.code == cli::kExitOk);
  CHECK(std::stod(len.out) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(run({"curve-length", "--input", scratch("missing.csv").string()}).code == cli::kExitInput);

  const auto config_path = scratch("config.json");
  write_file(config_path, R"({"n": 3, "points": [0, 0.5, 1, "inf"]})");
  CHECK(run({"albanese", "--input", config_path.string()}).out == "1 2 3 0.5\n");

  const auto ini = scratch("options.ini");
  write_file(ini, "n=3\ntrials=4\nseed=9\n");
  const Result from_file = run({"--config", ini.string(), "rank-scan"});
  REQUIRE(from_file.code == cli::kExitOk);
  const Json j = Json::parse(from_file.out);
  CHECK(j["n"] == 3);
  CHECK(j["trials"] == 4);
  CHECK(j["seed"] == 9);
  // flags override the file
  const Json k = Json::parse(run({"--config", ini.string(), "rank-scan", "--trials", "2"}).out);
  CHECK(k["trials"] == 2);
  CHECK(k["n"] == 3);

  std::filesystem::remove(curve);
  std::filesystem::remove(config_path);
  std::filesystem::remove(ini);
}
