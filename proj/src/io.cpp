#include "tricover/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(std::string_view token, const char* what) {
  raise(ErrorCode::parse_error, std::string(what) + ": '" + std::string(token) + "'");
}

double parse_double(std::string_view token) {
  const std::string_view t = trim(token);
  std::string_view body = t;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (t.empty() || ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) {
    parse_fail(token, "not a finite decimal number");
  }
  return value;
}

// `whole` is the token echoed in the error message
std::int64_t parse_int(std::string_view token, std::string_view whole) {
  std::string_view body = trim(token);
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size()) {
    parse_fail(whole, "not an integer");
  }
  return value;
}

// rounds to the 12 significant digits used for all printed output
double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ProjPoint parse_point(std::string_view token) {
  const std::string_view t = trim(token);
  if (t == "inf" || t == "+inf" || t == "-inf" || t == "infinity") return ProjPoint::infinity();
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(t.substr(0, slash), token);
    const std::int64_t den = parse_int(t.substr(slash + 1), token);
    if (num == 0 && den == 0) parse_fail(token, "0/0 is not a point");
    // integers below 2^53 convert exactly, so [num : den] is the exact ratio
    return ProjPoint::homogeneous(static_cast<double>(num), static_cast<double>(den));
  }
  return ProjPoint::affine(parse_double(t));
}

Rational parse_rational(std::string_view token) {
  const std::string_view t = trim(token);
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const Rational q{parse_int(t.substr(0, slash), token), parse_int(t.substr(slash + 1), token)};
    if (q.den == 0) parse_fail(token, "zero denominator");
    return q;
  }
  return {parse_int(t, token), 1};
}

std::vector<double> parse_vector(std::string_view token) {
  std::vector<double> out;
  std::string_view rest = token;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_double(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

Json point_to_json(const ProjPoint& p) {
  if (p.is_infinity()) return "inf";
  return rounded(p.value());
}

ProjPoint point_from_json(const Json& j) {
  if (j.is_number()) return ProjPoint::affine(j.get<double>());
  if (j.is_string()) return parse_point(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    const double a = j[0].get<double>();
    const double b = j[1].get<double>();
    if (a == 0.0 && b == 0.0) raise(ErrorCode::parse_error, "[0, 0] is not a point");
    return ProjPoint::homogeneous(a, b);
  }
  raise(ErrorCode::parse_error, "expected a number, \"inf\" or [a, b], got " + j.dump());
}

Json complex_to_json(Complex z) { return Json::array({rounded(z.real()), rounded(z.imag())}); }

Json configuration_to_json(const Configuration& c) {
  Json pts = Json::array();
  for (const ProjPoint& p : c.points()) pts.push_back(point_to_json(p));
  return Json{{"n", c.n()}, {"points", pts}};
}

Configuration configuration_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("points") ||
      !j["n"].is_number_integer() || !j["points"].is_array()) {
    raise(ErrorCode::parse_error, "configuration must be {\"n\": int, \"points\": [...]}");
  }
  std::vector<ProjPoint> pts;
  for (const Json& p : j["points"]) pts.push_back(point_from_json(p));
  const int n = j["n"].get<int>();
  if (n < 3 || pts.size() != static_cast<std::size_t>(n) + 1) {
    raise(ErrorCode::parse_error, "configuration needs n >= 3 and n + 1 points");
  }
  return Configuration(n, std::move(pts));
}

Json report_to_json(const RankScanReport& r) {
  Json out{{"n", r.n},
           {"trials", r.trials},
           {"seed", r.seed},
           {"h", rounded(r.h)},
           {"tol", rounded(r.tol)},
           {"full_rank_count", r.full_rank_count},
           {"min_rank", r.min_rank},
           {"worst_sigma_ratio", rounded(r.worst_sigma_ratio)},
           {"rejected_draws", r.rejected_draws}};
  if (r.counterexample) {
    Json u = Json::array();
    for (Eigen::Index m = 0; m < r.counterexample->size(); ++m) u.push_back(rounded((*r.counterexample)[m]));
    out["counterexample"] = u;
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

std::string validate_report_json(const Json& j) {
  if (!j.is_object()) return "report is not an object";
  for (const char* key : {"n", "trials", "seed", "full_rank_count", "min_rank"}) {
    if (!j.contains(key) || !j[key].is_number_integer()) return std::string(key) + " must be an integer";
  }
  for (const char* key : {"h", "tol", "worst_sigma_ratio"}) {
    if (!j.contains(key) || !j[key].is_number()) return std::string(key) + " must be a number";
  }
  const int n = j["n"].get<int>();
  const int trials = j["trials"].get<int>();
  const int full = j["full_rank_count"].get<int>();
  const int min_rank = j["min_rank"].get<int>();
  const double ratio = j["worst_sigma_ratio"].get<double>();
  if (n < 3 || trials < 1) return "n >= 3 and trials >= 1 required";
  if (full < 0 || full > trials) return "full_rank_count out of range";
  if (min_rank < 0 || min_rank > n - 2) return "min_rank out of range";
  if (!(ratio >= 0.0 && ratio <= 1.0)) return "worst_sigma_ratio must lie in [0, 1]";
  const bool full_everywhere = full == trials;
  if (full_everywhere != (min_rank == n - 2)) return "min_rank inconsistent with full_rank_count";
  if (j.contains("counterexample") && !j["counterexample"].is_null()) {
    const Json& u = j["counterexample"];
    if (!u.is_array() || u.size() != static_cast<std::size_t>(n - 2)) return "counterexample must have n - 2 coordinates";
    if (full_everywhere) return "counterexample reported for a full-rank scan";
  } else if (!full_everywhere) {
    return "rank deficit reported without a counterexample";
  }
  return {};
}

std::vector<ChartPoint> parse_curve_csv(std::string_view text, int n) {
  std::vector<ChartPoint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (first) {
      first = false;
      const std::string_view head = trim(row.substr(0, row.find(',')));
      double probe = 0.0;
      const char* begin = head.data() + (!head.empty() && head.front() == '+');
      const auto [ptr, ec] = std::from_chars(begin, head.data() + head.size(), probe);
      if (ec != std::errc() || ptr != head.data() + head.size()) continue;  // header
    }
    const std::vector<double> u = parse_vector(row);
    const int row_n = static_cast<int>(u.size()) + 2;
    if (n == 0) n = row_n;
    if (row_n != n) {
      raise(ErrorCode::parse_error, "curve row has " + std::to_string(u.size()) +
                                        " coordinates, expected " + std::to_string(n - 2));
    }
    out.emplace_back(n, Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size())));
  }
  return out;
}

}  // namespace tricover
