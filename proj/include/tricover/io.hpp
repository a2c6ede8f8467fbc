#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tricover/moduli.hpp"
#include "tricover/projline.hpp"
#include "tricover/tangent_group.hpp"

namespace tricover {

using Json = nlohmann::ordered_json;

/// "%.12g", with -0 printed as 0.
std::string format_number(double x);

/// Decimal, "inf" or an exact ratio "a/b" of integers. Throws ParseError.
ProjPoint parse_point(std::string_view token);

struct Rational {
  std::int64_t num;
  std::int64_t den;
};
/// "a/b" or "a". Throws ParseError.
Rational parse_rational(std::string_view token);

/// Comma-separated decimals. Throws ParseError.
std::vector<double> parse_vector(std::string_view token);

/// Finite points as numbers, infinity as the string "inf".
Json point_to_json(const ProjPoint& p);
/// Accepts a number, "inf", an "a/b" string or a homogeneous pair [a, b].
ProjPoint point_from_json(const Json& j);

Json complex_to_json(Complex z);

Json configuration_to_json(const Configuration& c);
/// {"n": int, "points": [...]}. Throws ParseError on schema violations.
Configuration configuration_from_json(const Json& j);

Json report_to_json(const RankScanReport& r);
/// Returns an empty string when the report matches the scan report schema,
/// otherwise a description of the first violation.
std::string validate_report_json(const Json& j);

/// One row per sample, comma-separated chart coordinates. A header row whose
/// first field is not numeric is skipped. n = 0 infers n from the column count.
/// Throws ParseError.
std::vector<ChartPoint> parse_curve_csv(std::string_view text, int n = 0);

}  // namespace tricover
