#include "chsh/angle_parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<long long> parse_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

[[noreturn]] void bad_angle(std::string_view text) {
  throw InvalidInput("cannot parse angle '" + std::string(text) + "'");
}

}  // namespace

ParsedAngle parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_angle(text);

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) bad_angle(text);
    ParsedAngle out{v, std::nullopt};
    if (v == 0.0) out.pi_multiple = Rational(0);
    return out;
  }

  // numerator part before "pi": "", "-", "+", "k", "k*", "-k*"
  std::string_view head = s.substr(0, pi_pos);
  std::string_view tail = s.substr(pi_pos + 2);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  long long k = 1;
  if (head == "-") {
    k = -1;
  } else if (head == "+") {
    k = 1;
  } else if (!head.empty()) {
    if (head.front() == '+') head.remove_prefix(1);
    auto v = parse_integer(head);
    if (!v) bad_angle(text);
    k = *v;
  }
  long long m = 1;
  if (!tail.empty()) {
    if (tail.front() != '/') bad_angle(text);
    auto v = parse_integer(tail.substr(1));
    if (!v) bad_angle(text);
    if (*v == 0) throw InvalidInput("zero denominator in angle '" + std::string(text) + "'");
    m = *v;
  }
  ParsedAngle out;
  out.pi_multiple = Rational(k, m);
  out.radians = static_cast<double>(k) * std::numbers::pi / static_cast<double>(m);
  return out;
}

std::vector<ParsedAngle> parse_angle_list(std::string_view text) {
  std::vector<ParsedAngle> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) out.push_back(parse_angle(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

ParsedAngleSet parse_angle_set(std::string_view text) {
  const auto list = parse_angle_list(text);
  if (list.size() != 4) throw InvalidInput("expected four angles, got " + std::to_string(list.size()));
  ParsedAngleSet out;
  out.angles = AngleSet(list[0].radians, list[1].radians, list[2].radians, list[3].radians);
  bool all_exact = true;
  ExactAngleSet exact;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!list[i].pi_multiple) {
      all_exact = false;
      break;
    }
    exact.pi_multiple[i] = *list[i].pi_multiple;
  }
  if (all_exact) out.exact = exact;
  return out;
}

ScanGrid parse_grid(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "default" || s.empty()) return ScanGrid::standard();
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto semi = s.find(';', start);
    parts.push_back(s.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (parts.size() != 4) throw InvalidInput("grid needs 'theta1;list;list;list' or 'default'");
  const auto t1 = parse_angle_list(parts[0]);
  if (t1.size() != 1) throw InvalidInput("grid theta1 must be a single angle");
  ScanGrid grid;
  grid.theta1 = t1[0].radians;
  auto radians = [](const std::vector<ParsedAngle>& v) {
    std::vector<double> out;
    for (const auto& a : v) out.push_back(a.radians);
    return out;
  };
  grid.theta2 = radians(parse_angle_list(parts[1]));
  grid.theta3 = radians(parse_angle_list(parts[2]));
  grid.theta4 = radians(parse_angle_list(parts[3]));
  grid.validate();
  return grid;
}

std::string format_pi_multiple(const Rational& q) {
  if (q == 0) return "0";
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  std::string out;
  if (num == -1)
    out = "-pi";
  else if (num == 1)
    out = "pi";
  else
    out = num.str() + "*pi";
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace chsh
