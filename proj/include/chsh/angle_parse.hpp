#pragma once

// Angle and grid text formats.
//
//   angle  := decimal | [sign][k['*']]"pi"['/'m]
//   list   := angle (',' | whitespace) angle ...
//   grid   := "default" | theta1 ';' list ';' list ';' list
//
// Symbolic angles keep their exact multiple of pi. A decimal is exact only
// when it is zero.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chsh/inequalities.hpp"
#include "chsh/rational.hpp"
#include "chsh/trig_model.hpp"

namespace chsh {

struct ParsedAngle {
  double radians = 0.0;
  std::optional<Rational> pi_multiple;
};

ParsedAngle parse_angle(std::string_view text);
std::vector<ParsedAngle> parse_angle_list(std::string_view text);

struct ParsedAngleSet {
  AngleSet angles;
  std::optional<ExactAngleSet> exact;  // set when all four are symbolic
};

/// Exactly four angles.
ParsedAngleSet parse_angle_set(std::string_view text);

ScanGrid parse_grid(std::string_view text);

/// "k*pi/m" form of an exact multiple, e.g. "-pi/3", "2*pi/3", "0".
std::string format_pi_multiple(const Rational& q);

}  // namespace chsh
