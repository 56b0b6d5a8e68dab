#include "chsh/trig_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
}

void require_binary(Outcome z) {
  if (z != Outcome::kBlocked && z != Outcome::kPassed) throw InvalidInput("outcome must be -1 or +1");
}

}  // namespace

Outcome to_outcome(int z, bool allow_absent) {
  if (z == -1) return Outcome::kBlocked;
  if (z == +1) return Outcome::kPassed;
  if (z == 0 && allow_absent) return Outcome::kAbsent;
  throw InvalidInput("outcome " + std::to_string(z) + " outside the alphabet");
}

AngleSet::AngleSet(double theta1, double theta2, double theta3, double theta4)
    : theta_{theta1, theta2, theta3, theta4} {
  for (double t : theta_) require_finite(t, "angle");
}

double AngleSet::arm_difference(int j, int k) const {
  if (j < 1 || j > 2 || k < 1 || k > 2) throw InvalidInput("arm index must be 1 or 2");
  return difference(j, k + 2);
}

double PairDistribution::at(Outcome zj, Outcome zk) const {
  require_binary(zj);
  require_binary(zk);
  if (zj == Outcome::kBlocked) return zk == Outcome::kBlocked ? p_mm : p_mp;
  return zk == Outcome::kBlocked ? p_pm : p_pp;
}

double pair_probability(Outcome zj, Outcome zk, double thetabar) {
  require_binary(zj);
  require_binary(zk);
  require_finite(thetabar, "angle difference");
  const double c = std::cos(thetabar);
  const double s = std::sin(thetabar);
  return zj == zk ? c * c / 2.0 : s * s / 2.0;
}

double pair_probability(int zj, int zk, double thetabar) {
  return pair_probability(to_outcome(zj), to_outcome(zk), thetabar);
}

PairDistribution pair_distribution(double thetabar) {
  require_finite(thetabar, "angle difference");
  const double c = std::cos(thetabar);
  const double s = std::sin(thetabar);
  const double equal = c * c / 2.0;
  const double unequal = s * s / 2.0;
  return {equal, unequal, unequal, equal};
}

double pair_expectation(double thetabar) {
  require_finite(thetabar, "angle difference");
  return std::cos(2.0 * thetabar);
}

double single_marginal(Outcome z, double thetabar) {
  require_binary(z);
  require_finite(thetabar, "angle difference");
  return 0.5;
}

double single_marginal(int z, double thetabar) { return single_marginal(to_outcome(z), thetabar); }

std::optional<Rational> exact_cos2(const Rational& pi_multiple) {
  // cos(2*pi*q) depends on 2q mod 2; reduce into [0, 2).
  Rational x = 2 * pi_multiple;
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  // floor(x / 2) computed on integers
  boost::multiprecision::cpp_int q = num / (2 * den);
  if (num < 0 && q * 2 * den != num) q -= 1;
  x -= Rational(q * 2);

  // Niven: the only rational cosines are 0, +-1/2, +-1.
  static const std::array<std::pair<Rational, Rational>, 8> kTable = {{
      {Rational(0), Rational(1)},
      {Rational(1, 3), Rational(1, 2)},
      {Rational(1, 2), Rational(0)},
      {Rational(2, 3), Rational(-1, 2)},
      {Rational(1), Rational(-1)},
      {Rational(4, 3), Rational(-1, 2)},
      {Rational(3, 2), Rational(0)},
      {Rational(5, 3), Rational(1, 2)},
  }};
  for (const auto& [angle, cosine] : kTable)
    if (x == angle) return cosine;
  return std::nullopt;
}

std::optional<std::array<Rational, 4>> exact_pair_distribution(const Rational& pi_multiple) {
  const auto c = exact_cos2(pi_multiple);
  if (!c) return std::nullopt;
  // cos^2(t)/2 = (1 + cos 2t)/4, sin^2(t)/2 = (1 - cos 2t)/4
  const Rational equal = (1 + *c) / 4;
  const Rational unequal = (1 - *c) / 4;
  return std::array<Rational, 4>{equal, unequal, unequal, equal};
}

AngleSet ExactAngleSet::to_angles() const {
  std::array<double, 4> t{};
  for (std::size_t i = 0; i < 4; ++i) t[i] = to_double(pi_multiple[i]) * std::numbers::pi;
  return {t[0], t[1], t[2], t[3]};
}

}  // namespace chsh
