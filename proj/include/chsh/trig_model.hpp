#pragma once

#include <array>
#include <optional>

#include "chsh/rational.hpp"

// Closed-form law for one polarizer pair. Everything here is a pure function
// of the angle difference.

namespace chsh {

/// Polarizer outcome: +1 the photon passes, -1 it is blocked. The path model
/// additionally uses 0 for "no photon on this arm".
enum class Outcome : int { kBlocked = -1, kAbsent = 0, kPassed = +1 };

/// Checked conversion from an integer; accepts -1/+1, and 0 when allow_absent.
Outcome to_outcome(int z, bool allow_absent = false);
inline int value(Outcome z) { return static_cast<int>(z); }

/// The four polarizer orientations, in radians. Orientations 1 and 2 sit on
/// the first photon's arms, 3 and 4 on the second photon's arms.
class AngleSet {
 public:
  AngleSet() = default;
  AngleSet(double theta1, double theta2, double theta3, double theta4);

  double theta(int j) const { return theta_.at(static_cast<std::size_t>(j - 1)); }
  const std::array<double, 4>& thetas() const { return theta_; }

  /// theta_k - theta_j, for any 1 <= j, k <= 4.
  double difference(int j, int k) const { return theta(k) - theta(j); }

  /// Difference between first-arm orientation j in {1,2} and second-arm
  /// orientation k in {1,2}, i.e. theta_{k+2} - theta_j.
  double arm_difference(int j, int k) const;

  /// Same set with orientations 3 and 4 exchanged.
  AngleSet swapped_second_arm() const { return {theta_[0], theta_[1], theta_[3], theta_[2]}; }

  bool operator==(const AngleSet&) const = default;

 private:
  std::array<double, 4> theta_{};
};

/// Joint law of one pair, indexed (-1,-1), (-1,+1), (+1,-1), (+1,+1).
struct PairDistribution {
  double p_mm = 0.0;
  double p_mp = 0.0;
  double p_pm = 0.0;
  double p_pp = 0.0;

  std::array<double, 4> as_array() const { return {p_mm, p_mp, p_pm, p_pp}; }
  double at(Outcome zj, Outcome zk) const;
};

double pair_probability(Outcome zj, Outcome zk, double thetabar);
double pair_probability(int zj, int zk, double thetabar);
PairDistribution pair_distribution(double thetabar);

/// E(Zj*Zk) = cos(2*thetabar).
double pair_expectation(double thetabar);

/// P(Zj = z); 1/2 at every angle.
double single_marginal(Outcome z, double thetabar);
double single_marginal(int z, double thetabar);

// Exact evaluation for angles given as rational multiples of pi.

/// cos(2*pi*q) when it is rational (q a multiple of 1/6 or 1/4), else nullopt.
std::optional<Rational> exact_cos2(const Rational& pi_multiple);

/// Exact pair law at thetabar = pi*q, in (--, -+, +-, ++) order.
std::optional<std::array<Rational, 4>> exact_pair_distribution(const Rational& pi_multiple);

/// Orientations held as exact multiples of pi.
struct ExactAngleSet {
  std::array<Rational, 4> pi_multiple;

  Rational difference(int j, int k) const {
    return pi_multiple.at(static_cast<std::size_t>(k - 1)) - pi_multiple.at(static_cast<std::size_t>(j - 1));
  }
  AngleSet to_angles() const;
};

}  // namespace chsh
