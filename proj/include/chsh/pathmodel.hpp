#pragma once

// Path-resolved model: each photon meets a semitransparent mirror first, and
// the pair of arms taken (W1, W2) selects which polarizer pair is measured.
// W = 1 means the photon passes the mirror, W = 2 means it is deflected.

#include <array>

#include "chsh/inequalities.hpp"
#include "chsh/trig_model.hpp"

namespace chsh {

class PathParams {
 public:
  /// p1, p2: probability that photon 1 / photon 2 is deflected.
  PathParams(double p1, double p2);
  static PathParams equiprobable() { return {0.5, 0.5}; }

  double p1() const { return p_[0]; }
  double p2() const { return p_[1]; }

  /// P(W_photon = w), photon in {1,2}, w in {1,2}.
  double path_probability(int photon, int w) const;

 private:
  std::array<double, 2> p_{};
};

/// P(Z1, Z2, Z1', Z2', W1, W2) with Z1' := Z3, Z2' := Z4. Only the arm pair
/// selected by (w1, w2) carries outcomes; the other two coordinates must be 0.
double joint_probability(int z1, int z2, int z1p, int z2p, int w1, int w2, const PathParams& params,
                         const AngleSet& angles);

/// P(Z_{w1}, Z'_{w2} | W1 = w1, W2 = w2), i.e. the pair law at the selected arms.
double conditional_pair_probability(int z, int zp, int w1, int w2, const AngleSet& angles);

/// E(Z_{w1} * Z'_{w2} | w1, w2) = cos(2 * vartheta(w1, w2)).
double conditional_expectation(int w1, int w2, const AngleSet& angles);

/// E(Z_j * Z'_k) = P(W1 = j) P(W2 = k) cos(2 * vartheta(j, k)).
double unconditional_expectation(int j, int k, const PathParams& params, const AngleSet& angles);

/// Path-weighted (+,-,+,+) combination of the four unconditional expectations.
double weighted_combination(const PathParams& params, const AngleSet& angles);

/// 2 - |weighted_combination|; never below 1.
InequalityReport bounded_chsh_first_member(const PathParams& params, const AngleSet& angles);

struct NaiveMaximum {
  double value = 0.0;
  std::array<double, 4> witness_varthetas{};  // (11, 12, 21, 22)
  std::array<double, 4> witness_cosines{};
};

/// Supremum of |cos 2v11 - cos 2v12 + cos 2v21 + cos 2v22| over free v's.
NaiveMaximum naive_combination_max();

}  // namespace chsh
