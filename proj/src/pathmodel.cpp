#include "chsh/pathmodel.hpp"

#include <cmath>
#include <numbers>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void require_path(int w) {
  if (w != 1 && w != 2) throw InvalidInput("path index must be 1 or 2");
}

}  // namespace

PathParams::PathParams(double p1, double p2) : p_{p1, p2} {
  for (double p : p_)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("path probability must lie in [0, 1]");
}

double PathParams::path_probability(int photon, int w) const {
  require_path(photon);
  require_path(w);
  const double deflected = p_[static_cast<std::size_t>(photon - 1)];
  return w == 2 ? deflected : 1.0 - deflected;
}

double joint_probability(int z1, int z2, int z1p, int z2p, int w1, int w2, const PathParams& params,
                         const AngleSet& angles) {
  for (int z : {z1, z2, z1p, z2p}) to_outcome(z, /*allow_absent=*/true);
  require_path(w1);
  require_path(w2);
  // Arm w1 of photon 1 and arm w2 of photon 2 carry the photons.
  const int first = w1 == 1 ? z1 : z2;
  const int first_idle = w1 == 1 ? z2 : z1;
  const int second = w2 == 1 ? z1p : z2p;
  const int second_idle = w2 == 1 ? z2p : z1p;
  if (first_idle != 0 || second_idle != 0 || first == 0 || second == 0) return 0.0;
  return params.path_probability(1, w1) * params.path_probability(2, w2) *
         pair_probability(first, second, angles.arm_difference(w1, w2));
}

double conditional_pair_probability(int z, int zp, int w1, int w2, const AngleSet& angles) {
  return pair_probability(z, zp, angles.arm_difference(w1, w2));
}

double conditional_expectation(int w1, int w2, const AngleSet& angles) {
  return pair_expectation(angles.arm_difference(w1, w2));
}

double unconditional_expectation(int j, int k, const PathParams& params, const AngleSet& angles) {
  return params.path_probability(1, j) * params.path_probability(2, k) * conditional_expectation(j, k, angles);
}

double weighted_combination(const PathParams& params, const AngleSet& angles) {
  return unconditional_expectation(1, 1, params, angles) - unconditional_expectation(1, 2, params, angles) +
         unconditional_expectation(2, 1, params, angles) + unconditional_expectation(2, 2, params, angles);
}

InequalityReport bounded_chsh_first_member(const PathParams& params, const AngleSet& angles) {
  const double combination = weighted_combination(params, angles);
  return InequalityReport::make(InequalityKind::kChshConditional, 2.0 - std::fabs(combination),
                                {{"weighted_combination", combination}});
}

NaiveMaximum naive_combination_max() {
  NaiveMaximum m;
  m.witness_varthetas = {0.0, std::numbers::pi / 2.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) m.witness_cosines[i] = std::cos(2.0 * m.witness_varthetas[i]);
  const auto& c = m.witness_cosines;
  m.value = std::fabs(c[0] - c[1] + c[2] + c[3]);
  return m;
}

}  // namespace chsh
