#include "chsh/quasiprob.hpp"

namespace chsh {

std::string joint_label(std::size_t index) {
  std::string label;
  for (int z : joint_outcome(index)) label += z > 0 ? '+' : '-';
  return label;
}

CoefficientMatrix::CoefficientMatrix() = default;

CoefficientMatrix build_sigma() {
  CoefficientMatrix sigma;
  for (std::size_t pair = 0; pair < kMeasuredPairs.size(); ++pair) {
    const auto [j, k] = kMeasuredPairs[pair];
    for (std::size_t c = 0; c < kJointOutcomes; ++c) {
      const JointOutcome z = joint_outcome(c);
      const std::size_t row = 4 * pair + 2 * (z[j - 1] > 0) + (z[k - 1] > 0);
      sigma(row, c) = 1;
    }
  }
  return sigma;
}

MarginalVector<double> build_marginals(const AngleSet& angles) {
  MarginalVector<double> p;
  for (std::size_t pair = 0; pair < kMeasuredPairs.size(); ++pair) {
    const auto [j, k] = kMeasuredPairs[pair];
    const auto block = pair_distribution(angles.difference(j, k)).as_array();
    for (std::size_t i = 0; i < 4; ++i) p.values[4 * pair + i] = block[i];
  }
  return p;
}

std::optional<MarginalVector<Rational>> build_marginals(const ExactAngleSet& angles) {
  MarginalVector<Rational> p;
  for (std::size_t pair = 0; pair < kMeasuredPairs.size(); ++pair) {
    const auto [j, k] = kMeasuredPairs[pair];
    const auto block = exact_pair_distribution(angles.difference(j, k));
    if (!block) return std::nullopt;
    for (std::size_t i = 0; i < 4; ++i) p.values[4 * pair + i] = (*block)[i];
  }
  return p;
}

}  // namespace chsh
