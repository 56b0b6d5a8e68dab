#pragma once

// The 16x16 marginal-constraint system  Sigma * P = p  over joint outcomes of
// (Z1, Z2, Z3, Z4), its exact rank, the seven-parameter solution family, and
// the Kolmogorov axiom report for a signed solution.
//
// Index conventions
//   joint outcome: index = 8*b1 + 4*b2 + 2*b3 + b4 with b = (z + 1) / 2, so
//     (-1,-1,-1,-1) is 0 and (+1,+1,+1,+1) is 15.
//   constraint row: 4*pair + 2*bj + bk for pairs (1,3), (1,4), (2,3), (2,4).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chsh/errors.hpp"
#include "chsh/matrix.hpp"
#include "chsh/rational.hpp"
#include "chsh/trig_model.hpp"

namespace chsh {

inline constexpr std::size_t kJointOutcomes = 16;
inline constexpr std::size_t kSystemRank = 9;

/// Measured pairs in constraint-row order, as 1-based orientation indices.
inline constexpr std::array<std::pair<int, int>, 4> kMeasuredPairs = {{{1, 3}, {1, 4}, {2, 3}, {2, 4}}};

using JointOutcome = std::array<int, 4>;

constexpr std::size_t joint_index(const JointOutcome& z) {
  std::size_t idx = 0;
  for (int zi : z) idx = 2 * idx + (zi > 0 ? 1 : 0);
  return idx;
}

constexpr JointOutcome joint_outcome(std::size_t index) {
  JointOutcome z{};
  for (std::size_t i = 0; i < 4; ++i) z[i] = ((index >> (3 - i)) & 1U) ? +1 : -1;
  return z;
}

/// "--+-" style label for a joint outcome.
std::string joint_label(std::size_t index);

/// The 0/1 coefficient matrix: entry (r, c) is 1 when joint outcome c agrees
/// with constraint r on both coordinates of r's pair.
class CoefficientMatrix {
 public:
  CoefficientMatrix();

  std::uint8_t operator()(std::size_t r, std::size_t c) const { return entries_[r][c]; }
  std::uint8_t& operator()(std::size_t r, std::size_t c) { return entries_[r][c]; }

  template <class T>
  Matrix<T> as() const {
    Matrix<T> m(kJointOutcomes, kJointOutcomes);
    for (std::size_t r = 0; r < kJointOutcomes; ++r)
      for (std::size_t c = 0; c < kJointOutcomes; ++c) m(r, c) = T(int(entries_[r][c]));
    return m;
  }

  template <class T>
  std::array<T, kJointOutcomes> apply(const std::array<T, kJointOutcomes>& x) const {
    std::array<T, kJointOutcomes> y{};
    for (std::size_t r = 0; r < kJointOutcomes; ++r) {
      y[r] = T(0);
      for (std::size_t c = 0; c < kJointOutcomes; ++c)
        if (entries_[r][c]) y[r] += x[c];
    }
    return y;
  }

  bool operator==(const CoefficientMatrix&) const = default;

 private:
  std::array<std::array<std::uint8_t, kJointOutcomes>, kJointOutcomes> entries_{};
};

CoefficientMatrix build_sigma();

/// Stacked pair probabilities, same row order as the coefficient matrix.
template <class T>
struct MarginalVector {
  std::array<T, kJointOutcomes> values{};

  /// Entry for measured pair `pair` (0..3) and outcome (zj, zk).
  const T& at(std::size_t pair, int zj, int zk) const { return values[4 * pair + 2 * (zj > 0) + (zk > 0)]; }
  bool operator==(const MarginalVector&) const = default;
};

MarginalVector<double> build_marginals(const AngleSet& angles);

/// Exact marginals; nullopt if some measured difference has an irrational
/// cosine.
std::optional<MarginalVector<Rational>> build_marginals(const ExactAngleSet& angles);

/// Signed weights over the 16 joint outcomes.
template <class T>
struct QuasiDistribution {
  std::array<T, kJointOutcomes> weights{};

  const T& at(const JointOutcome& z) const { return weights[joint_index(z)]; }
  T& at(const JointOutcome& z) { return weights[joint_index(z)]; }
  bool operator==(const QuasiDistribution&) const = default;
};

/// Outcomes whose weights are chosen freely, in the order the family is
/// parameterised.
inline constexpr std::array<JointOutcome, 7> kFreeOutcomes = {{
    {-1, -1, +1, +1},
    {-1, +1, +1, +1},
    {+1, -1, +1, +1},
    {+1, +1, -1, -1},
    {+1, +1, -1, +1},
    {+1, +1, +1, -1},
    {+1, +1, +1, +1},
}};

template <class T>
struct FreeAssignment {
  std::array<T, 7> values{};
  static FreeAssignment zero() { return {}; }
};

template <class T>
struct KolmogorovReport {
  T min_entry{};
  std::vector<std::size_t> negative_indices;
  T total_mass{};
  bool nonneg_ok = false;
  bool total_ok = false;

  bool genuine() const { return nonneg_ok && total_ok; }
};

/// Floating tolerances. Exact mode uses none.
inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kAxiomTolerance = 1e-12;

/// Rank by Gaussian elimination with partial pivoting. Exact for Rational;
/// for double, pivots with magnitude <= kPivotTolerance count as zero.
template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    T best = ScalarTraits<T>::abs(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      T v = ScalarTraits<T>::abs(m(i, c));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (ScalarTraits<T>::is_zero(best, kPivotTolerance)) continue;
    m.swap_rows(r, pivot);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == T(0)) continue;
      const T factor = m(i, c) / m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= factor * m(r, k);
    }
    ++r;
  }
  return r;
}

template <class T>
Matrix<T> augment(const CoefficientMatrix& sigma, const MarginalVector<T>& p) {
  Matrix<T> m(kJointOutcomes, kJointOutcomes + 1);
  for (std::size_t r = 0; r < kJointOutcomes; ++r) {
    for (std::size_t c = 0; c < kJointOutcomes; ++c) m(r, c) = T(int(sigma(r, c)));
    m(r, kJointOutcomes) = p.values[r];
  }
  return m;
}

template <class T>
std::size_t augmented_rank(const CoefficientMatrix& sigma, const MarginalVector<T>& p) {
  return rank(augment(sigma, p));
}

/// Largest |(Sigma*q - p)_r|.
template <class T>
T residual(const CoefficientMatrix& sigma, const QuasiDistribution<T>& q, const MarginalVector<T>& p) {
  const auto y = sigma.apply(q.weights);
  T worst = T(0);
  for (std::size_t r = 0; r < kJointOutcomes; ++r) {
    T d = ScalarTraits<T>::abs(y[r] - p.values[r]);
    if (d > worst) worst = d;
  }
  return worst;
}

/// Member of the solution family with the free outcomes fixed. The nine
/// dependent weights come from back-substitution through the ++ entries of
/// each pair, then (1,3)+-, (2,3)+-, (2,4)-+, then (1,3)-+ and (1,3)--.
/// Throws NoSolution if p is not in the column space of sigma.
template <class T>
QuasiDistribution<T> solve_family(const MarginalVector<T>& p, const FreeAssignment<T>& free) {
  const CoefficientMatrix sigma = build_sigma();
  if (augmented_rank(sigma, p) != kSystemRank)
    throw NoSolution("marginal vector is inconsistent with the coefficient matrix");

  QuasiDistribution<T> q;
  auto P = [&q](int z1, int z2, int z3, int z4) -> T& { return q.at({z1, z2, z3, z4}); };
  for (std::size_t i = 0; i < kFreeOutcomes.size(); ++i) q.at(kFreeOutcomes[i]) = free.values[i];

  constexpr std::size_t k13 = 0, k14 = 1, k23 = 2, k24 = 3;

  P(+1, -1, +1, -1) = p.at(k13, +1, +1) - P(+1, -1, +1, +1) - P(+1, +1, +1, -1) - P(+1, +1, +1, +1);
  P(-1, +1, +1, -1) = p.at(k23, +1, +1) - P(+1, +1, +1, -1) - P(-1, +1, +1, +1) - P(+1, +1, +1, +1);
  P(+1, -1, -1, +1) = p.at(k14, +1, +1) - P(+1, +1, -1, +1) - P(+1, -1, +1, +1) - P(+1, +1, +1, +1);
  P(-1, +1, -1, +1) = p.at(k24, +1, +1) - P(-1, +1, +1, +1) - P(+1, +1, -1, +1) - P(+1, +1, +1, +1);

  P(+1, -1, -1, -1) = p.at(k13, +1, -1) - P(+1, -1, -1, +1) - P(+1, +1, -1, -1) - P(+1, +1, -1, +1);
  P(-1, +1, -1, -1) = p.at(k23, +1, -1) - P(-1, +1, -1, +1) - P(+1, +1, -1, -1) - P(+1, +1, -1, +1);
  P(-1, -1, -1, +1) = p.at(k24, -1, +1) - P(-1, -1, +1, +1) - P(+1, -1, -1, +1) - P(+1, -1, +1, +1);

  P(-1, -1, +1, -1) = p.at(k13, -1, +1) - P(-1, -1, +1, +1) - P(-1, +1, +1, -1) - P(-1, +1, +1, +1);
  P(-1, -1, -1, -1) = p.at(k13, -1, -1) - P(-1, -1, -1, +1) - P(-1, +1, -1, -1) - P(-1, +1, -1, +1);

  return q;
}

template <class T>
KolmogorovReport<T> kolmogorov_check(const QuasiDistribution<T>& q) {
  KolmogorovReport<T> report;
  report.min_entry = q.weights[0];
  report.total_mass = T(0);
  for (std::size_t i = 0; i < kJointOutcomes; ++i) {
    const T& w = q.weights[i];
    if (w < report.min_entry) report.min_entry = w;
    if (w < T(0)) report.negative_indices.push_back(i);
    report.total_mass += w;
  }
  if constexpr (ScalarTraits<T>::kExact) {
    report.nonneg_ok = report.min_entry >= 0;
    report.total_ok = report.total_mass == 1;
  } else {
    report.nonneg_ok = report.min_entry >= -kAxiomTolerance;
    report.total_ok = std::fabs(report.total_mass - 1.0) <= kAxiomTolerance;
  }
  return report;
}

template <class T>
QuasiDistribution<T> abs_variant(const QuasiDistribution<T>& q) {
  QuasiDistribution<T> out;
  for (std::size_t i = 0; i < kJointOutcomes; ++i) out.weights[i] = ScalarTraits<T>::abs(q.weights[i]);
  return out;
}

/// (E13, E14, E23, E24) of the marginals Sigma*q, weighting (--, -+, +-, ++)
/// by (+1, -1, -1, +1).
template <class T>
std::array<T, 4> expectations_from_quasi(const QuasiDistribution<T>& q) {
  const auto marginals = build_sigma().apply(q.weights);
  std::array<T, 4> e{};
  for (std::size_t pair = 0; pair < 4; ++pair) {
    const std::size_t b = 4 * pair;
    e[pair] = marginals[b] - marginals[b + 1] - marginals[b + 2] + marginals[b + 3];
  }
  return e;
}

/// E13 - E14 + E23 + E24 of the marginals of q.
template <class T>
T chsh_from_quasi(const QuasiDistribution<T>& q) {
  const auto e = expectations_from_quasi(q);
  return e[0] - e[1] + e[2] + e[3];
}

}  // namespace chsh
