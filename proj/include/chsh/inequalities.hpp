#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chsh/errors.hpp"
#include "chsh/trig_model.hpp"

namespace chsh {

/// Signs applied to (E13, E14, E23, E24) in the CHSH combination. The two
/// patterns differ only by exchanging orientations 3 and 4.
enum class SignPattern {
  kPlusMinusPlusPlus,   // E13 - E14 + E23 + E24
  kMinusPlusPlusPlus,   // -E13 + E14 + E23 + E24
};

std::string_view to_string(SignPattern pattern);
SignPattern parse_sign_pattern(std::string_view text);

enum class InequalityKind { kChsh, kBell, kBellChsh, kBasic, kWignerProb, kChshConditional };

std::string_view to_string(InequalityKind kind);
InequalityKind parse_inequality_kind(std::string_view text);

/// Correlations of the four measured pairs.
struct ExpectationQuad {
  double e13 = 0.0;
  double e14 = 0.0;
  double e23 = 0.0;
  double e24 = 0.0;
};

/// Pair-law correlations cos(2*thetabar) for the four measured pairs.
ExpectationQuad expectation_quad(const AngleSet& angles);

/// Tolerance below which a first member counts as a violation.
inline constexpr double kViolationTolerance = 1e-12;

struct InequalityReport {
  InequalityKind kind = InequalityKind::kChsh;
  double first_member = 0.0;
  bool violated = false;
  std::vector<std::pair<std::string, double>> components;

  static InequalityReport make(InequalityKind kind, double first_member,
                               std::vector<std::pair<std::string, double>> components = {}) {
    return {kind, first_member, first_member < -kViolationTolerance, std::move(components)};
  }
};

double chsh_combination(const ExpectationQuad& e, SignPattern pattern = SignPattern::kPlusMinusPlusPlus);

/// 2 - |combination|, with the pair-law correlations.
InequalityReport chsh_first_member(const AngleSet& angles, SignPattern pattern = SignPattern::kMinusPlusPlusPlus);

/// 2 - (|e13 - e14| + |e23 + e24|).
double bell_chsh_first_member(const ExpectationQuad& e);

/// Probability law over {-1,+1}^N, lexicographic with -1 first and Z1 the
/// most significant coordinate.
template <std::size_t N>
struct Distribution {
  static constexpr std::size_t kSize = std::size_t{1} << N;
  std::array<double, kSize> mass{};

  static int coordinate(std::size_t index, std::size_t var) {
    return ((index >> (N - 1 - var)) & 1U) ? +1 : -1;
  }
};

inline constexpr double kNormalizationTolerance = 1e-12;

template <std::size_t N>
void require_genuine(const Distribution<N>& dist) {
  double total = 0.0;
  for (double m : dist.mass) {
    if (!std::isfinite(m) || m < -kNormalizationTolerance) throw InvalidInput("distribution has a negative mass");
    total += m;
  }
  if (std::fabs(total - 1.0) > kNormalizationTolerance) throw InvalidInput("distribution is not normalized");
}

/// E(prod of the listed 1-based coordinates).
template <std::size_t N, class... Vars>
double moment(const Distribution<N>& dist, Vars... vars) {
  double e = 0.0;
  for (std::size_t i = 0; i < Distribution<N>::kSize; ++i) {
    int prod = 1;
    ((prod *= Distribution<N>::coordinate(i, static_cast<std::size_t>(vars - 1))), ...);
    e += prod * dist.mass[i];
  }
  return e;
}

/// Slacks of 1 - E(ZjZk) >= |E(Zj) - E(Zk)| and 1 + E(ZjZk) >= |E(Zj) + E(Zk)|.
template <std::size_t N>
std::pair<double, double> basic_inequality_margins(const Distribution<N>& dist, int j, int k) {
  static_assert(N == 2 || N == 3);
  require_genuine(dist);
  if (j < 1 || k < 1 || j > int(N) || k > int(N) || j == k) throw InvalidInput("bad variable indices");
  const double ejk = moment(dist, j, k);
  const double ej = moment(dist, j);
  const double ek = moment(dist, k);
  return {(1.0 - ejk) - std::fabs(ej - ek), (1.0 + ejk) - std::fabs(ej + ek)};
}

/// (1 - E(ZjZl)) - |E(ZjZk) - E(ZkZl)|.
double bell_first_member(const Distribution<3>& dist, int j, int k, int l);

struct WignerParts {
  double half1 = 0.0;  // P13(C) + P14(C') - P34(C)
  double half2 = 0.0;  // P34(C) - P23(C') + P24(C)
  double sum = 0.0;
  double chsh_identity = 0.0;  // combination/2 + 1 under (+,-,+,+)
};

WignerParts wigner_decomposition(const AngleSet& angles);

/// First member of `kind` at one orientation set. For kinds built on the
/// (+,-,+,+) combination, kMinusPlusPlusPlus is evaluated by exchanging
/// orientations 3 and 4.
InequalityReport evaluate(InequalityKind kind, const AngleSet& angles, SignPattern pattern);

struct ScanGrid {
  double theta1 = 0.0;
  std::vector<double> theta2;
  std::vector<double> theta3;
  std::vector<double> theta4;

  /// theta1 = 0 and {k*pi/16 : k = 1..7} on each other axis.
  static ScanGrid standard();
  static ScanGrid single(const AngleSet& angles);
  void validate() const;
  std::size_t size() const { return theta2.size() * theta3.size() * theta4.size(); }
  /// Point `index` with theta2 outermost and theta4 innermost.
  AngleSet point(std::size_t index) const;
};

struct ScanEntry {
  AngleSet angles;
  InequalityReport report;
};

std::vector<ScanEntry> scan(const ScanGrid& grid, InequalityKind kind, SignPattern pattern,
                            unsigned threads = 1);

}  // namespace chsh
