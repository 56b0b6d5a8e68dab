#include "chsh/inequalities.hpp"

#include <algorithm>
#include <numbers>

#include "chsh/parallel.hpp"
#include "chsh/pathmodel.hpp"

namespace chsh {

std::string_view to_string(SignPattern pattern) {
  return pattern == SignPattern::kPlusMinusPlusPlus ? "pmpp" : "mppp";
}

SignPattern parse_sign_pattern(std::string_view text) {
  if (text == "pmpp") return SignPattern::kPlusMinusPlusPlus;
  if (text == "mppp") return SignPattern::kMinusPlusPlusPlus;
  throw InvalidInput("unknown sign pattern '" + std::string(text) + "' (expected pmpp or mppp)");
}

namespace {

constexpr std::array<std::pair<InequalityKind, std::string_view>, 6> kKindNames = {{
    {InequalityKind::kChsh, "chsh"},
    {InequalityKind::kBell, "bell"},
    {InequalityKind::kBellChsh, "bell_chsh"},
    {InequalityKind::kBasic, "basic"},
    {InequalityKind::kWignerProb, "wigner_prob"},
    {InequalityKind::kChshConditional, "chsh_conditional"},
}};

// Kinds below are written for the (+,-,+,+) labelling; the other pattern is
// the same expression with orientations 3 and 4 exchanged.
AngleSet relabel(const AngleSet& angles, SignPattern pattern) {
  return pattern == SignPattern::kPlusMinusPlusPlus ? angles : angles.swapped_second_arm();
}

}  // namespace

std::string_view to_string(InequalityKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

InequalityKind parse_inequality_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  throw InvalidInput("unknown inequality kind '" + std::string(text) + "'");
}

ExpectationQuad expectation_quad(const AngleSet& angles) {
  return {pair_expectation(angles.difference(1, 3)), pair_expectation(angles.difference(1, 4)),
          pair_expectation(angles.difference(2, 3)), pair_expectation(angles.difference(2, 4))};
}

double chsh_combination(const ExpectationQuad& e, SignPattern pattern) {
  if (pattern == SignPattern::kPlusMinusPlusPlus) return e.e13 - e.e14 + e.e23 + e.e24;
  return -e.e13 + e.e14 + e.e23 + e.e24;
}

InequalityReport chsh_first_member(const AngleSet& angles, SignPattern pattern) {
  const double combination = chsh_combination(expectation_quad(angles), pattern);
  return InequalityReport::make(InequalityKind::kChsh, 2.0 - std::fabs(combination),
                                {{"combination", combination}});
}

double bell_chsh_first_member(const ExpectationQuad& e) {
  return 2.0 - (std::fabs(e.e13 - e.e14) + std::fabs(e.e23 + e.e24));
}

double bell_first_member(const Distribution<3>& dist, int j, int k, int l) {
  require_genuine(dist);
  for (int v : {j, k, l})
    if (v < 1 || v > 3) throw InvalidInput("variable index must be in 1..3");
  if (j == k || k == l || j == l) throw InvalidInput("variable indices must be distinct");
  return (1.0 - moment(dist, j, l)) - std::fabs(moment(dist, j, k) - moment(dist, k, l));
}

WignerParts wigner_decomposition(const AngleSet& angles) {
  auto equal = [&](int j, int k) {
    const auto d = pair_distribution(angles.difference(j, k));
    return d.p_mm + d.p_pp;
  };
  auto unequal = [&](int j, int k) {
    const auto d = pair_distribution(angles.difference(j, k));
    return d.p_mp + d.p_pm;
  };
  WignerParts w;
  w.half1 = equal(1, 3) + unequal(1, 4) - equal(3, 4);
  w.half2 = equal(3, 4) - unequal(2, 3) + equal(2, 4);
  w.sum = w.half1 + w.half2;
  w.chsh_identity = chsh_combination(expectation_quad(angles), SignPattern::kPlusMinusPlusPlus) / 2.0 + 1.0;
  return w;
}

InequalityReport evaluate(InequalityKind kind, const AngleSet& angles, SignPattern pattern) {
  switch (kind) {
    case InequalityKind::kChsh:
      return chsh_first_member(angles, pattern);
    case InequalityKind::kBellChsh: {
      const auto e = expectation_quad(relabel(angles, pattern));
      return InequalityReport::make(kind, bell_chsh_first_member(e),
                                    {{"abs_13_minus_14", std::fabs(e.e13 - e.e14)},
                                     {"abs_23_plus_24", std::fabs(e.e23 + e.e24)}});
    }
    case InequalityKind::kBell: {
      // 1 - E34 >= |E31 - E14|, the middle variable being Z1.
      const AngleSet a = relabel(angles, pattern);
      const double e34 = pair_expectation(a.difference(3, 4));
      const double e13 = pair_expectation(a.difference(1, 3));
      const double e14 = pair_expectation(a.difference(1, 4));
      return InequalityReport::make(kind, (1.0 - e34) - std::fabs(e13 - e14), {{"e34", e34}});
    }
    case InequalityKind::kBasic: {
      // Single-variable means vanish under the pair law, so each measured
      // pair contributes the slacks 1 - E and 1 + E.
      const auto e = expectation_quad(angles);
      double worst = 2.0;
      for (double ejk : {e.e13, e.e14, e.e23, e.e24}) worst = std::min({worst, 1.0 - ejk, 1.0 + ejk});
      return InequalityReport::make(kind, worst);
    }
    case InequalityKind::kWignerProb: {
      const auto w = wigner_decomposition(relabel(angles, pattern));
      // 0 <= sum <= 2; report the tighter side.
      return InequalityReport::make(kind, std::min(w.sum, 2.0 - w.sum),
                                    {{"half1", w.half1}, {"half2", w.half2}, {"sum", w.sum}});
    }
    case InequalityKind::kChshConditional: {
      auto report = bounded_chsh_first_member(PathParams::equiprobable(), relabel(angles, pattern));
      return report;
    }
  }
  throw InvalidInput("unhandled inequality kind");
}

ScanGrid ScanGrid::standard() {
  ScanGrid grid;
  for (int k = 1; k <= 7; ++k) {
    const double t = k * std::numbers::pi / 16.0;
    grid.theta2.push_back(t);
    grid.theta3.push_back(t);
    grid.theta4.push_back(t);
  }
  return grid;
}

ScanGrid ScanGrid::single(const AngleSet& angles) {
  return {angles.theta(1), {angles.theta(2)}, {angles.theta(3)}, {angles.theta(4)}};
}

void ScanGrid::validate() const {
  if (theta2.empty() || theta3.empty() || theta4.empty()) throw InvalidInput("scan grid axes must be non-empty");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::isfinite(theta1) || !std::ranges::all_of(theta2, finite) || !std::ranges::all_of(theta3, finite) ||
      !std::ranges::all_of(theta4, finite))
    throw InvalidInput("scan grid angles must be finite");
}

AngleSet ScanGrid::point(std::size_t index) const {
  const std::size_t n4 = theta4.size();
  const std::size_t n3 = theta3.size();
  return {theta1, theta2.at(index / (n3 * n4)), theta3.at((index / n4) % n3), theta4.at(index % n4)};
}

std::vector<ScanEntry> scan(const ScanGrid& grid, InequalityKind kind, SignPattern pattern, unsigned threads) {
  grid.validate();
  std::vector<ScanEntry> out(grid.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const AngleSet angles = grid.point(i);
    out[i] = {angles, evaluate(kind, angles, pattern)};
  });
  return out;
}

}  // namespace chsh
