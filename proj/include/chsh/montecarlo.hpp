#pragma once

// Simulated polarizer experiment.
//
// Each draw is a number D in [1, 1000]. Its quarter selects the arm pair
// (path 1: orientations 1,3; path 2: 1,4; path 3: 2,3; path 4: 2,4), and the
// residual D - 250 * (path - 1) in [1, 250] selects the outcome pair through
// the intervals
//   (-1,-1): 0 < r <= 250 p          (-1,+1): 250 p < r <= 125
//   (+1,-1): 125 < r <= 250 (1 - p)  (+1,+1): 250 (1 - p) < r <= 250
// with p = cos^2(thetabar) / 2 for the path's pair.
//
// Random streams: sample s of a run with seed S draws from std::mt19937_64
// seeded with splitmix64(S ^ splitmix64(s)). Integer draws use rejection
// sampling of the 64-bit output onto [1, 1000]; continuous draws use
// 1000 * ((x >> 11) + 1) * 2^-53, which lies in (0, 1000]. The draws of a
// sample depend only on (S, s), so every grid point and both estimators see
// the same samples.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chsh/inequalities.hpp"
#include "chsh/tally_kernels.hpp"
#include "chsh/trig_model.hpp"

namespace chsh {

enum class SamplingMode { kIntegerFaithful, kContinuous };
enum class EstimatorMode { kConditional, kUnconditional };

std::string_view to_string(SamplingMode mode);
std::string_view to_string(EstimatorMode mode);
SamplingMode parse_sampling_mode(std::string_view text);
EstimatorMode parse_estimator_mode(std::string_view text);

struct SimConfig {
  std::size_t n_samples = 100;
  std::size_t draws_per_sample = 1000;
  std::uint64_t seed = 0;
  AngleSet angles;
  SamplingMode sampling = SamplingMode::kIntegerFaithful;

  void validate() const;
};

struct PathDraw {
  int path = 0;      // 1..4
  int residual = 0;  // 1..250
};

PathDraw map_number_to_path(int d);

/// Outcome pair for a residual in (0, 250] given the path's equal-outcome
/// probability p in [0, 1/2].
std::pair<int, int> map_residual_to_outcome(double residual, double p);

/// Equal-outcome probability cos^2(thetabar)/2 of path j in 1..4.
double path_p(int j, const AngleSet& angles);

/// Lower outcome cutoff 250 p. Values within 1e-9 of a multiple of 1/8 are
/// snapped to it so that exactly dyadic probabilities give exact intervals.
double outcome_cutoff(double p);

kernels::RealCutoffs real_cutoffs(const AngleSet& angles);
kernels::IntegerCutoffs integer_cutoffs(const AngleSet& angles);

std::uint64_t splitmix64(std::uint64_t x);

/// Draw stream of one sample.
std::vector<std::int32_t> integer_draws(std::uint64_t seed, std::uint64_t sample_index, std::size_t count);
std::vector<double> continuous_draws(std::uint64_t seed, std::uint64_t sample_index, std::size_t count);

/// Occurrence counts of one sample, indexed [pair][outcome] with pairs
/// (1,3), (1,4), (2,3), (2,4) and outcomes (--, -+, +-, ++).
struct CountsTable {
  std::array<std::array<std::uint64_t, 4>, 4> n{};

  static CountsTable from_bins(const kernels::BinCounts& bins);

  std::uint64_t pair_total(std::size_t pair) const { return n[pair][0] + n[pair][1] + n[pair][2] + n[pair][3]; }
  std::uint64_t total() const { return pair_total(0) + pair_total(1) + pair_total(2) + pair_total(3); }
  /// n^{--} - n^{-+} - n^{+-} + n^{++}
  std::int64_t numerator(std::size_t pair) const;

  bool operator==(const CountsTable&) const = default;
};

/// Row index of (j, k), j in {1,2}, k in {3,4}.
std::size_t pair_slot(int j, int k);

CountsTable run_sample(const SimConfig& config, std::uint64_t sample_index);

/// Numerator / n_jk. Throws UndefinedEstimate when n_jk = 0.
double estimate_conditional(const CountsTable& counts, int j, int k);
/// Numerator / n. Throws UndefinedEstimate when n = 0.
double estimate_unconditional(const CountsTable& counts, int j, int k);

ExpectationQuad estimate_quad(const CountsTable& counts, EstimatorMode mode);

/// 2 - |combination of the four estimates|.
double first_member(const CountsTable& counts, EstimatorMode mode,
                    SignPattern pattern = SignPattern::kMinusPlusPlusPlus);

struct SimulationSummary {
  AngleSet angles;
  EstimatorMode mode = EstimatorMode::kConditional;
  double mean_first_member = 0.0;
  double std_first_member = 0.0;  // population divisor
  std::vector<double> sample_values;  // NaN where an estimate was undefined
  std::size_t undefined_samples = 0;
};

/// Summary statistics over the defined entries of `values`.
void summarize(SimulationSummary& summary);

std::vector<SimulationSummary> run_experiment(const SimConfig& config, const ScanGrid& grid, EstimatorMode mode,
                                              SignPattern pattern = SignPattern::kMinusPlusPlusPlus,
                                              unsigned threads = 1);

/// Same, over an explicit list of orientation sets.
std::vector<SimulationSummary> run_experiment(const SimConfig& config, const std::vector<AngleSet>& points,
                                              EstimatorMode mode,
                                              SignPattern pattern = SignPattern::kMinusPlusPlusPlus,
                                              unsigned threads = 1);

}  // namespace chsh
