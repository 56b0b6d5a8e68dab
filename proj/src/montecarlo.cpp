#include "chsh/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "chsh/errors.hpp"
#include "chsh/parallel.hpp"

namespace chsh {

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::kIntegerFaithful ? "integer" : "continuous";
}

std::string_view to_string(EstimatorMode mode) {
  return mode == EstimatorMode::kConditional ? "conditional" : "unconditional";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "integer") return SamplingMode::kIntegerFaithful;
  if (text == "continuous") return SamplingMode::kContinuous;
  throw InvalidInput("unknown sampling mode '" + std::string(text) + "'");
}

EstimatorMode parse_estimator_mode(std::string_view text) {
  if (text == "conditional") return EstimatorMode::kConditional;
  if (text == "unconditional") return EstimatorMode::kUnconditional;
  throw InvalidInput("unknown estimator mode '" + std::string(text) + "'");
}

void SimConfig::validate() const {
  if (n_samples < 1) throw InvalidInput("n_samples must be at least 1");
  if (draws_per_sample < 1) throw InvalidInput("draws_per_sample must be at least 1");
  if (draws_per_sample > std::size_t{std::numeric_limits<std::int32_t>::max()})
    throw InvalidInput("draws_per_sample too large");
}

PathDraw map_number_to_path(int d) {
  if (d < 1 || d > 1000) throw InvalidInput("draw must lie in [1, 1000]");
  const int path = (d + kernels::kResidualRange - 1) / kernels::kResidualRange;
  return {path, d - (path - 1) * kernels::kResidualRange};
}

double outcome_cutoff(double p) {
  const double t = kernels::kResidualRange * p;
  const double snapped = std::round(8.0 * t) / 8.0;
  return std::fabs(t - snapped) <= 1e-9 ? snapped : t;
}

std::pair<int, int> map_residual_to_outcome(double residual, double p) {
  if (!(residual > 0.0 && residual <= kernels::kResidualRange)) throw InvalidInput("residual must lie in (0, 250]");
  if (!(p >= 0.0 && p <= 0.5)) throw InvalidInput("equal-outcome probability must lie in [0, 1/2]");
  const double low = outcome_cutoff(p);
  const double high = kernels::kResidualRange - low;
  if (residual <= low) return {-1, -1};
  if (residual <= kernels::kMidCutoff) return {-1, +1};
  if (residual <= high) return {+1, -1};
  return {+1, +1};
}

double path_p(int j, const AngleSet& angles) {
  if (j < 1 || j > 4) throw InvalidInput("path index must lie in 1..4");
  const auto [a, b] = std::array<std::pair<int, int>, 4>{{{1, 3}, {1, 4}, {2, 3}, {2, 4}}}[std::size_t(j - 1)];
  return pair_distribution(angles.difference(a, b)).p_pp;
}

kernels::RealCutoffs real_cutoffs(const AngleSet& angles) {
  kernels::RealCutoffs c;
  for (int j = 1; j <= 4; ++j) {
    c.low[std::size_t(j - 1)] = outcome_cutoff(path_p(j, angles));
    c.high[std::size_t(j - 1)] = kernels::kResidualRange - c.low[std::size_t(j - 1)];
  }
  return c;
}

kernels::IntegerCutoffs integer_cutoffs(const AngleSet& angles) {
  // For integer r: r > t  <=>  r > floor(t).
  const auto real = real_cutoffs(angles);
  kernels::IntegerCutoffs c;
  for (std::size_t i = 0; i < 4; ++i) {
    c.low[i] = static_cast<std::int32_t>(std::floor(real.low[i]));
    c.high[i] = static_cast<std::int32_t>(std::floor(real.high[i]));
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t sample_index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(sample_index)));
}

}  // namespace

std::vector<std::int32_t> integer_draws(std::uint64_t seed, std::uint64_t sample_index, std::size_t count) {
  // Rejection keeps every residue class mod 1000 equally likely.
  constexpr std::uint64_t kRange = 1000;
  constexpr std::uint64_t kLimit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % kRange + 1) % kRange;
  auto engine = sample_engine(seed, sample_index);
  std::vector<std::int32_t> out(count);
  for (auto& d : out) {
    std::uint64_t x = engine();
    while (x >= kLimit) x = engine();
    d = static_cast<std::int32_t>(1 + x % kRange);
  }
  return out;
}

std::vector<double> continuous_draws(std::uint64_t seed, std::uint64_t sample_index, std::size_t count) {
  auto engine = sample_engine(seed, sample_index);
  std::vector<double> out(count);
  for (auto& x : out) x = 1000.0 * (static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53);
  return out;
}

CountsTable CountsTable::from_bins(const kernels::BinCounts& bins) {
  CountsTable t;
  for (std::size_t pair = 0; pair < 4; ++pair)
    for (std::size_t o = 0; o < 4; ++o) t.n[pair][o] = bins[4 * pair + o];
  return t;
}

std::int64_t CountsTable::numerator(std::size_t pair) const {
  const auto& c = n[pair];
  return static_cast<std::int64_t>(c[0]) - static_cast<std::int64_t>(c[1]) - static_cast<std::int64_t>(c[2]) +
         static_cast<std::int64_t>(c[3]);
}

std::size_t pair_slot(int j, int k) {
  if ((j != 1 && j != 2) || (k != 3 && k != 4)) throw InvalidInput("pair must have j in {1,2} and k in {3,4}");
  return std::size_t(2 * (j - 1) + (k - 3));
}

namespace {

CountsTable tally_sample(const SimConfig& config, std::uint64_t sample_index, const AngleSet& angles) {
  kernels::BinCounts bins{};
  if (config.sampling == SamplingMode::kIntegerFaithful) {
    const auto draws = integer_draws(config.seed, sample_index, config.draws_per_sample);
    kernels::tally_integer(draws, integer_cutoffs(angles), bins);
  } else {
    const auto draws = continuous_draws(config.seed, sample_index, config.draws_per_sample);
    kernels::tally_real(draws, real_cutoffs(angles), bins);
  }
  return CountsTable::from_bins(bins);
}

}  // namespace

CountsTable run_sample(const SimConfig& config, std::uint64_t sample_index) {
  config.validate();
  return tally_sample(config, sample_index, config.angles);
}

double estimate_conditional(const CountsTable& counts, int j, int k) {
  const std::size_t slot = pair_slot(j, k);
  const std::uint64_t n_jk = counts.pair_total(slot);
  if (n_jk == 0)
    throw UndefinedEstimate("no draws reached pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
  return static_cast<double>(counts.numerator(slot)) / static_cast<double>(n_jk);
}

double estimate_unconditional(const CountsTable& counts, int j, int k) {
  const std::size_t slot = pair_slot(j, k);
  const std::uint64_t n = counts.total();
  if (n == 0) throw UndefinedEstimate("empty counts table");
  return static_cast<double>(counts.numerator(slot)) / static_cast<double>(n);
}

ExpectationQuad estimate_quad(const CountsTable& counts, EstimatorMode mode) {
  auto est = [&](int j, int k) {
    return mode == EstimatorMode::kConditional ? estimate_conditional(counts, j, k)
                                               : estimate_unconditional(counts, j, k);
  };
  return {est(1, 3), est(1, 4), est(2, 3), est(2, 4)};
}

double first_member(const CountsTable& counts, EstimatorMode mode, SignPattern pattern) {
  if (mode == EstimatorMode::kUnconditional) {
    // Shared denominator: combine the integer numerators, divide once.
    const std::uint64_t n = counts.total();
    if (n == 0) throw UndefinedEstimate("empty counts table");
    const std::int64_t s13 = pattern == SignPattern::kPlusMinusPlusPlus ? 1 : -1;
    const std::int64_t combined = s13 * counts.numerator(0) - s13 * counts.numerator(1) + counts.numerator(2) +
                                  counts.numerator(3);
    return 2.0 - std::fabs(static_cast<double>(combined) / static_cast<double>(n));
  }
  return 2.0 - std::fabs(chsh_combination(estimate_quad(counts, mode), pattern));
}

void summarize(SimulationSummary& summary) {
  std::size_t defined = 0;
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : summary.sample_values) {
    if (std::isnan(v)) continue;
    ++defined;
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  summary.undefined_samples = summary.sample_values.size() - defined;
  if (defined == 0) {
    summary.mean_first_member = std::numeric_limits<double>::quiet_NaN();
    summary.std_first_member = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  // Rounding in the sum can push the mean just outside [lo, hi].
  const double mean = std::clamp(sum / static_cast<double>(defined), lo, hi);
  double sq = 0.0;
  for (double v : summary.sample_values)
    if (!std::isnan(v)) sq += (v - mean) * (v - mean);
  summary.mean_first_member = mean;
  summary.std_first_member = std::sqrt(sq / static_cast<double>(defined));
}

std::vector<SimulationSummary> run_experiment(const SimConfig& config, const ScanGrid& grid, EstimatorMode mode,
                                              SignPattern pattern, unsigned threads) {
  grid.validate();
  std::vector<AngleSet> points(grid.size());
  for (std::size_t g = 0; g < points.size(); ++g) points[g] = grid.point(g);
  return run_experiment(config, points, mode, pattern, threads);
}

std::vector<SimulationSummary> run_experiment(const SimConfig& config, const std::vector<AngleSet>& grid_points,
                                              EstimatorMode mode, SignPattern pattern, unsigned threads) {
  config.validate();
  const std::size_t points = grid_points.size();
  std::vector<SimulationSummary> out(points);
  for (std::size_t g = 0; g < points; ++g) {
    out[g].angles = grid_points[g];
    out[g].mode = mode;
    out[g].sample_values.assign(config.n_samples, 0.0);
  }

  std::vector<kernels::IntegerCutoffs> int_cut(points);
  std::vector<kernels::RealCutoffs> real_cut(points);
  for (std::size_t g = 0; g < points; ++g) {
    int_cut[g] = integer_cutoffs(out[g].angles);
    real_cut[g] = real_cutoffs(out[g].angles);
  }

  // One task per sample: draw once, classify against every grid point.
  // Each task writes only its own column of sample_values.
  parallel_for(config.n_samples, threads, [&](std::size_t s) {
    std::vector<std::int32_t> ints;
    std::vector<double> reals;
    if (config.sampling == SamplingMode::kIntegerFaithful)
      ints = integer_draws(config.seed, s, config.draws_per_sample);
    else
      reals = continuous_draws(config.seed, s, config.draws_per_sample);
    for (std::size_t g = 0; g < points; ++g) {
      kernels::BinCounts bins{};
      if (config.sampling == SamplingMode::kIntegerFaithful)
        kernels::tally_integer(ints, int_cut[g], bins);
      else
        kernels::tally_real(reals, real_cut[g], bins);
      double value;
      try {
        value = first_member(CountsTable::from_bins(bins), mode, pattern);
      } catch (const UndefinedEstimate&) {
        value = std::numeric_limits<double>::quiet_NaN();
      }
      out[g].sample_values[s] = value;
    }
  });

  for (auto& summary : out) summarize(summary);
  return out;
}

}  // namespace chsh
