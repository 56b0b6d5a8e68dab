#include "chsh/tally_kernels.hpp"

namespace chsh::kernels {

void tally_integer_scalar(std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins) {
  for (const std::int32_t d : draws) {
    const int path = (d > 250) + (d > 500) + (d > 750);
    const std::int32_t r = d - kResidualRange * path;
    const int outcome = (r > cutoffs.low[path]) + (r > kMidCutoff) + (r > cutoffs.high[path]);
    ++bins[4 * path + outcome];
  }
}

void tally_real_scalar(std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins) {
  for (const double x : draws) {
    const int path = (x > 250.0) + (x > 500.0) + (x > 750.0);
    const double r = x - 250.0 * path;
    const int outcome = (r > cutoffs.low[path]) + (r > 125.0) + (r > cutoffs.high[path]);
    ++bins[4 * path + outcome];
  }
}

}  // namespace chsh::kernels
