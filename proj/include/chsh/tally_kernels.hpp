#pragma once

// Draw classification kernels for the Monte Carlo experiment.
//
// A draw selects one of four arm pairs ("path" 0..3) and then one of four
// polarizer outcomes (--, -+, +-, ++). The kernels turn a batch of draws into
// 16 bin counts, bin = 4 * path + outcome. Every variant must produce exactly
// the counts of the scalar reference.
//
// Integer draws D lie in [1, 1000]: path = number of {250, 500, 750} strictly
// below D, residual r = D - 250 * path in [1, 250], and
//   outcome = [r > low[path]] + [r > 125] + [r > high[path]].
// Continuous draws x lie in (0, 1000] and use the same rule with real cutoffs.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace chsh::kernels {

inline constexpr int kResidualRange = 250;
inline constexpr int kMidCutoff = 125;

using BinCounts = std::array<std::uint64_t, 16>;

/// Per-path cutoffs; low <= 125 <= high is required.
struct IntegerCutoffs {
  std::array<std::int32_t, 4> low{};
  std::array<std::int32_t, 4> high{};
};

struct RealCutoffs {
  std::array<double, 4> low{};
  std::array<double, 4> high{};
};

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

/// Whether the running CPU (and this build) can execute `isa`.
bool supported(Isa isa);

/// Widest supported variant, unless overridden.
Isa active_isa();

/// Forces a variant for subsequent dispatching calls (tests, benchmarks).
/// Passing an unsupported Isa throws InvalidInput.
void set_isa_override(Isa isa);
void clear_isa_override();

void tally_integer_scalar(std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins);
void tally_real_scalar(std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins);

#if defined(CHSH_HAVE_AVX2_KERNELS)
void tally_integer_avx2(std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins);
void tally_real_avx2(std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins);
#endif

/// Dispatching entry points: accumulate into `bins` with `isa`.
void tally_integer(Isa isa, std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins);
void tally_real(Isa isa, std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins);

inline void tally_integer(std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins) {
  tally_integer(active_isa(), draws, cutoffs, bins);
}
inline void tally_real(std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins) {
  tally_real(active_isa(), draws, cutoffs, bins);
}

}  // namespace chsh::kernels
