#include <atomic>

#include "chsh/errors.hpp"
#include "chsh/tally_kernels.hpp"

namespace chsh::kernels {

namespace {

// -1: no override.
std::atomic<int> g_override{-1};

bool cpu_has_avx2() {
#if defined(CHSH_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa best = supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  return best;
}

void set_isa_override(Isa isa) {
  if (!supported(isa)) throw InvalidInput("instruction set '" + std::string(to_string(isa)) + "' is not available");
  g_override.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void clear_isa_override() { g_override.store(-1, std::memory_order_relaxed); }

void tally_integer(Isa isa, std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins) {
#if defined(CHSH_HAVE_AVX2_KERNELS)
  if (isa == Isa::kAvx2) return tally_integer_avx2(draws, cutoffs, bins);
#endif
  (void)isa;
  tally_integer_scalar(draws, cutoffs, bins);
}

void tally_real(Isa isa, std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins) {
#if defined(CHSH_HAVE_AVX2_KERNELS)
  if (isa == Isa::kAvx2) return tally_real_avx2(draws, cutoffs, bins);
#endif
  (void)isa;
  tally_real_scalar(draws, cutoffs, bins);
}

}  // namespace chsh::kernels
