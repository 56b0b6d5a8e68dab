// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cstddef>

#include "chsh/tally_kernels.hpp"

namespace chsh::kernels {

namespace {

// Lane counters are 32-bit; flush well before they can wrap.
constexpr std::size_t kFlushBlocks = std::size_t{1} << 24;

// Adds one to bin b in every lane whose bin index equals b.
struct LaneHistogram {
  __m256i acc[16];

  LaneHistogram() {
    for (auto& a : acc) a = _mm256_setzero_si256();
  }

  void add(__m256i bin) {
    for (int b = 0; b < 16; ++b) {
      const __m256i hit = _mm256_cmpeq_epi32(bin, _mm256_set1_epi32(b));
      acc[b] = _mm256_sub_epi32(acc[b], hit);  // hit lanes are -1
    }
  }

  void flush(BinCounts& bins) {
    alignas(32) std::int32_t lanes[8];
    for (int b = 0; b < 16; ++b) {
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc[b]);
      std::uint64_t total = 0;
      for (std::int32_t v : lanes) total += static_cast<std::uint32_t>(v);
      bins[b] += total;
      acc[b] = _mm256_setzero_si256();
    }
  }
};

}  // namespace

void tally_integer_avx2(std::span<const std::int32_t> draws, const IntegerCutoffs& cutoffs, BinCounts& bins) {
  const __m256i b250 = _mm256_set1_epi32(250);
  const __m256i b500 = _mm256_set1_epi32(500);
  const __m256i b750 = _mm256_set1_epi32(750);
  const __m256i mid = _mm256_set1_epi32(kMidCutoff);
  // Per-path lookup tables, indexed by path in the low lanes.
  const __m256i low = _mm256_setr_epi32(cutoffs.low[0], cutoffs.low[1], cutoffs.low[2], cutoffs.low[3], 0, 0, 0, 0);
  const __m256i high =
      _mm256_setr_epi32(cutoffs.high[0], cutoffs.high[1], cutoffs.high[2], cutoffs.high[3], 0, 0, 0, 0);
  const __m256i offset = _mm256_setr_epi32(0, 250, 500, 750, 0, 0, 0, 0);

  LaneHistogram hist;
  const std::size_t n = draws.size();
  const std::size_t vector_end = n - n % 8;
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < vector_end; i += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(draws.data() + i));
    // Compare masks are -1 where true, so the sum of masks is -path.
    const __m256i neg_path = _mm256_add_epi32(
        _mm256_add_epi32(_mm256_cmpgt_epi32(d, b250), _mm256_cmpgt_epi32(d, b500)), _mm256_cmpgt_epi32(d, b750));
    const __m256i path = _mm256_sub_epi32(_mm256_setzero_si256(), neg_path);
    const __m256i r = _mm256_sub_epi32(d, _mm256_permutevar8x32_epi32(offset, path));
    const __m256i neg_outcome =
        _mm256_add_epi32(_mm256_add_epi32(_mm256_cmpgt_epi32(r, _mm256_permutevar8x32_epi32(low, path)),
                                          _mm256_cmpgt_epi32(r, mid)),
                         _mm256_cmpgt_epi32(r, _mm256_permutevar8x32_epi32(high, path)));
    const __m256i bin = _mm256_sub_epi32(_mm256_slli_epi32(path, 2), neg_outcome);
    hist.add(bin);
    if (++blocks == kFlushBlocks) {
      hist.flush(bins);
      blocks = 0;
    }
  }
  hist.flush(bins);
  tally_integer_scalar(draws.subspan(vector_end), cutoffs, bins);
}

void tally_real_avx2(std::span<const double> draws, const RealCutoffs& cutoffs, BinCounts& bins) {
  const __m256d b250 = _mm256_set1_pd(250.0);
  const __m256d b500 = _mm256_set1_pd(500.0);
  const __m256d b750 = _mm256_set1_pd(750.0);
  const __m256d mid = _mm256_set1_pd(125.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d low[4] = {_mm256_set1_pd(cutoffs.low[0]), _mm256_set1_pd(cutoffs.low[1]),
                          _mm256_set1_pd(cutoffs.low[2]), _mm256_set1_pd(cutoffs.low[3])};
  const __m256d high[4] = {_mm256_set1_pd(cutoffs.high[0]), _mm256_set1_pd(cutoffs.high[1]),
                           _mm256_set1_pd(cutoffs.high[2]), _mm256_set1_pd(cutoffs.high[3])};

  // Four doubles per step; pair two steps to fill one 8-lane bin vector.
  auto classify = [&](const double* p) {
    const __m256d x = _mm256_loadu_pd(p);
    const __m256d m1 = _mm256_cmp_pd(x, b250, _CMP_GT_OQ);
    const __m256d m2 = _mm256_cmp_pd(x, b500, _CMP_GT_OQ);
    const __m256d m3 = _mm256_cmp_pd(x, b750, _CMP_GT_OQ);
    const __m256d path = _mm256_add_pd(_mm256_add_pd(_mm256_and_pd(m1, one), _mm256_and_pd(m2, one)),
                                       _mm256_and_pd(m3, one));
    const __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(b250, path));
    // The path masks are nested (m3 implies m2 implies m1), so chained blends
    // select the cutoff of the lane's own path.
    const __m256d lo = _mm256_blendv_pd(_mm256_blendv_pd(_mm256_blendv_pd(low[0], low[1], m1), low[2], m2), low[3], m3);
    const __m256d hi =
        _mm256_blendv_pd(_mm256_blendv_pd(_mm256_blendv_pd(high[0], high[1], m1), high[2], m2), high[3], m3);
    const __m256d outcome = _mm256_add_pd(
        _mm256_add_pd(_mm256_and_pd(_mm256_cmp_pd(r, lo, _CMP_GT_OQ), one), _mm256_and_pd(_mm256_cmp_pd(r, mid, _CMP_GT_OQ), one)),
        _mm256_and_pd(_mm256_cmp_pd(r, hi, _CMP_GT_OQ), one));
    return _mm256_cvtpd_epi32(_mm256_add_pd(_mm256_mul_pd(four, path), outcome));
  };

  LaneHistogram hist;
  const std::size_t n = draws.size();
  const std::size_t vector_end = n - n % 8;
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < vector_end; i += 8) {
    const __m256i bin = _mm256_set_m128i(classify(draws.data() + i + 4), classify(draws.data() + i));
    hist.add(bin);
    if (++blocks == kFlushBlocks) {
      hist.flush(bins);
      blocks = 0;
    }
  }
  hist.flush(bins);
  tally_real_scalar(draws.subspan(vector_end), cutoffs, bins);
}

}  // namespace chsh::kernels
