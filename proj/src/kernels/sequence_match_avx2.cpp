// Compiled with -mavx2 only for this translation unit; callers reach it
// through the dispatcher after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "mapf/kernels/sequence_match.hpp"

namespace mapf::kernels::avx2 {

namespace {

inline __m256i load8(const int32_t* p) noexcept {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

// One bit per 32-bit lane.
inline unsigned lane_mask(__m256i eq) noexcept {
  return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
}

}  // namespace

std::size_t equal_mask(const int32_t* a, const int32_t* b, uint8_t* out, std::size_t n) noexcept {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const unsigned m = lane_mask(_mm256_cmpeq_epi32(load8(a + i), load8(b + i)));
    count += static_cast<std::size_t>(std::popcount(m));
    for (unsigned j = 0; j < 8; ++j) out[i + j] = static_cast<uint8_t>((m >> j) & 1U);
  }
  for (; i < n; ++i) {
    const uint8_t eq = a[i] == b[i] ? 1 : 0;
    out[i] = eq;
    count += eq;
  }
  return count;
}

std::size_t count_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    count += static_cast<std::size_t>(
        std::popcount(lane_mask(_mm256_cmpeq_epi32(load8(a + i), load8(b + i)))));
  }
  for (; i < n; ++i) count += a[i] == b[i] ? 1 : 0;
  return count;
}

std::ptrdiff_t find_first_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const unsigned m = lane_mask(_mm256_cmpeq_epi32(load8(a + i), load8(b + i)));
    if (m != 0) return static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(std::countr_zero(m)));
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::ptrdiff_t find_first_equal2(const int32_t* a, const int32_t* b, const int32_t* c,
                                 const int32_t* d, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i both = _mm256_and_si256(_mm256_cmpeq_epi32(load8(a + i), load8(b + i)),
                                          _mm256_cmpeq_epi32(load8(c + i), load8(d + i)));
    const unsigned m = lane_mask(both);
    if (m != 0) return static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(std::countr_zero(m)));
  }
  for (; i < n; ++i) {
    if (a[i] == b[i] && c[i] == d[i]) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace mapf::kernels::avx2
