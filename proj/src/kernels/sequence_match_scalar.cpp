#include "mapf/kernels/sequence_match.hpp"

namespace mapf::kernels::scalar {

std::size_t equal_mask(const int32_t* a, const int32_t* b, uint8_t* out, std::size_t n) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const uint8_t eq = a[i] == b[i] ? 1 : 0;
    out[i] = eq;
    count += eq;
  }
  return count;
}

std::size_t count_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += a[i] == b[i] ? 1 : 0;
  return count;
}

std::ptrdiff_t find_first_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::ptrdiff_t find_first_equal2(const int32_t* a, const int32_t* b, const int32_t* c,
                                 const int32_t* d, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i] && c[i] == d[i]) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace mapf::kernels::scalar
