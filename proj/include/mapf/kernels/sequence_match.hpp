#pragma once

// Element-wise comparison kernels over vertex-id sequences. Conflict
// detection reduces to these: two agents' padded location sequences (or one
// shifted by a time step) compared lane by lane.
//
// Each kernel has a scalar reference and an AVX2 variant; the variant is
// picked once at first use from CPUID and can be forced for testing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace mapf::kernels {

enum class Isa : uint8_t { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

// True when this binary contains the AVX2 path and the CPU supports it.
bool avx2_available() noexcept;

// ISA used by the dispatched entry points below.
Isa active_isa() noexcept;

// Forces an ISA (nullopt restores auto-detection). Requesting AVX2 on a CPU
// without it falls back to scalar. Not thread-safe; call from tests only.
void force_isa(std::optional<Isa> isa) noexcept;

// out[i] = (a[i] == b[i]) for i < n, n = min(|a|, |b|, |out|). Returns the
// number of equal lanes.
std::size_t equal_mask(std::span<const int32_t> a, std::span<const int32_t> b,
                       std::span<uint8_t> out) noexcept;

// Number of indices i < min(|a|, |b|) with a[i] == b[i].
std::size_t count_equal(std::span<const int32_t> a, std::span<const int32_t> b) noexcept;

// Smallest i with a[i] == b[i], or -1.
std::ptrdiff_t find_first_equal(std::span<const int32_t> a, std::span<const int32_t> b) noexcept;

// Smallest i with a[i] == b[i] and c[i] == d[i] (all four spans aligned on
// index), or -1. Used for two-condition witnesses such as swaps.
std::ptrdiff_t find_first_equal2(std::span<const int32_t> a, std::span<const int32_t> b,
                                 std::span<const int32_t> c, std::span<const int32_t> d) noexcept;

// Direct implementations, exposed for equivalence tests and benchmarks.
namespace scalar {
std::size_t equal_mask(const int32_t* a, const int32_t* b, uint8_t* out, std::size_t n) noexcept;
std::size_t count_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept;
std::ptrdiff_t find_first_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept;
std::ptrdiff_t find_first_equal2(const int32_t* a, const int32_t* b, const int32_t* c,
                                 const int32_t* d, std::size_t n) noexcept;
}  // namespace scalar

#if defined(MAPF_HAVE_AVX2_KERNELS)
namespace avx2 {
std::size_t equal_mask(const int32_t* a, const int32_t* b, uint8_t* out, std::size_t n) noexcept;
std::size_t count_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept;
std::ptrdiff_t find_first_equal(const int32_t* a, const int32_t* b, std::size_t n) noexcept;
std::ptrdiff_t find_first_equal2(const int32_t* a, const int32_t* b, const int32_t* c,
                                 const int32_t* d, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace mapf::kernels
