#include <algorithm>
#include <atomic>

#include "mapf/kernels/sequence_match.hpp"

namespace mapf::kernels {

namespace {

struct KernelTable {
  std::size_t (*equal_mask)(const int32_t*, const int32_t*, uint8_t*, std::size_t) noexcept;
  std::size_t (*count_equal)(const int32_t*, const int32_t*, std::size_t) noexcept;
  std::ptrdiff_t (*find_first_equal)(const int32_t*, const int32_t*, std::size_t) noexcept;
  std::ptrdiff_t (*find_first_equal2)(const int32_t*, const int32_t*, const int32_t*,
                                      const int32_t*, std::size_t) noexcept;
  Isa isa;
};

constexpr KernelTable kScalarTable{scalar::equal_mask, scalar::count_equal,
                                   scalar::find_first_equal, scalar::find_first_equal2,
                                   Isa::Scalar};

#if defined(MAPF_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{avx2::equal_mask, avx2::count_equal, avx2::find_first_equal,
                                 avx2::find_first_equal2, Isa::Avx2};
#endif

bool detect_avx2() noexcept {
#if defined(MAPF_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* select(std::optional<Isa> wanted) noexcept {
#if defined(MAPF_HAVE_AVX2_KERNELS)
  const bool have = detect_avx2();
  if (!wanted) return have ? &kAvx2Table : &kScalarTable;
  if (*wanted == Isa::Avx2 && have) return &kAvx2Table;
#else
  (void)wanted;
#endif
  return &kScalarTable;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{select(std::nullopt)};
  return table;
}

inline const KernelTable& table() noexcept { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
  static const bool have = detect_avx2();
  return have;
}

Isa active_isa() noexcept { return table().isa; }

void force_isa(std::optional<Isa> isa) noexcept {
  current().store(select(isa), std::memory_order_relaxed);
}

std::size_t equal_mask(std::span<const int32_t> a, std::span<const int32_t> b,
                       std::span<uint8_t> out) noexcept {
  const std::size_t n = std::min({a.size(), b.size(), out.size()});
  return table().equal_mask(a.data(), b.data(), out.data(), n);
}

std::size_t count_equal(std::span<const int32_t> a, std::span<const int32_t> b) noexcept {
  return table().count_equal(a.data(), b.data(), std::min(a.size(), b.size()));
}

std::ptrdiff_t find_first_equal(std::span<const int32_t> a, std::span<const int32_t> b) noexcept {
  return table().find_first_equal(a.data(), b.data(), std::min(a.size(), b.size()));
}

std::ptrdiff_t find_first_equal2(std::span<const int32_t> a, std::span<const int32_t> b,
                                 std::span<const int32_t> c, std::span<const int32_t> d) noexcept {
  const std::size_t n = std::min({a.size(), b.size(), c.size(), d.size()});
  return table().find_first_equal2(a.data(), b.data(), c.data(), d.data(), n);
}

}  // namespace mapf::kernels
