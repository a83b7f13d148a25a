#include <cstdlib>
#include <string_view>

#include "mobiplan/simd/kernels.hpp"

namespace mobiplan::simd {

namespace {

Isa detect() {
  if (const char* env = std::getenv("MOBIPLAN_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::kScalar;
    if (want == "avx2" && isa_available(Isa::kAvx2)) return Isa::kAvx2;
    if (want == "neon" && isa_available(Isa::kNeon)) return Isa::kNeon;
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
  if (a != b || a != out) throw InvalidInput("simd kernel: mismatched span lengths");
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa isa = detect();
  return isa;
}

namespace detail {

RegionTest make_region_test(const GeometricRegion& g) {
  return {g.x_min - kBoundaryTol, g.z_min - kBoundaryTol, g.z_max + kBoundaryTol, g.x_s, g.z_s,
          g.r_min * g.r_min - kBoundaryTol, g.r_max * g.r_max + kBoundaryTol};
}

}  // namespace detail

void floor_mask(Isa isa, const FloorTest& test, std::span<const double> xs,
                std::span<const double> ys, std::span<std::uint8_t> out) {
  check_sizes(xs.size(), ys.size(), out.size());
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2:
      if (isa_available(isa)) {
        detail::floor_mask_avx2(test, xs.data(), ys.data(), out.data(), out.size());
        return;
      }
      break;
#endif
#if defined(__aarch64__)
    case Isa::kNeon:
      detail::floor_mask_neon(test, xs.data(), ys.data(), out.data(), out.size());
      return;
#endif
    default:
      break;
  }
  detail::floor_mask_scalar(test, xs.data(), ys.data(), out.data(), out.size());
}

void region_mask(Isa isa, const GeometricRegion& region, std::span<const double> xs,
                 std::span<const double> ys, std::span<const double> zs,
                 std::span<std::uint8_t> out) {
  check_sizes(xs.size(), ys.size(), out.size());
  check_sizes(xs.size(), zs.size(), out.size());
  const detail::RegionTest test = detail::make_region_test(region);
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2:
      if (isa_available(isa)) {
        detail::region_mask_avx2(test, xs.data(), ys.data(), zs.data(), out.data(), out.size());
        return;
      }
      break;
#endif
#if defined(__aarch64__)
    case Isa::kNeon:
      detail::region_mask_neon(test, xs.data(), ys.data(), zs.data(), out.data(), out.size());
      return;
#endif
    default:
      break;
  }
  detail::region_mask_scalar(test, xs.data(), ys.data(), zs.data(), out.data(), out.size());
}

}  // namespace mobiplan::simd
