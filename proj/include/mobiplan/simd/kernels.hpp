#pragma once

// Batched membership kernels for the two hot inner loops of the planner:
// the closed-form floor-point test (one target against every grid point)
// and the robot-frame region test (one region against many points).
//
// Every ISA variant evaluates the same expression tree in the same order
// with no fused multiply-add, so all variants produce identical masks.

#include <cstdint>
#include <span>

#include "mobiplan/core.hpp"

namespace mobiplan::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa);

/// True when this binary contains the variant and the CPU can run it.
bool isa_available(Isa isa);

/// Widest available variant; MOBIPLAN_ISA=scalar|avx2|neon overrides.
Isa best_isa();

/// Per-target constants of the floor-point test. Tolerances are folded in.
struct FloorTest {
  double xt = 0.0;
  double yt = 0.0;
  double cos_phi = 1.0;
  double sin_phi = 0.0;
  double xs_cos = 0.0;   // X_s cos(phi)
  double xs_sin = 0.0;   // X_s sin(phi)
  double x_min_lo = 0.0;  // X_min - tol
  double rmin2_lo = 0.0;  // r_min^2 - tol
  double rmax2_hi = 0.0;  // r_max^2 + tol
};

/// out[k] = 1 iff floor point (xs[k], ys[k]) passes `test`.
void floor_mask(Isa isa, const FloorTest& test, std::span<const double> xs,
                std::span<const double> ys, std::span<std::uint8_t> out);

inline void floor_mask(const FloorTest& test, std::span<const double> xs,
                       std::span<const double> ys, std::span<std::uint8_t> out) {
  floor_mask(best_isa(), test, xs, ys, out);
}

/// out[k] = 1 iff robot-frame point (xs[k], ys[k], zs[k]) lies in `region`.
void region_mask(Isa isa, const GeometricRegion& region, std::span<const double> xs,
                 std::span<const double> ys, std::span<const double> zs,
                 std::span<std::uint8_t> out);

inline void region_mask(const GeometricRegion& region, std::span<const double> xs,
                        std::span<const double> ys, std::span<const double> zs,
                        std::span<std::uint8_t> out) {
  region_mask(best_isa(), region, xs, ys, zs, out);
}

namespace detail {

struct RegionTest {
  double x_min_lo, z_min_lo, z_max_hi, x_s, z_s, rmin2_lo, rmax2_hi;
};

RegionTest make_region_test(const GeometricRegion& region);

void floor_mask_scalar(const FloorTest&, const double*, const double*, std::uint8_t*, std::size_t);
void region_mask_scalar(const RegionTest&, const double*, const double*, const double*,
                        std::uint8_t*, std::size_t);
#if defined(__x86_64__) || defined(_M_X64)
void floor_mask_avx2(const FloorTest&, const double*, const double*, std::uint8_t*, std::size_t);
void region_mask_avx2(const RegionTest&, const double*, const double*, const double*,
                      std::uint8_t*, std::size_t);
#endif
#if defined(__aarch64__)
void floor_mask_neon(const FloorTest&, const double*, const double*, std::uint8_t*, std::size_t);
void region_mask_neon(const RegionTest&, const double*, const double*, const double*,
                      std::uint8_t*, std::size_t);
#endif

}  // namespace detail
}  // namespace mobiplan::simd
