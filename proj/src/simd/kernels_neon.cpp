#include <arm_neon.h>

#include "mobiplan/simd/kernels.hpp"

namespace mobiplan::simd::detail {

namespace {

inline void store_mask(uint64x2_t m, std::uint8_t* out) {
  out[0] = static_cast<std::uint8_t>(vgetq_lane_u64(m, 0) & 1u);
  out[1] = static_cast<std::uint8_t>(vgetq_lane_u64(m, 1) & 1u);
}

}  // namespace

void floor_mask_neon(const FloorTest& t, const double* xs, const double* ys, std::uint8_t* out,
                     std::size_t n) {
  const float64x2_t xt = vdupq_n_f64(t.xt);
  const float64x2_t yt = vdupq_n_f64(t.yt);
  const float64x2_t cp = vdupq_n_f64(t.cos_phi);
  const float64x2_t sp = vdupq_n_f64(t.sin_phi);
  const float64x2_t xsc = vdupq_n_f64(t.xs_cos);
  const float64x2_t xss = vdupq_n_f64(t.xs_sin);
  const float64x2_t xmin = vdupq_n_f64(t.x_min_lo);
  const float64x2_t rmin2 = vdupq_n_f64(t.rmin2_lo);
  const float64x2_t rmax2 = vdupq_n_f64(t.rmax2_hi);

  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t dx = vsubq_f64(xt, vld1q_f64(xs + k));
    const float64x2_t dy = vsubq_f64(yt, vld1q_f64(ys + k));
    // vmulq + vaddq, never vfmaq: must round like the scalar path.
    const float64x2_t xp = vaddq_f64(vmulq_f64(dx, cp), vmulq_f64(dy, sp));
    const float64x2_t ex = vsubq_f64(dx, xsc);
    const float64x2_t ey = vsubq_f64(dy, xss);
    const float64x2_t d2 = vaddq_f64(vmulq_f64(ex, ex), vmulq_f64(ey, ey));
    uint64x2_t m = vcgeq_f64(xp, xmin);
    m = vandq_u64(m, vcgeq_f64(d2, rmin2));
    m = vandq_u64(m, vcleq_f64(d2, rmax2));
    store_mask(m, out + k);
  }
  floor_mask_scalar(t, xs + k, ys + k, out + k, n - k);
}

void region_mask_neon(const RegionTest& r, const double* xs, const double* ys, const double* zs,
                      std::uint8_t* out, std::size_t n) {
  const float64x2_t xmin = vdupq_n_f64(r.x_min_lo);
  const float64x2_t zmin = vdupq_n_f64(r.z_min_lo);
  const float64x2_t zmax = vdupq_n_f64(r.z_max_hi);
  const float64x2_t cx = vdupq_n_f64(r.x_s);
  const float64x2_t cz = vdupq_n_f64(r.z_s);
  const float64x2_t rmin2 = vdupq_n_f64(r.rmin2_lo);
  const float64x2_t rmax2 = vdupq_n_f64(r.rmax2_hi);

  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t x = vld1q_f64(xs + k);
    const float64x2_t y = vld1q_f64(ys + k);
    const float64x2_t z = vld1q_f64(zs + k);
    const float64x2_t ex = vsubq_f64(x, cx);
    const float64x2_t ez = vsubq_f64(z, cz);
    const float64x2_t r2 =
        vaddq_f64(vaddq_f64(vmulq_f64(ex, ex), vmulq_f64(y, y)), vmulq_f64(ez, ez));
    uint64x2_t m = vcgeq_f64(z, zmin);
    m = vandq_u64(m, vcleq_f64(z, zmax));
    m = vandq_u64(m, vcgeq_f64(x, xmin));
    m = vandq_u64(m, vcgeq_f64(r2, rmin2));
    m = vandq_u64(m, vcleq_f64(r2, rmax2));
    store_mask(m, out + k);
  }
  region_mask_scalar(r, xs + k, ys + k, zs + k, out + k, n - k);
}

}  // namespace mobiplan::simd::detail
