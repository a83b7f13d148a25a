#include "mobiplan/simd/kernels.hpp"

namespace mobiplan::simd::detail {

void floor_mask_scalar(const FloorTest& t, const double* xs, const double* ys, std::uint8_t* out,
                       std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = t.xt - xs[k];
    const double dy = t.yt - ys[k];
    const double xp = dx * t.cos_phi + dy * t.sin_phi;
    const double ex = dx - t.xs_cos;
    const double ey = dy - t.xs_sin;
    const double d2 = ex * ex + ey * ey;
    out[k] = static_cast<std::uint8_t>((xp >= t.x_min_lo) & (d2 >= t.rmin2_lo) & (d2 <= t.rmax2_hi));
  }
}

void region_mask_scalar(const RegionTest& r, const double* xs, const double* ys, const double* zs,
                        std::uint8_t* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ex = xs[k] - r.x_s;
    const double ez = zs[k] - r.z_s;
    const double r2 = ex * ex + ys[k] * ys[k] + ez * ez;
    out[k] = static_cast<std::uint8_t>((zs[k] >= r.z_min_lo) & (zs[k] <= r.z_max_hi) &
                                       (xs[k] >= r.x_min_lo) & (r2 >= r.rmin2_lo) &
                                       (r2 <= r.rmax2_hi));
  }
}

}  // namespace mobiplan::simd::detail
