// Built with -mavx2 (no -mfma); only reached after a runtime CPU check.
#include <immintrin.h>

#include "mobiplan/simd/kernels.hpp"

namespace mobiplan::simd::detail {

namespace {

inline void store_mask(__m256d m, std::uint8_t* out) {
  const int bits = _mm256_movemask_pd(m);
  out[0] = static_cast<std::uint8_t>(bits & 1);
  out[1] = static_cast<std::uint8_t>((bits >> 1) & 1);
  out[2] = static_cast<std::uint8_t>((bits >> 2) & 1);
  out[3] = static_cast<std::uint8_t>((bits >> 3) & 1);
}

}  // namespace

void floor_mask_avx2(const FloorTest& t, const double* xs, const double* ys, std::uint8_t* out,
                     std::size_t n) {
  const __m256d xt = _mm256_set1_pd(t.xt);
  const __m256d yt = _mm256_set1_pd(t.yt);
  const __m256d cp = _mm256_set1_pd(t.cos_phi);
  const __m256d sp = _mm256_set1_pd(t.sin_phi);
  const __m256d xsc = _mm256_set1_pd(t.xs_cos);
  const __m256d xss = _mm256_set1_pd(t.xs_sin);
  const __m256d xmin = _mm256_set1_pd(t.x_min_lo);
  const __m256d rmin2 = _mm256_set1_pd(t.rmin2_lo);
  const __m256d rmax2 = _mm256_set1_pd(t.rmax2_hi);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_sub_pd(xt, _mm256_loadu_pd(xs + k));
    const __m256d dy = _mm256_sub_pd(yt, _mm256_loadu_pd(ys + k));
    const __m256d xp = _mm256_add_pd(_mm256_mul_pd(dx, cp), _mm256_mul_pd(dy, sp));
    const __m256d ex = _mm256_sub_pd(dx, xsc);
    const __m256d ey = _mm256_sub_pd(dy, xss);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    __m256d m = _mm256_cmp_pd(xp, xmin, _CMP_GE_OQ);
    m = _mm256_and_pd(m, _mm256_cmp_pd(d2, rmin2, _CMP_GE_OQ));
    m = _mm256_and_pd(m, _mm256_cmp_pd(d2, rmax2, _CMP_LE_OQ));
    store_mask(m, out + k);
  }
  floor_mask_scalar(t, xs + k, ys + k, out + k, n - k);
}

void region_mask_avx2(const RegionTest& r, const double* xs, const double* ys, const double* zs,
                      std::uint8_t* out, std::size_t n) {
  const __m256d xmin = _mm256_set1_pd(r.x_min_lo);
  const __m256d zmin = _mm256_set1_pd(r.z_min_lo);
  const __m256d zmax = _mm256_set1_pd(r.z_max_hi);
  const __m256d cx = _mm256_set1_pd(r.x_s);
  const __m256d cz = _mm256_set1_pd(r.z_s);
  const __m256d rmin2 = _mm256_set1_pd(r.rmin2_lo);
  const __m256d rmax2 = _mm256_set1_pd(r.rmax2_hi);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(xs + k);
    const __m256d y = _mm256_loadu_pd(ys + k);
    const __m256d z = _mm256_loadu_pd(zs + k);
    const __m256d ex = _mm256_sub_pd(x, cx);
    const __m256d ez = _mm256_sub_pd(z, cz);
    const __m256d r2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(y, y)),
                                     _mm256_mul_pd(ez, ez));
    __m256d m = _mm256_cmp_pd(z, zmin, _CMP_GE_OQ);
    m = _mm256_and_pd(m, _mm256_cmp_pd(z, zmax, _CMP_LE_OQ));
    m = _mm256_and_pd(m, _mm256_cmp_pd(x, xmin, _CMP_GE_OQ));
    m = _mm256_and_pd(m, _mm256_cmp_pd(r2, rmin2, _CMP_GE_OQ));
    m = _mm256_and_pd(m, _mm256_cmp_pd(r2, rmax2, _CMP_LE_OQ));
    store_mask(m, out + k);
  }
  region_mask_scalar(r, xs + k, ys + k, zs + k, out + k, n - k);
}

}  // namespace mobiplan::simd::detail
