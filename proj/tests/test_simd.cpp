#include <doctest.h>

#include <cmath>
#include <vector>

#include "mobiplan/reachability.hpp"
#include "mobiplan/simd/kernels.hpp"
#include "support.hpp"

using namespace mobiplan;
using simd::Isa;

namespace {

std::vector<Isa> variants() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (simd::isa_available(isa)) out.push_back(isa);
  }
  return out;
}

simd::FloorTest random_floor_test(testing::Rng& rng) {
  const double phi = testing::uniform(rng, -kPi, kPi);
  const double xs = testing::uniform(rng, 0.0, 0.4);
  const double rmin = testing::uniform(rng, 0.0, 0.5);
  const double rmax = rmin + testing::uniform(rng, 0.05, 0.6);
  return {testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2), std::cos(phi), std::sin(phi),
          xs * std::cos(phi), xs * std::sin(phi), testing::uniform(rng, 0.0, 0.5) - kBoundaryTol,
          rmin * rmin - kBoundaryTol, rmax * rmax + kBoundaryTol};
}

}  // namespace

TEST_CASE("scalar kernel is always available and named") {
  CHECK(simd::isa_available(Isa::kScalar));
  CHECK(std::string(simd::isa_name(Isa::kScalar)) == "scalar");
  CHECK(std::string(simd::isa_name(simd::best_isa())).size() > 0);
  MESSAGE("dispatching to " << simd::isa_name(simd::best_isa()));
}

TEST_CASE("floor kernels match the scalar reference bit for bit") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const simd::FloorTest t = random_floor_test(rng);
    const std::size_t n = static_cast<std::size_t>(trial % 41);
    std::vector<double> xs(n), ys(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k % 5 == 0) {
        // Land exactly on the outer circle or the x' plane when possible.
        const double a = testing::uniform(rng, -kPi, kPi);
        const double r = std::sqrt(t.rmax2_hi - kBoundaryTol);
        xs[k] = t.xt - t.xs_cos - r * std::cos(a);
        ys[k] = t.yt - t.xs_sin - r * std::sin(a);
      } else {
        xs[k] = t.xt + testing::uniform(rng, -1.5, 1.5);
        ys[k] = t.yt + testing::uniform(rng, -1.5, 1.5);
      }
    }
    std::vector<std::uint8_t> ref(n), got(n);
    simd::floor_mask(Isa::kScalar, t, xs, ys, ref);
    for (Isa isa : variants()) {
      std::fill(got.begin(), got.end(), 7);
      simd::floor_mask(isa, t, xs, ys, got);
      REQUIRE(got == ref);
    }
  }
}

TEST_CASE("region kernels match the scalar reference and region_contains") {
  testing::Rng rng(22);
  const GeometricRegion g = testing::workcell_region();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(1 + trial % 67);
    std::vector<double> xs(n), ys(n), zs(n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = testing::uniform(rng, -0.2, 1.2);
      ys[k] = testing::uniform(rng, -1.0, 1.0);
      zs[k] = testing::uniform(rng, 0.0, 1.6);
      if (k % 7 == 0) zs[k] = g.z_max;
      if (k % 11 == 0) xs[k] = g.x_min;
    }
    std::vector<std::uint8_t> ref(n), got(n);
    simd::region_mask(Isa::kScalar, g, xs, ys, zs, ref);
    for (std::size_t k = 0; k < n; ++k) REQUIRE(ref[k] == region_contains(g, {xs[k], ys[k], zs[k]}));
    for (Isa isa : variants()) {
      simd::region_mask(isa, g, xs, ys, zs, got);
      REQUIRE(got == ref);
    }
  }
}

TEST_CASE("region_contains matches a direct inequality evaluation") {
  const GeometricRegion g = testing::workcell_region();
  CHECK(region_contains(g, {g.x_s + (g.r_min + g.r_max) / 2, 0.0, g.z_s}));
  CHECK_FALSE(region_contains(g, {g.x_min - 0.01, 0.5, g.z_s}));
  testing::Rng rng(23);
  for (int k = 0; k < 100000; ++k) {
    const Vec3 p{testing::uniform(rng, -0.2, 1.3), testing::uniform(rng, -1.1, 1.1), testing::uniform(rng, -0.1, 1.7)};
    const double r = std::sqrt((p.x - 0.22) * (p.x - 0.22) + p.y * p.y + (p.z - 0.64) * (p.z - 0.64));
    const bool expect = p.x >= 0.40 && p.z >= 0.40 && p.z <= 1.20 && r >= 0.51 && r <= 0.84;
    REQUIRE(region_contains(g, p) == expect);
  }
}

TEST_CASE("mismatched spans are rejected") {
  std::vector<double> a(3), b(4);
  std::vector<std::uint8_t> out(3);
  CHECK_THROWS_AS(simd::floor_mask(Isa::kScalar, {}, a, b, out), InvalidInput);
}
