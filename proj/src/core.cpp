#include "mobiplan/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mobiplan {

double normalize_azimuth(double angle) {
  if (!std::isfinite(angle)) {
    throw InvalidInput("normalize_azimuth: non-finite angle");
  }
  // remainder() is exact and lands in [-pi, pi].
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

Vec3 Target::direction() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Target make_target(double x, double y, double z, double theta, double phi) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || !std::isfinite(theta) ||
      !std::isfinite(phi)) {
    throw InvalidInput("target has a non-finite coordinate");
  }
  if (theta < 0.0 || theta > kPi) {
    throw InvalidInput("target polar angle outside [0, pi]");
  }
  return Target{x, y, z, theta, normalize_azimuth(phi)};
}

FloorGrid make_floor_grid(Vec2 origin, double cell_size, int nx, int ny) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidInput("floor cell_size must be positive");
  }
  if (nx <= 0 || ny <= 0) {
    throw InvalidInput("floor grid must have at least one cell per axis");
  }
  FloorGrid grid;
  grid.origin = origin;
  grid.cell_size = cell_size;
  grid.nx = nx;
  grid.ny = ny;
  grid.points.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int row = 0; row < ny; ++row) {
    for (int col = 0; col < nx; ++col) {
      grid.points.push_back({origin.x + col * cell_size, origin.y + row * cell_size});
    }
  }
  return grid;
}

FloorGrid make_floor_grid_around(std::span<const Target> targets, double cell_size,
                                 double margin) {
  if (targets.empty()) throw InvalidInput("cannot size a floor grid without targets");
  if (!(cell_size > 0.0)) throw InvalidInput("floor cell_size must be positive");
  double lo_x = targets[0].x, hi_x = targets[0].x;
  double lo_y = targets[0].y, hi_y = targets[0].y;
  for (const Target& t : targets) {
    lo_x = std::min(lo_x, t.x);
    hi_x = std::max(hi_x, t.x);
    lo_y = std::min(lo_y, t.y);
    hi_y = std::max(hi_y, t.y);
  }
  const double x0 = std::floor((lo_x - margin) / cell_size) * cell_size;
  const double y0 = std::floor((lo_y - margin) / cell_size) * cell_size;
  const double x1 = std::ceil((hi_x + margin) / cell_size) * cell_size;
  const double y1 = std::ceil((hi_y + margin) / cell_size) * cell_size;
  const int nx = static_cast<int>(std::llround((x1 - x0) / cell_size)) + 1;
  const int ny = static_cast<int>(std::llround((y1 - y0) / cell_size)) + 1;
  return make_floor_grid({x0, y0}, cell_size, nx, ny);
}

void RobotParams::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidInput("robot: " + msg); };
  if (!(j1_res > 0.0 && j1_res <= j1_lim && j1_lim <= kPi)) {
    fail("require 0 < j1_res <= j1_lim <= pi");
  }
  if (n_sam < 2) fail("n_sam must be at least 2");
  if (!(polar_lo < polar_hi)) fail("polar range must satisfy lo < hi");
  if (polar_lo < 0.0 || polar_hi > kPi) fail("polar range must lie inside [0, pi]");
  if (!(z_j2 > 0.0 && l1 > 0.0 && l2 > 0.0 && l > 0.0)) fail("all lengths must be positive");
  for (double lim : joint_limits) {
    if (!(lim > 0.0) || !std::isfinite(lim)) fail("joint limits must be positive");
  }
}

std::vector<double> RobotParams::sampling_polar() const {
  std::vector<double> out(static_cast<std::size_t>(n_sam));
  const double step = (polar_hi - polar_lo) / (n_sam - 1);
  for (int k = 0; k < n_sam; ++k) out[static_cast<std::size_t>(k)] = polar_lo + k * step;
  out.back() = polar_hi;
  return out;
}

void GeometricRegion::validate() const {
  const double vals[] = {x_min, z_min, z_max, x_s, z_s, r_min, r_max};
  for (double v : vals) {
    if (!std::isfinite(v)) throw InvalidInput("region: non-finite parameter");
  }
  if (!(z_min < z_max)) throw InvalidInput("region: require z_min < z_max");
  if (!(r_min >= 0.0 && r_min < r_max)) throw InvalidInput("region: require 0 <= r_min < r_max");
  // Non-empty: some point of the shell must satisfy the plane constraints.
  // The outermost point along +x' at the clamped height is the best witness.
  const double zc = std::clamp(z_s, z_min, z_max);
  const double dz2 = (zc - z_s) * (zc - z_s);
  if (dz2 > r_max * r_max || x_s + std::sqrt(r_max * r_max - dz2) < x_min) {
    throw InvalidInput("region: constraints leave no reachable point");
  }
}

FeasibilityReport check_feasibility(const ScpInstance& inst) {
  std::vector<char> hit(static_cast<std::size_t>(inst.n), 0);
  for (const auto& set : inst.sets) {
    for (int i : set) hit[static_cast<std::size_t>(i)] = 1;
  }
  FeasibilityReport report;
  for (int i = 0; i < inst.n; ++i) {
    if (!hit[static_cast<std::size_t>(i)]) report.uncovered.push_back(i);
  }
  report.feasible = report.uncovered.empty();
  return report;
}

}  // namespace mobiplan
