#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/kinematics.hpp"

namespace mobiplan {

struct Box {
  Vec3 lo;
  Vec3 hi;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Voxelized record of where the arm reaches every sampled tool direction.
/// Voxel (ix, iy, iz) has flat index (iz * ny + iy) * nx + ix and centre
/// bounds.lo + (i + 0.5) * voxel_size per axis.
struct ReachabilityDatabase {
  double voxel_size = 0.0;
  Box bounds;
  int nx = 0, ny = 0, nz = 0;
  std::vector<std::uint8_t> valid;      // one flag per voxel
  std::vector<double> sampling_polar;  // radians, ascending

  std::size_t size() const { return valid.size(); }
  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(iz) * ny + iy) * nx + ix;
  }
  Vec3 centre(std::size_t idx) const;
  std::size_t valid_count() const;

  friend bool operator==(const ReachabilityDatabase&, const ReachabilityDatabase&) = default;
};

/// Box in front of the robot that contains the whole reach of `params`.
Box default_database_bounds(const RobotParams& params);

/// Voxel counts per axis for a box; throws InvalidInput when any is zero.
std::array<int, 3> voxel_dims(const Box& bounds, double voxel_size);

/// A voxel is valid iff IK with joint 1 restricted to +/- j1_res succeeds at
/// its centre for every sampling polar angle with azimuth 0, base at the
/// robot-frame origin facing +x'. Work fans out over `threads` workers
/// (0 = hardware concurrency); the result does not depend on the count.
ReachabilityDatabase generate_database(const ArmModel& model, double voxel_size,
                                       const Box& bounds, unsigned threads = 0);

/// Sphere centre (X_s, Z_s) for the mean sampling polar angle.
Vec2 region_centre(const RobotParams& params, std::span<const double> sampling_polar);

/// Fits the limit-sphere radii inside the valid voxel cloud given the three
/// operator-chosen planes. Radii come from the widest run of valid voxel
/// centres in radius order within the plane-bounded slab, shrunk by half a
/// voxel diagonal at each bounding invalid voxel. Throws InvalidInput naming
/// the blocking voxel when no annulus survives.
GeometricRegion fit_region(const ReachabilityDatabase& db, double x_min, double z_min,
                           double z_max, const RobotParams& params);

bool region_contains(const GeometricRegion& region, Vec3 point);

// Sidecar file: a short text header followed by the packed valid bitmask.
std::uint64_t database_key(const RobotParams& params, double voxel_size, const Box& bounds);
void write_database(std::ostream& out, const ReachabilityDatabase& db, std::uint64_t key);
/// Throws InvalidInput on a malformed stream. `key` receives the stored key.
ReachabilityDatabase read_database(std::istream& in, std::uint64_t* key = nullptr);

}  // namespace mobiplan
