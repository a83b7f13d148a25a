#pragma once

#include <span>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/scp.hpp"

namespace mobiplan {

/// Circular extent of a set of azimuths. `gaps[k]` runs from sorted[k] to
/// the next sorted azimuth, the last one wrapping through 2 pi.
struct AzimuthalSpan {
  std::vector<double> sorted;
  std::vector<double> gaps;
  double width = 0.0;  // 2 pi minus the largest gap
  double mid = 0.0;    // centre of the covered arc, in (-pi, pi]
  std::size_t start = 0;  // index into `sorted` where the covered arc begins
};

AzimuthalSpan azimuthal_width(std::span<const double> azimuths);

struct AzimuthLimit {
  double delta_phi_max = 0.0;

  static AzimuthLimit from(const RobotParams& params) { return {params.max_azimuth_width()}; }
};

/// Minimum number of arcs no wider than `max_width` covering the azimuths.
/// Returns, per arc, positions into `azimuths`.
std::vector<std::vector<std::size_t>> split_azimuths(std::span<const double> azimuths,
                                                    double max_width);

/// Turns chosen sets into clusters a single base pose can serve:
/// satisfiable sets (width <= delta_phi_max) are emitted largest first and
/// their targets removed from the others; when only oversized sets remain,
/// the largest is cut into the fewest admissible arcs. Each cluster keeps
/// its set's floor point and faces the middle of its azimuth range.
std::vector<Cluster> assign_clusters(const CoverSolution& solution, const ScpInstance& inst,
                                     std::span<const Target> targets, AzimuthLimit limit);

}  // namespace mobiplan
