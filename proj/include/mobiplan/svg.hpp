#pragma once

#include <span>
#include <string>

#include "mobiplan/core.hpp"

namespace mobiplan {

/// Fill colour for cluster `index`; the same index always maps to the same
/// colour and the first 1000 indices are pairwise distinct.
std::string cluster_colour(std::size_t index);

/// Top-down floor plot: targets coloured by cluster, base poses with heading
/// arrows, the base tour from home and back. Output is an SVG 1.1 document
/// that depends only on its inputs.
std::string render_svg(const Plan& plan, std::span<const Target> targets);

}  // namespace mobiplan
