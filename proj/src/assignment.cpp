#include "mobiplan/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mobiplan {

namespace {

constexpr double kWidthTol = 1e-12;

// Counter-clockwise angle from a to b in [0, 2 pi).
double ccw(double a, double b) {
  double d = b - a;
  while (d < 0.0) d += kTwoPi;
  while (d >= kTwoPi) d -= kTwoPi;
  return d;
}

}  // namespace

AzimuthalSpan azimuthal_width(std::span<const double> azimuths) {
  if (azimuths.empty()) throw InvalidInput("azimuthal_width: empty azimuth list");
  AzimuthalSpan span;
  span.sorted.reserve(azimuths.size());
  for (double a : azimuths) span.sorted.push_back(normalize_azimuth(a));
  std::sort(span.sorted.begin(), span.sorted.end());
  const std::size_t n = span.sorted.size();
  span.gaps.resize(n);
  for (std::size_t k = 0; k + 1 < n; ++k) span.gaps[k] = span.sorted[k + 1] - span.sorted[k];
  span.gaps[n - 1] = kTwoPi + span.sorted[0] - span.sorted[n - 1];
  const std::size_t widest = static_cast<std::size_t>(
      std::max_element(span.gaps.begin(), span.gaps.end()) - span.gaps.begin());
  span.start = (widest + 1) % n;
  span.width = kTwoPi - span.gaps[widest];
  span.mid = normalize_azimuth(span.sorted[span.start] + span.width / 2.0);
  return span;
}

std::vector<std::vector<std::size_t>> split_azimuths(std::span<const double> azimuths,
                                                    double max_width) {
  if (azimuths.empty()) return {};
  if (!(max_width >= 0.0)) throw InvalidInput("split_azimuths: negative width");
  const std::size_t n = azimuths.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> norm(n);
  for (std::size_t k = 0; k < n; ++k) norm[k] = normalize_azimuth(azimuths[k]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norm[a] < norm[b]; });

  // Start after the largest gap first; trying every start makes the sweep
  // optimal for circular covering, not just within one arc of optimal.
  const AzimuthalSpan span = azimuthal_width(norm);
  std::vector<std::vector<std::size_t>> best;
  for (std::size_t shift = 0; shift < n; ++shift) {
    const std::size_t s = (span.start + shift) % n;
    std::vector<std::vector<std::size_t>> arcs;
    double anchor = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pos = order[(s + k) % n];
      if (arcs.empty() || ccw(anchor, norm[pos]) > max_width + kWidthTol) {
        arcs.emplace_back();
        anchor = norm[pos];
      }
      arcs.back().push_back(pos);
    }
    if (best.empty() || arcs.size() < best.size()) best = std::move(arcs);
    if (best.size() == 1) break;
  }
  return best;
}

std::vector<Cluster> assign_clusters(const CoverSolution& solution, const ScpInstance& inst,
                                     std::span<const Target> targets, AzimuthLimit limit) {
  if (!(limit.delta_phi_max > 0.0)) throw InvalidInput("assign_clusters: delta_phi_max must be > 0");
  if (targets.size() != static_cast<std::size_t>(inst.n)) {
    throw InvalidInput("assign_clusters: target count differs from universe size");
  }
  if (!is_cover(inst, solution.chosen)) {
    throw ContractViolation("assign_clusters: chosen sets do not cover every target");
  }

  struct Working {
    int floor;
    std::vector<int> members;
  };
  std::vector<Working> work;
  for (int j : solution.chosen) work.push_back({j, inst.sets[static_cast<std::size_t>(j)]});

  std::vector<char> taken(targets.size(), 0);
  std::vector<Cluster> clusters;
  std::vector<double> az;

  auto azimuths_of = [&](const std::vector<int>& members) {
    az.clear();
    for (int i : members) az.push_back(targets[static_cast<std::size_t>(i)].phi);
    return std::span<const double>(az);
  };

  for (;;) {
    for (auto& w : work) {
      std::erase_if(w.members, [&](int i) { return taken[static_cast<std::size_t>(i)] != 0; });
    }
    std::erase_if(work, [](const Working& w) { return w.members.empty(); });
    if (work.empty()) break;

    std::size_t pick = work.size();
    double pick_mid = 0.0;
    for (std::size_t k = 0; k < work.size(); ++k) {
      if (pick < work.size() && work[k].members.size() <= work[pick].members.size()) continue;
      const AzimuthalSpan span = azimuthal_width(azimuths_of(work[k].members));
      if (span.width <= limit.delta_phi_max + kWidthTol) {
        pick = k;
        pick_mid = span.mid;
      }
    }

    if (pick < work.size()) {
      Working& w = work[pick];
      Cluster c;
      c.target_indices = w.members;
      std::sort(c.target_indices.begin(), c.target_indices.end());
      c.floor_index = w.floor;
      Vec2 at{};
      if (inst.floor) at = inst.floor->points[static_cast<std::size_t>(w.floor)];
      c.base = {at.x, at.y, pick_mid};
      for (int i : c.target_indices) taken[static_cast<std::size_t>(i)] = 1;
      clusters.push_back(std::move(c));
      continue;
    }

    // Every remaining set is too wide: cut the largest one into arcs.
    std::size_t widest = 0;
    for (std::size_t k = 1; k < work.size(); ++k) {
      if (work[k].members.size() > work[widest].members.size()) widest = k;
    }
    const Working victim = work[widest];
    const auto arcs = split_azimuths(azimuths_of(victim.members), limit.delta_phi_max);
    std::vector<Working> pieces;
    for (const auto& arc : arcs) {
      Working piece{victim.floor, {}};
      for (std::size_t pos : arc) piece.members.push_back(victim.members[pos]);
      std::sort(piece.members.begin(), piece.members.end());
      pieces.push_back(std::move(piece));
    }
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(widest));
    work.insert(work.begin() + static_cast<std::ptrdiff_t>(widest), pieces.begin(), pieces.end());
  }
  return clusters;
}

}  // namespace mobiplan
