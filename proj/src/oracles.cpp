#include "mobiplan/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace mobiplan::oracle {

bool membership(const GeometricRegion& g, const Target& t, Vec2 f) {
  // p' = R(-phi) (p - f)
  const double c = std::cos(t.phi);
  const double s = std::sin(t.phi);
  const double px = t.x - f.x;
  const double py = t.y - f.y;
  const double xr = c * px + s * py;
  const double yr = -s * px + c * py;
  const double zr = t.z;

  if (zr < g.z_min - kBoundaryTol || zr > g.z_max + kBoundaryTol) return false;
  if (xr < g.x_min - kBoundaryTol) return false;
  const double ex = xr - g.x_s;
  const double ez = zr - g.z_s;
  const double r2 = ex * ex + yr * yr + ez * ez;
  return r2 >= g.r_min * g.r_min - kBoundaryTol && r2 <= g.r_max * g.r_max + kBoundaryTol;
}

ScpOptimum scp(const ScpInstance& inst) {
  const std::size_t m = inst.m();
  if (m > kMaxScpSets) throw InvalidInput("oracle::scp: more than 24 sets");
  if (inst.n < 0 || inst.n > 64) throw InvalidInput("oracle::scp: universe larger than 64");
  const std::uint64_t all = inst.n == 64 ? ~0ULL : ((1ULL << inst.n) - 1);
  std::vector<std::uint64_t> mask(m, 0);
  std::uint64_t any = 0;
  for (std::size_t j = 0; j < m; ++j) {
    for (int i : inst.sets[j]) {
      if (i < 0 || i >= inst.n) throw InvalidInput("oracle::scp: element out of range");
      mask[j] |= 1ULL << i;
    }
    any |= mask[j];
  }
  if (any != all) {
    std::vector<int> missing;
    for (int i = 0; i < inst.n; ++i) {
      if (!((any >> i) & 1ULL)) missing.push_back(i);
    }
    throw InfeasibleTask("oracle::scp: no cover exists", missing);
  }
  if (inst.n == 0) return {};

  for (std::size_t k = 1; k <= m; ++k) {
    // Lexicographic k-combinations of {0..m-1}.
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      std::uint64_t u = 0;
      for (std::size_t j : pick) u |= mask[j];
      if (u == all) {
        ScpOptimum best;
        best.size = k;
        for (std::size_t j : pick) best.chosen.push_back(static_cast<int>(j));
        return best;
      }
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t q = pos; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
  }
  return {};  // unreachable: the full collection is a cover
}

namespace {

double dist4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double dist6(const JointVector& a, const JointVector& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

double tsp(const std::array<double, 4>& home, std::span<const std::array<double, 4>> nodes) {
  if (nodes.size() + 1 > kMaxTourNodes) throw InvalidInput("oracle::tsp: more than 9 nodes");
  if (nodes.empty()) return 0.0;
  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = dist4(home, nodes[perm.front()]) + dist4(nodes[perm.back()], home);
    for (std::size_t k = 0; k + 1 < perm.size(); ++k) len += dist4(nodes[perm[k]], nodes[perm[k + 1]]);
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double path(const std::vector<std::vector<JointVector>>& layers) {
  if (layers.empty()) return 0.0;
  std::size_t total = 1;
  for (const auto& layer : layers) {
    if (layer.empty()) throw InvalidInput("oracle::path: empty layer");
    if (total > kMaxPaths / layer.size()) throw InvalidInput("oracle::path: more than 10^4 paths");
    total *= layer.size();
  }
  std::vector<std::size_t> at(layers.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t count = 0; count < total; ++count) {
    double cost = 0.0;
    for (std::size_t k = 0; k + 1 < layers.size(); ++k) cost += dist6(layers[k][at[k]], layers[k + 1][at[k + 1]]);
    best = std::min(best, cost);
    for (std::size_t k = layers.size(); k-- > 0;) {
      if (++at[k] < layers[k].size()) break;
      at[k] = 0;
    }
  }
  return best;
}

}  // namespace mobiplan::oracle
