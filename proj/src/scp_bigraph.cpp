#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "mobiplan/scp.hpp"
#include "mobiplan/simd/kernels.hpp"

namespace mobiplan {

namespace {

struct FloorSoA {
  std::vector<double> xs;
  std::vector<double> ys;

  explicit FloorSoA(const FloorGrid& grid) {
    xs.reserve(grid.size());
    ys.reserve(grid.size());
    for (const Vec2& p : grid.points) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  }
};

// Returns false when the target lies outside the region's height band or
// above/below the whole shell, in which case no floor point can serve it.
bool make_floor_test(const Target& t, const GeometricRegion& g, simd::FloorTest& out) {
  if (t.z < g.z_min - kBoundaryTol || t.z > g.z_max + kBoundaryTol) return false;
  const double dz = t.z - g.z_s;
  const double dz2 = dz * dz;
  const double rmax2_full = g.r_max * g.r_max;
  if (dz2 > rmax2_full) return false;
  const double rmin2_full = g.r_min * g.r_min;
  const double rmax2 = rmax2_full - dz2;
  const double rmin2 = dz2 > rmin2_full ? 0.0 : rmin2_full - dz2;
  const double c = std::cos(t.phi), s = std::sin(t.phi);
  out = {t.x, t.y, c, s, g.x_s * c, g.x_s * s,
         g.x_min - kBoundaryTol, rmin2 - kBoundaryTol, rmax2 + kBoundaryTol};
  return true;
}

void collect(const Target& t, const FloorSoA& soa, const GeometricRegion& g,
             std::vector<std::uint8_t>& mask, std::vector<int>& out) {
  out.clear();
  simd::FloorTest test;
  if (!make_floor_test(t, g, test)) return;
  mask.resize(soa.xs.size());
  simd::floor_mask(test, soa.xs, soa.ys, mask);
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.push_back(static_cast<int>(j));
  }
}

}  // namespace

std::vector<int> reachable_floor_points(const Target& target, const FloorGrid& grid,
                                        const GeometricRegion& region) {
  const FloorSoA soa(grid);
  std::vector<std::uint8_t> mask;
  std::vector<int> out;
  collect(target, soa, region, mask, out);
  return out;
}

ScpInstance build_bigraph(std::span<const Target> targets, std::shared_ptr<const FloorGrid> grid,
                          const GeometricRegion& region, unsigned threads) {
  if (targets.empty()) throw InvalidInput("build_bigraph: no targets");
  if (!grid || grid->size() == 0) throw InvalidInput("build_bigraph: empty floor grid");
  const FloorSoA soa(*grid);
  std::vector<std::vector<int>> per_target(targets.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> mask;
    for (std::size_t i = begin; i < end; ++i) collect(targets[i], soa, region, mask, per_target[i]);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, targets.size()));
  if (threads <= 1) {
    work(0, targets.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (targets.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < targets.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(targets.size(), begin + chunk));
    }
  }

  ScpInstance inst;
  inst.n = static_cast<int>(targets.size());
  inst.sets.resize(grid->size());
  for (std::size_t i = 0; i < per_target.size(); ++i) {
    for (int j : per_target[i]) inst.sets[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
  }
  inst.floor = std::move(grid);
  return inst;
}

void write_scp_exchange(std::ostream& out, const ScpInstance& inst) {
  out << inst.n << ' ' << inst.m() << '\n';
  for (std::size_t j = 0; j < inst.m(); ++j) {
    out << j;
    for (int i : inst.sets[j]) out << ' ' << i;
    out << '\n';
  }
}

ScpInstance read_scp_exchange(std::istream& in) {
  ScpInstance inst;
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("scp exchange: missing header");
  std::istringstream head(line);
  long long n = -1, m = -1;
  if (!(head >> n >> m) || n < 0 || m < 0) throw InvalidInput("scp exchange: bad header");
  inst.n = static_cast<int>(n);
  inst.sets.resize(static_cast<std::size_t>(m));
  for (long long j = 0; j < m; ++j) {
    if (!std::getline(in, line)) throw InvalidInput("scp exchange: truncated set list");
    std::istringstream ls(line);
    long long idx = -1;
    if (!(ls >> idx) || idx != j) {
      throw InvalidInput("scp exchange: line " + std::to_string(j + 2) + " has wrong set index");
    }
    auto& set = inst.sets[static_cast<std::size_t>(j)];
    for (long long e; ls >> e;) {
      if (e < 0 || e >= n) {
        throw InvalidInput("scp exchange: member out of range on line " + std::to_string(j + 2));
      }
      set.push_back(static_cast<int>(e));
    }
    if (!ls.eof()) throw InvalidInput("scp exchange: junk on line " + std::to_string(j + 2));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return inst;
}

}  // namespace mobiplan
