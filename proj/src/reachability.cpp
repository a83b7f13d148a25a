#include "mobiplan/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "mobiplan/simd/kernels.hpp"

namespace mobiplan {

Vec3 ReachabilityDatabase::centre(std::size_t idx) const {
  const std::size_t ix = idx % static_cast<std::size_t>(nx);
  const std::size_t iy = (idx / static_cast<std::size_t>(nx)) % static_cast<std::size_t>(ny);
  const std::size_t iz = idx / (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  return {bounds.lo.x + (static_cast<double>(ix) + 0.5) * voxel_size,
          bounds.lo.y + (static_cast<double>(iy) + 0.5) * voxel_size,
          bounds.lo.z + (static_cast<double>(iz) + 0.5) * voxel_size};
}

std::size_t ReachabilityDatabase::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

Box default_database_bounds(const RobotParams& p) {
  const double reach = p.l1 + p.l2 + p.l;
  return {{0.0, -(reach + 0.1), 0.0}, {reach + 0.1, reach + 0.1, p.z_j2 + reach}};
}

std::array<int, 3> voxel_dims(const Box& b, double voxel_size) {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw InvalidInput("voxel_size must be positive");
  }
  auto count = [&](double lo, double hi) {
    const double n = std::ceil((hi - lo) / voxel_size - 1e-9);
    return n > 0.0 && std::isfinite(n) ? static_cast<int>(n) : 0;
  };
  const std::array<int, 3> dims{count(b.lo.x, b.hi.x), count(b.lo.y, b.hi.y),
                                count(b.lo.z, b.hi.z)};
  if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
    throw InvalidInput("database bounds contain no voxels");
  }
  return dims;
}

ReachabilityDatabase generate_database(const ArmModel& model, double voxel_size, const Box& bounds,
                                       unsigned threads) {
  const auto dims = voxel_dims(bounds, voxel_size);
  ReachabilityDatabase db;
  db.voxel_size = voxel_size;
  db.bounds = bounds;
  db.nx = dims[0];
  db.ny = dims[1];
  db.nz = dims[2];
  db.sampling_polar = model.params().sampling_polar();
  db.valid.assign(static_cast<std::size_t>(db.nx) * db.ny * db.nz, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    const BasePose origin{};
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Vec3 c = db.centre(idx);
      bool ok = true;
      for (double theta : db.sampling_polar) {
        if (!model.is_reachable(origin, Target{c.x, c.y, c.z, theta, 0.0}, true)) {
          ok = false;
          break;
        }
      }
      db.valid[idx] = ok ? 1 : 0;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t total = db.valid.size();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    work(0, total);
    return db;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return db;
}

Vec2 region_centre(const RobotParams& p, std::span<const double> sampling_polar) {
  if (sampling_polar.empty()) throw InvalidInput("no sampling polar angles");
  const double mean =
      std::accumulate(sampling_polar.begin(), sampling_polar.end(), 0.0) / sampling_polar.size();
  return {p.l * std::sin(mean), p.z_j2 + p.l * std::cos(mean)};
}

GeometricRegion fit_region(const ReachabilityDatabase& db, double x_min, double z_min,
                           double z_max, const RobotParams& params) {
  if (db.valid.empty()) throw InvalidInput("fit_region: empty database");
  if (!(z_min < z_max)) throw InvalidInput("fit_region: require z_min < z_max");
  const Vec2 c = region_centre(params, db.sampling_polar);
  const double margin = db.voxel_size * std::sqrt(3.0) / 2.0;

  struct Sample {
    double radius;
    bool valid;
    std::size_t voxel;
  };
  std::vector<Sample> slab;
  for (std::size_t idx = 0; idx < db.size(); ++idx) {
    const Vec3 p = db.centre(idx);
    if (p.x < x_min - kBoundaryTol || p.z < z_min - kBoundaryTol || p.z > z_max + kBoundaryTol) {
      continue;
    }
    const double ex = p.x - c.x, ez = p.z - c.y;
    slab.push_back({std::sqrt(ex * ex + p.y * p.y + ez * ez), db.valid[idx] != 0, idx});
  }
  // Invalid before valid at equal radius so no run can straddle a tie.
  std::sort(slab.begin(), slab.end(), [](const Sample& a, const Sample& b) {
    if (a.radius != b.radius) return a.radius < b.radius;
    if (a.valid != b.valid) return !a.valid;
    return a.voxel < b.voxel;
  });

  double best_lo = 0.0, best_hi = -1.0;
  std::size_t blocking = std::numeric_limits<std::size_t>::max();
  std::size_t i = 0;
  while (i < slab.size()) {
    if (!slab[i].valid) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < slab.size() && slab[j].valid) ++j;
    const double lo = i == 0 ? 0.0 : slab[i - 1].radius + margin;
    const double hi = j == slab.size() ? slab[j - 1].radius : slab[j].radius - margin;
    if (hi - lo > best_hi - best_lo) {
      best_lo = lo;
      best_hi = hi;
    }
    if (blocking == std::numeric_limits<std::size_t>::max() && hi <= lo) {
      blocking = i == 0 ? slab[j].voxel : slab[i - 1].voxel;
    }
    i = j;
  }

  if (!(best_lo < best_hi)) {
    std::ostringstream msg;
    msg << "fit_region: no annulus of valid voxels fits the given planes";
    if (blocking != std::numeric_limits<std::size_t>::max()) {
      const Vec3 v = db.centre(blocking);
      msg << "; blocked by invalid voxel " << blocking << " at (" << v.x << ", " << v.y << ", "
          << v.z << ")";
    } else {
      msg << "; the slab holds no valid voxel";
    }
    throw InvalidInput(msg.str());
  }
  GeometricRegion region{x_min, z_min, z_max, c.x, c.y, best_lo, best_hi};
  region.validate();
  return region;
}

bool region_contains(const GeometricRegion& region, Vec3 point) {
  const auto test = simd::detail::make_region_test(region);
  std::uint8_t out = 0;
  simd::detail::region_mask_scalar(test, &point.x, &point.y, &point.z, &out, 1);
  return out != 0;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr const char* kMagic = "MOBIPLAN-REACHDB 1";

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw InvalidInput("reachability database: bad number '" + tok + "'");
  }
  if (used != tok.size()) throw InvalidInput("reachability database: bad number '" + tok + "'");
  return v;
}

}  // namespace

std::uint64_t database_key(const RobotParams& p, double voxel_size, const Box& b) {
  std::ostringstream s;
  s << hexfloat(p.j1_lim) << ' ' << hexfloat(p.j1_res) << ' ' << hexfloat(p.z_j2) << ' '
    << hexfloat(p.l1) << ' ' << hexfloat(p.l2) << ' ' << hexfloat(p.l) << ' ';
  for (double lim : p.joint_limits) s << hexfloat(lim) << ' ';
  s << hexfloat(p.polar_lo) << ' ' << hexfloat(p.polar_hi) << ' ' << p.n_sam << ' '
    << hexfloat(voxel_size) << ' ' << hexfloat(b.lo.x) << ' ' << hexfloat(b.lo.y) << ' '
    << hexfloat(b.lo.z) << ' ' << hexfloat(b.hi.x) << ' ' << hexfloat(b.hi.y) << ' '
    << hexfloat(b.hi.z);
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_database(std::ostream& out, const ReachabilityDatabase& db, std::uint64_t key) {
  char keybuf[32];
  std::snprintf(keybuf, sizeof keybuf, "%016llx", static_cast<unsigned long long>(key));
  out << kMagic << '\n'
      << "key " << keybuf << '\n'
      << "voxel_size " << hexfloat(db.voxel_size) << '\n'
      << "bounds " << hexfloat(db.bounds.lo.x) << ' ' << hexfloat(db.bounds.lo.y) << ' '
      << hexfloat(db.bounds.lo.z) << ' ' << hexfloat(db.bounds.hi.x) << ' '
      << hexfloat(db.bounds.hi.y) << ' ' << hexfloat(db.bounds.hi.z) << '\n'
      << "dims " << db.nx << ' ' << db.ny << ' ' << db.nz << '\n'
      << "n_sam " << db.sampling_polar.size() << '\n'
      << "sampling_polar";
  for (double t : db.sampling_polar) out << ' ' << hexfloat(t);
  out << '\n';
  std::vector<unsigned char> bits((db.valid.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < db.valid.size(); ++k) {
    if (db.valid[k]) bits[k / 8] |= static_cast<unsigned char>(1u << (k % 8));
  }
  out << "payload " << bits.size() << '\n';
  out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
}

namespace {

ReachabilityDatabase read_database_impl(std::istream& in, std::uint64_t* key) {
  auto fail = [](const std::string& what) -> void {
    throw InvalidInput("reachability database: " + what);
  };
  auto expect_line = [&](const std::string& field) {
    std::string line;
    if (!std::getline(in, line)) fail("truncated header before '" + field + "'");
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    if (name != field) fail("expected '" + field + "', found '" + name + "'");
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    return toks;
  };

  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) fail("bad magic line");
  const auto key_toks = expect_line("key");
  if (key_toks.size() != 1) fail("bad key line");
  if (key) *key = std::stoull(key_toks[0], nullptr, 16);

  ReachabilityDatabase db;
  const auto vs = expect_line("voxel_size");
  if (vs.size() != 1) fail("bad voxel_size line");
  db.voxel_size = parse_double(vs[0]);
  const auto bt = expect_line("bounds");
  if (bt.size() != 6) fail("bounds needs 6 numbers");
  db.bounds = {{parse_double(bt[0]), parse_double(bt[1]), parse_double(bt[2])},
               {parse_double(bt[3]), parse_double(bt[4]), parse_double(bt[5])}};
  const auto dt = expect_line("dims");
  if (dt.size() != 3) fail("dims needs 3 integers");
  db.nx = std::stoi(dt[0]);
  db.ny = std::stoi(dt[1]);
  db.nz = std::stoi(dt[2]);
  const auto dims = voxel_dims(db.bounds, db.voxel_size);
  if (dims[0] != db.nx || dims[1] != db.ny || dims[2] != db.nz) fail("dims disagree with bounds");
  const auto ns = expect_line("n_sam");
  const auto sp = expect_line("sampling_polar");
  if (ns.size() != 1 || sp.size() != static_cast<std::size_t>(std::stoul(ns[0]))) {
    fail("sampling_polar count mismatch");
  }
  for (const auto& t : sp) db.sampling_polar.push_back(parse_double(t));
  const auto pl = expect_line("payload");
  const std::size_t voxels = static_cast<std::size_t>(db.nx) * db.ny * db.nz;
  if (pl.size() != 1 || std::stoull(pl[0]) != (voxels + 7) / 8) fail("payload size mismatch");
  std::vector<unsigned char> bits((voxels + 7) / 8);
  in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
  if (in.gcount() != static_cast<std::streamsize>(bits.size())) fail("truncated payload");
  db.valid.resize(voxels);
  for (std::size_t k = 0; k < voxels; ++k) db.valid[k] = (bits[k / 8] >> (k % 8)) & 1u;
  return db;
}

}  // namespace

ReachabilityDatabase read_database(std::istream& in, std::uint64_t* key) {
  try {
    return read_database_impl(in, key);
  } catch (const std::logic_error& e) {  // std::stoi and friends
    throw InvalidInput(std::string("reachability database: bad integer field (") + e.what() + ")");
  }
}

}  // namespace mobiplan
