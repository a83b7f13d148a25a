#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mobiplan/reachability.hpp"
#include "support.hpp"

using namespace mobiplan;

TEST_CASE("region centre from the mean sampling polar angle") {
  RobotParams p;
  const double polar[] = {deg_to_rad(130.0)};
  const Vec2 c = region_centre(p, polar);
  CHECK(c.x == doctest::Approx(0.1915).epsilon(1e-3));
  CHECK(c.y == doctest::Approx(0.2343).epsilon(1e-3));
  // The default sampling range 110..150 has the same mean.
  const Vec2 d = region_centre(p, p.sampling_polar());
  CHECK(d.x == doctest::Approx(c.x).epsilon(1e-12));
  CHECK(d.y == doctest::Approx(c.y).epsilon(1e-12));
  // The workcell arm puts the sphere centre at (0.22, 0.64).
  const RobotParams q = testing::workcell_robot();
  const Vec2 e = region_centre(q, q.sampling_polar());
  CHECK(e.x == doctest::Approx(0.22).epsilon(0.01));
  CHECK(e.y == doctest::Approx(0.64).epsilon(0.01));
}

TEST_CASE("database bounds and voxel counts") {
  const RobotParams p;
  const Box b = default_database_bounds(p);
  const double reach = p.l1 + p.l2 + p.l;
  CHECK(b.lo.x == 0.0);
  CHECK(b.hi.x == doctest::Approx(reach + 0.1));
  CHECK(b.lo.y == doctest::Approx(-(reach + 0.1)));
  CHECK(b.hi.z == doctest::Approx(p.z_j2 + reach));
  const auto dims = voxel_dims(b, 0.10);
  CHECK(dims[0] == 13);
  CHECK(dims[1] == 25);
  CHECK(dims[2] == 16);
  CHECK_THROWS_AS(voxel_dims(b, 0.0), InvalidInput);
}

TEST_CASE("shell arm database equals the closed-form shell at every voxel centre") {
  const RobotParams p;
  const testing::ShellArm shell(p, 0.50, 0.85);
  const ReachabilityDatabase db = generate_database(shell, 0.10, default_database_bounds(p), 2);
  REQUIRE(db.size() == static_cast<std::size_t>(db.nx) * db.ny * db.nz);
  std::size_t valid = 0;
  for (std::size_t k = 0; k < db.size(); ++k) {
    REQUIRE(static_cast<bool>(db.valid[k]) == shell.contains(db.centre(k)));
    valid += db.valid[k];
  }
  CHECK(valid == db.valid_count());
  CHECK(valid > 0);
}

TEST_CASE("database generation does not depend on the thread count") {
  const RobotParams p;
  const AnalyticArm arm(p);
  const Box b = default_database_bounds(p);
  const auto one = generate_database(arm, 0.12, b, 1);
  const auto three = generate_database(arm, 0.12, b, 3);
  CHECK(one == three);
  CHECK(one.valid_count() > 0);
}

TEST_CASE("database sidecar round trip") {
  const RobotParams p;
  const AnalyticArm arm(p);
  const Box b = default_database_bounds(p);
  const auto db = generate_database(arm, 0.15, b);
  const auto key = database_key(p, 0.15, b);
  std::stringstream ss;
  write_database(ss, db, key);
  std::uint64_t got_key = 0;
  const auto back = read_database(ss, &got_key);
  CHECK(got_key == key);
  CHECK(back == db);

  RobotParams q = p;
  q.l += 1e-9;
  CHECK(database_key(q, 0.15, b) != key);
  CHECK(database_key(p, 0.10, b) != key);

  std::stringstream junk("MOBIPLAN-REACHDB 1\nkey zz\n");
  CHECK_THROWS_AS(read_database(junk), InvalidInput);
  std::stringstream empty;
  CHECK_THROWS_AS(read_database(empty), InvalidInput);
}

TEST_CASE("fit_region recovers a known shell") {
  const RobotParams p;
  const testing::ShellArm shell(p, 0.50, 0.85);
  for (double vs : {0.10, 0.05}) {
    const auto db = generate_database(shell, vs, default_database_bounds(p));
    const GeometricRegion g = fit_region(db, 0.30, 0.10, 1.00, p);
    const double diag = vs * std::sqrt(3.0);
    CHECK(std::abs(g.r_min - 0.50) <= diag);
    CHECK(std::abs(g.r_max - 0.85) <= diag);
    for (std::size_t k = 0; k < db.size(); ++k) {
      if (region_contains(g, db.centre(k))) REQUIRE(db.valid[k]);
    }
  }
}

TEST_CASE("fit_region on the analytic arm is sound") {
  const RobotParams p = testing::workcell_robot();
  const AnalyticArm arm(p);
  const auto db = generate_database(arm, 0.05, default_database_bounds(p));
  const GeometricRegion g = fit_region(db, 0.40, 0.40, 1.20, p);
  CHECK(g.x_s == doctest::Approx(0.22).epsilon(0.01));
  CHECK(g.z_s == doctest::Approx(0.64).epsilon(0.01));
  CHECK(g.r_max > g.r_min);
  for (std::size_t k = 0; k < db.size(); ++k) {
    if (region_contains(g, db.centre(k))) REQUIRE(db.valid[k]);
  }
}

TEST_CASE("fit_region reports a slab with no valid voxel") {
  const RobotParams p;
  const testing::ShellArm shell(p, 0.50, 0.85);
  const auto db = generate_database(shell, 0.10, default_database_bounds(p));
  CHECK_THROWS_AS(fit_region(db, 1.3, 0.1, 1.0, p), InvalidInput);
}
