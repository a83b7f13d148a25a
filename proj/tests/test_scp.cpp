#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mobiplan/oracles.hpp"
#include "mobiplan/scp.hpp"
#include "support.hpp"

using namespace mobiplan;

namespace {

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

ScpInstance five_element_example() { return {5, {{0, 1, 2}, {2, 3}, {3, 4}, {0, 4}}, nullptr}; }

// Greedy takes the wide set 0 first and then needs two more; the two
// halves 3 and 4 cover everything.
ScpInstance greedy_trap() { return {8, {{0, 1, 2, 4, 5}, {3, 6}, {7}, {0, 1, 2, 3}, {4, 5, 6, 7}}, nullptr}; }

}  // namespace

TEST_CASE("floor-point test: hand-evaluated target") {
  const GeometricRegion g = testing::workcell_region();
  const Target t = make_target(1.0, 0.0, 0.64, deg_to_rad(130), 0.0);
  const FloorGrid grid = make_floor_grid({0.2, 0.0}, 0.1, 2, 1);  // (0.2, 0), (0.3, 0)
  CHECK(reachable_floor_points(t, grid, g) == std::vector<int>{0});
  CHECK(oracle::membership(g, t, {0.2, 0.0}));
  CHECK_FALSE(oracle::membership(g, t, {0.3, 0.0}));

  const Target above = make_target(1.0, 0.0, g.z_s + g.r_max + 0.01, deg_to_rad(130), 0.0);
  const FloorGrid wide = make_floor_grid({-1.0, -1.0}, 0.05, 41, 41);
  CHECK(reachable_floor_points(above, wide, g).empty());
}

TEST_CASE("bigraph: one target on a four-point grid") {
  const GeometricRegion g = testing::workcell_region();
  const Target t = make_target(1.0, 0.0, 0.64, deg_to_rad(130), 0.0);
  auto grid = std::make_shared<const FloorGrid>(make_floor_grid({0.1, 0.0}, 0.1, 4, 1));  // 0.1 .. 0.4
  const ScpInstance inst = build_bigraph(std::vector<Target>{t}, grid, g, 1);
  REQUIRE(inst.m() == 4);
  std::vector<std::size_t> sizes;
  for (const auto& s : inst.sets) sizes.push_back(s.size());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("bigraph: transpose of the per-target floor sets, matching the rotation oracle") {
  const GeometricRegion g = testing::workcell_region();
  testing::Rng rng(31);
  std::vector<Target> ts;
  for (int k = 0; k < 60; ++k) {
    ts.push_back(make_target(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1), testing::uniform(rng, 0.3, 1.5),
                             deg_to_rad(130), testing::uniform(rng, -kPi, kPi)));
  }
  auto grid = std::make_shared<const FloorGrid>(make_floor_grid_around(ts, 0.1, g.x_s + g.r_max));
  const ScpInstance one = build_bigraph(ts, grid, g, 1);
  const ScpInstance four = build_bigraph(ts, grid, g, 4);
  CHECK(one.sets == four.sets);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto floor = reachable_floor_points(ts[i], *grid, g);
    for (std::size_t j = 0; j < grid->size(); ++j) {
      const auto& s = one.sets[j];
      const bool in_set = std::binary_search(s.begin(), s.end(), static_cast<int>(i));
      const bool in_floor = std::binary_search(floor.begin(), floor.end(), static_cast<int>(j));
      REQUIRE(in_set == in_floor);
      REQUIRE(in_set == oracle::membership(g, ts[i], grid->points[j]));
    }
  }
}

TEST_CASE("bigraph: the one-sided synthetic task is feasible") {
  const TaskFile task = testing::one_sided_task();
  const GeometricRegion g = *task.region.explicit_region;
  auto grid = std::make_shared<const FloorGrid>(make_floor_grid_around(task.targets, 0.10, g.x_s + g.r_max));
  const ScpInstance inst = build_bigraph(task.targets, grid, g);
  CHECK(inst.n == 264);
  CHECK(check_feasibility(inst).feasible);
}

TEST_CASE("greedy") {
  const auto sol = solve_greedy(five_element_example());
  CHECK(sol.chosen == std::vector<int>{0, 2});
  CHECK(sol.covered == std::vector<int>{0, 0, 0, 2, 2});
  CHECK(solve_greedy({3, {{0, 1, 2}}, nullptr}).chosen == std::vector<int>{0});
  CHECK(solve_greedy(greedy_trap()).chosen.size() == 3);

  ScpInstance bad{3, {{0, 1}}, nullptr};
  try {
    solve_greedy(bad);
    FAIL("expected InfeasibleTask");
  } catch (const InfeasibleTask& e) {
    CHECK(e.uncovered() == std::vector<int>{2});
  }
}

TEST_CASE("exact solver") {
  CHECK(solve_exact(five_element_example()).chosen.size() == 2);
  CHECK(solve_exact(greedy_trap()).chosen == std::vector<int>{3, 4});
  const ScpInstance partition{6, {{0, 1}, {2}, {3, 4, 5}}, nullptr};
  CHECK(solve_exact(partition).chosen.size() == 3);
  ScpInstance big{1, std::vector<std::vector<int>>(kExactMaxSets + 1, std::vector<int>{0}), nullptr};
  CHECK_THROWS_AS(solve_exact(big), InvalidInput);
}

TEST_CASE("covering LP") {
  const ScpInstance partition{6, {{0, 1}, {2}, {3, 4, 5}}, nullptr};
  const LpSolution p = solve_cover_lp(partition);
  CHECK(p.objective == doctest::Approx(3.0));
  for (double x : p.x) CHECK(x == doctest::Approx(1.0));
  CHECK(solve_lpr(partition).chosen == std::vector<int>{0, 1, 2});

  const ScpInstance dom{2, {{0}, {1}, {0, 1}}, nullptr};
  const LpSolution d = solve_cover_lp(dom);
  CHECK(d.x == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(solve_lpr(dom).chosen == std::vector<int>{2});

  // Triangle: every element in two sets, LP optimum 1.5 at x = 1/2.
  const ScpInstance tri{3, {{0, 1}, {1, 2}, {0, 2}}, nullptr};
  const LpSolution t = solve_cover_lp(tri);
  CHECK(t.objective == doctest::Approx(1.5));
  for (double x : t.x) CHECK(x == doctest::Approx(0.5));
  const CoverSolution tr = solve_lpr(tri);
  CHECK(tr.max_frequency == 2);
  CHECK(tr.chosen.size() == 2);
  CHECK(tr.lp_objective == doctest::Approx(1.5));

  CHECK_THROWS_AS(solve_cover_lp(tri, 1), ContractViolation);
}

TEST_CASE("LP solution is primal feasible with the reported objective") {
  testing::Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const ScpInstance inst = testing::random_scp(rng, testing::uniform_int(rng, 1, 15), testing::uniform_int(rng, 1, 15), 0.3);
    const LpSolution lp = solve_cover_lp(inst);
    double sum = 0.0;
    for (double x : lp.x) {
      REQUIRE(x >= 0.0);
      REQUIRE(x <= 1.0);
      sum += x;
    }
    REQUIRE(sum == doctest::Approx(lp.objective).epsilon(1e-9));
    for (int i = 0; i < inst.n; ++i) {
      double cover = 0.0;
      for (std::size_t j = 0; j < inst.m(); ++j) {
        if (std::binary_search(inst.sets[j].begin(), inst.sets[j].end(), i)) cover += lp.x[j];
      }
      REQUIRE(cover >= 1.0 - 1e-9);
    }
    REQUIRE(lp.objective <= oracle::scp(inst).size + 1e-9);
  }
}

TEST_CASE("LRg") {
  CHECK(solve_lrg(five_element_example()).chosen.size() == 2);
  CHECK(solve_lrg(greedy_trap()).chosen.size() == 2);
  testing::Rng rng(43);
  for (int k = 0; k < 100; ++k) {
    const ScpInstance inst = testing::random_scp(rng, testing::uniform_int(rng, 1, 20), testing::uniform_int(rng, 1, 20), 0.25);
    REQUIRE(solve_lrg(inst, 20, 9).chosen.size() <= prune_redundant(inst, solve_greedy(inst).chosen).size());
    REQUIRE(solve_lrg(inst, 20, 9).chosen == solve_lrg(inst, 20, 9).chosen);
  }
}

TEST_CASE("solver guarantees on random instances") {
  testing::Rng rng(47);
  for (int k = 0; k < 200; ++k) {
    const int n = testing::uniform_int(rng, 1, 12);
    const int m = testing::uniform_int(rng, 1, 12);
    const ScpInstance inst = testing::random_scp(rng, n, m, testing::uniform(rng, 0.1, 0.5));
    const std::size_t opt = oracle::scp(inst).size;
    const auto g = solve_greedy(inst);
    const auto l = solve_lpr(inst);
    const auto r = solve_lrg(inst);
    const auto e = solve_exact(inst);
    for (const auto* s : {&g, &l, &r, &e}) {
      REQUIRE(is_cover(inst, s->chosen));
      REQUIRE(std::is_sorted(s->chosen.begin(), s->chosen.end()));
    }
    REQUIRE(e.chosen.size() == opt);
    REQUIRE(static_cast<double>(g.chosen.size()) <= harmonic(n) * static_cast<double>(opt) + 1e-9);
    REQUIRE(static_cast<double>(l.chosen.size()) <= l.max_frequency * l.lp_objective + 1e-9);
    REQUIRE(r.chosen.size() >= opt);
  }
}

TEST_CASE("prune_redundant and assign_nearest") {
  const ScpInstance inst{3, {{0, 1}, {1, 2}, {0, 1, 2}}, nullptr};
  CHECK(prune_redundant(inst, {0, 1, 2}) == std::vector<int>{2});
  CHECK(prune_redundant(inst, {0, 1}) == std::vector<int>{0, 1});

  auto grid = std::make_shared<const FloorGrid>(make_floor_grid({0.0, 0.0}, 1.0, 3, 1));
  const ScpInstance geo{2, {{0, 1}, {}, {0, 1}}, grid};
  const std::vector<Target> ts{make_target(0.1, 0, 1, 2, 0), make_target(2.2, 0, 1, 2, 0)};
  CoverSolution sol;
  sol.chosen = {0, 2};
  assign_nearest(sol, geo, ts);
  CHECK(sol.covered == std::vector<int>{0, 2});
  CHECK(sol.chosen == std::vector<int>{0, 2});
  sol.chosen = {0, 2};
  const std::vector<Target> near0{make_target(0.1, 0, 1, 2, 0), make_target(0.2, 0, 1, 2, 0)};
  assign_nearest(sol, geo, near0);
  CHECK(sol.chosen == std::vector<int>{0});
}

TEST_CASE("solver names") {
  for (Solver s : {Solver::kGreedy, Solver::kLpr, Solver::kLrg, Solver::kExact}) CHECK(parse_solver(solver_name(s)) == s);
  CHECK_THROWS_AS(parse_solver("simplex"), InvalidInput);
}

TEST_CASE("exchange format round trip and validation") {
  const ScpInstance inst = greedy_trap();
  std::stringstream ss;
  write_scp_exchange(ss, inst);
  const ScpInstance back = read_scp_exchange(ss);
  CHECK(back.n == inst.n);
  CHECK(back.sets == inst.sets);
  std::stringstream bad1("2 1\n0 5\n");
  CHECK_THROWS_AS(read_scp_exchange(bad1), InvalidInput);
  std::stringstream bad2("2 2\n0 1\n");
  CHECK_THROWS_AS(read_scp_exchange(bad2), InvalidInput);
  std::stringstream bad3("x\n");
  CHECK_THROWS_AS(read_scp_exchange(bad3), InvalidInput);
}
