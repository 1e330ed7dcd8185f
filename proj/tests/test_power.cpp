#include "doctest.h"
#include "oracles.hpp"

#include <numeric>
#include <random>

#include "iassr/errors.hpp"
#include "iassr/power.hpp"

using namespace iassr;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

PowerProblem random_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PowerProblem pb;
  for (int s = 0; s < 6; ++s) pb.edge_gains.push_back(0.05 + 2.0 * u(rng));
  for (int c = 0; c < 4; ++c) {
    CenterLink l;
    l.zeta = 0.3 + u(rng);
    for (int s = 0; s < 3; ++s) l.interference.push_back(0.5 * u(rng));
    pb.centers.push_back(l);
  }
  return pb;
}

}  // namespace

TEST_CASE("water-filling examples") {
  auto p = waterfill({2.0, 1.0}, 2.0);
  CHECK(p[0] == doctest::Approx(1.25));
  CHECK(p[1] == doctest::Approx(0.75));
  p = waterfill({1.0, 0.5}, 1.0);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  p = waterfill({1.0, 0.0, 3.0}, 0.0);
  CHECK(sum(p) == 0.0);
  p = waterfill({0.0, 4.0}, 1.0);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(waterfill({1.0}, -1.0), Error);
}

TEST_CASE("water-filling matches the sorted oracle and the KKT conditions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> l(1 + trial % 9);
    for (double& x : l) x = u(rng);
    const double budget = u(rng) * (trial % 3 + 1);
    const auto p = waterfill(l, budget);
    const auto q = oracle::waterfill_sorted(l, budget);
    CHECK(std::abs(sum(p) - budget) <= 1e-9 * std::max(1.0, budget));
    double nu = -1.0;
    for (std::size_t s = 0; s < l.size(); ++s) {
      CHECK(p[s] == doctest::Approx(q[s]).epsilon(1e-9));
      CHECK(p[s] >= 0.0);
      if (p[s] > 0.0) nu = p[s] + 1.0 / l[s];
    }
    for (std::size_t s = 0; s < l.size(); ++s) {
      if (p[s] > 0.0) CHECK(std::abs(p[s] + 1.0 / l[s] - nu) <= 1e-9 * nu);
      else CHECK(1.0 / l[s] >= nu - 1e-9 * nu);
    }
  }
}

TEST_CASE("capacity formulas") {
  CHECK(capacity_edge({1.0, 3.0}, {1.0, 1.0}) == doctest::Approx(3.0));
  CHECK(capacity_center({2.0}, 2.0, {0.5}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(capacity_edge({1.0}, {}), Error);
}

TEST_CASE("golden section reaches the grid optimum") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PowerProblem pb = random_problem(seed);
    const double P = 20.0 * seed;
    const double hi = P / pb.center_streams();
    const PowerAllocation g = allocate(pb, P, 1e-6 * hi);
    double grid = 0.0;
    for (int k = 0; k <= 1000; ++k) grid = std::max(grid, evaluate_split(pb, P, hi * k / 1000.0).c_sum);
    CHECK(g.c_sum >= 0.99 * grid);
    CHECK(g.used_power(pb) == doctest::Approx(P).epsilon(1e-9));
    CHECK(g.p_cent >= 0.0);
    CHECK(g.p_cent <= hi * (1.0 + 1e-12));
  }
}

TEST_CASE("degenerate budgets and problems") {
  const PowerProblem pb = random_problem(3);
  const PowerAllocation z = allocate(pb, 0.0, 1e-6);
  CHECK(z.c_sum == 0.0);
  CHECK(z.p_cent == 0.0);
  PowerProblem edge_only;
  edge_only.edge_gains = {1.0, 2.0};
  CHECK(allocate(edge_only, 3.0, 1e-6).c_edge == doctest::Approx(capacity_edge({1.0, 2.0}, waterfill({1.0, 2.0}, 3.0))));
  CHECK_THROWS_AS(allocate(pb, 1.0, 0.0), Error);
  CHECK_THROWS_AS(evaluate_split(pb, 1.0, 1.0), Error);
}

TEST_CASE("equal power splits uniformly") {
  const PowerProblem pb = random_problem(4);
  const PowerAllocation e = equal_power(pb, 18.0);
  CHECK(e.p_cent == doctest::Approx(1.0));
  for (double p : e.edge_powers) CHECK(p == doctest::Approx(1.0));
  CHECK(e.used_power(pb) == doctest::Approx(18.0));
  CHECK(e.c_sum <= allocate(pb, 18.0, 1e-8).c_sum + 1e-9);
}
