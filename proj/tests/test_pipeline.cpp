#include "doctest.h"

#include <numeric>

#include "iassr/errors.hpp"
#include "iassr/pipeline.hpp"

using namespace iassr;

namespace {

const NetworkStatistics& stats() {
  static const NetworkStatistics st = build_statistics(default_scenario());
  return st;
}

int max_center_m(const TransmissionPlan& p) {
  int m = 0;
  for (const auto& c : p.centers) m = std::max(m, c.B.M());
  return m;
}

}  // namespace

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::IaSsr, Scheme::EqualPower, Scheme::De, Scheme::PureIa, Scheme::PureJsdm,
                   Scheme::UpperBound})
    CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_THROWS_AS(parse_scheme("nope"), Error);
}

TEST_CASE("default plans") {
  const auto& st = stats();
  const TransmissionPlan ia = plan_transmission(st, Scheme::IaSsr);
  const TransmissionPlan de = plan_transmission(st, Scheme::De);
  CHECK(ia.edges.size() == 3);
  CHECK(ia.centers.size() == 6);
  for (const auto& e : ia.edges) CHECK(e.candidates.front().total() == 3);
  for (const auto& c : de.centers)
    if (st.link(c.cluster, c.bs).geometry.distance > 800.0) CHECK(c.streams == 2);
  CHECK(std::abs(max_center_m(ia) - 2 * max_center_m(de)) <= 1);
  CHECK(de.edges.empty());

  const TransmissionPlan pj = plan_transmission(st, Scheme::PureJsdm);
  CHECK(pj.edges.empty());
  CHECK(pj.assignment == nearest_bs_assignment(st.scenario));
  const TransmissionPlan pi = plan_transmission(st, Scheme::PureIa);
  CHECK(pi.centers.empty());
}

TEST_CASE("a trial meets the precoder and budget limits") {
  const auto& st = stats();
  const ChannelRealization h = sample_realization(st, 5);
  for (Scheme s : {Scheme::IaSsr, Scheme::De, Scheme::EqualPower, Scheme::PureJsdm, Scheme::UpperBound}) {
    const TransmissionPlan plan = plan_transmission(st, s);
    const TrialResult r = run_trial(st, plan, h, {20.0});
    CHECK(r.ok);
    CHECK(r.max_leakage <= kLeakageLimit);
    CHECK(r.max_zf_residual <= kZfResidualLimit);
    CHECK(r.budget_error <= kBudgetLimit);
    CHECK(r.rate.size() == static_cast<std::size_t>(st.num_clusters()));
    for (double x : r.rate) CHECK(x >= 0.0);
    CHECK(std::accumulate(r.rate.begin(), r.rate.end(), 0.0) == doctest::Approx(r.c_sum));
  }
}

TEST_CASE("golden-section split is at least as good as equal power") {
  const auto& st = stats();
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  const ChannelRealization h = sample_realization(st, 9);
  const PreparedTrial prep = prepare_trial(st, plan, h);
  const double P = total_power(st.scenario.config, 30.0);
  const TrialResult g = solve_trial(st, plan, prep, {30.0});
  const TrialResult e = score_trial(prep, equal_power(prep.problem, P), st.num_clusters());
  CHECK(g.c_sum >= e.c_sum - 1e-9);
  const TrialResult again = score_trial(prep, g.power, st.num_clusters());
  CHECK(again.rate == g.rate);
}

TEST_CASE("trials are deterministic") {
  const auto& st = stats();
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  const TrialResult a = run_trial(st, plan, sample_realization(st, 3), {10.0});
  const TrialResult b = run_trial(st, plan, sample_realization(st, 3), {10.0});
  CHECK(a.rate == b.rate);
  const TrialResult c = run_trial(st, plan, sample_realization(st, 4), {10.0});
  CHECK(a.rate != c.rate);
}

TEST_CASE("serial and parallel kernels agree") {
  const Scenario sc = default_scenario();
  const NetworkStatistics a = build_statistics(sc, Execution::Serial);
  const auto& b = stats();
  for (int j = 0; j < a.num_clusters(); ++j)
    for (int i = 0; i < kNumBs; ++i) {
      CHECK(a.link(j, i).basis.rank() == b.link(j, i).basis.rank());
      CHECK((a.link(j, i).basis.lambda - b.link(j, i).basis.lambda).norm() == 0.0);
    }
  const ChannelRealization s = sample_realization(b, 8, Execution::Serial);
  const ChannelRealization p = sample_realization(b, 8, Execution::Parallel);
  for (std::size_t j = 0; j < s.H.size(); ++j)
    for (int i = 0; i < kNumBs; ++i) CHECK((s.H[j][i] - p.H[j][i]).norm() == 0.0);
}

TEST_CASE("overhead charge") {
  const auto& st = stats();
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  const OverheadParams o{250, 4.0, 16, 2};
  for (const auto& e : plan.edges)
    CHECK(cluster_overhead(st, plan, e.cluster, o) == doctest::Approx(overhead_factor_edge(e.M, 3, o)));
  for (const auto& c : plan.centers)
    CHECK(cluster_overhead(st, plan, c.cluster, o) ==
          doctest::Approx(overhead_factor_center(plan.tc_len, c.B.M(), 3, o)));
  CHECK(total_power(st.scenario.config, 10.0) == doctest::Approx(10.0));
}
