// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iassr/division.hpp"
#include "iassr/errors.hpp"
#include "iassr/experiments.hpp"
#include "iassr/ia.hpp"
#include "iassr/pipeline.hpp"
#include "iassr/power.hpp"
#include "iassr/precode.hpp"
#include "iassr/training.hpp"

using namespace iassr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s ACC%d %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string str(const char* f, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

using Rows = std::vector<ResultRow>;

std::optional<ResultRow> find(const Rows& rows, const std::string& sweep, const std::string& scheme,
                              const std::string& metric) {
  for (const auto& r : rows)
    if (r.sweep == sweep && r.scheme == scheme && r.metric == metric) return r;
  return std::nullopt;
}

double value(const Rows& rows, const std::string& sweep, const std::string& scheme, const std::string& metric) {
  const auto r = find(rows, sweep, scheme, metric);
  return r ? r->mean : std::nan("");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Mean difference a - b exceeds 1.96 combined standard errors.
bool separated(const ResultRow& a, const ResultRow& b) {
  return a.mean - b.mean > 1.96 * std::hypot(a.stderr_, b.stderr_);
}

Rows run(const Scenario& sc, const std::string& fig, int trials) {
  ExperimentSpec s = default_spec(fig, sc.config);
  s.trials = trials;
  return run_experiment(sc, s);
}

void acc1(const Rows& fig2, double secs) {
  std::vector<double> cf, ec;
  for (double d = 300.0; d <= 900.0; d += 50.0) {
    cf.push_back(value(fig2, num(d), "closed_form", "rank"));
    ec.push_back(value(fig2, num(d), "eigen_count", "rank"));
  }
  bool mono = true;
  for (std::size_t k = 1; k < cf.size(); ++k) mono = mono && cf[k] < cf[k - 1] && ec[k] <= ec[k - 1];
  const bool strict_overall = ec.back() < ec.front();
  const bool ends = std::abs(cf.front() - 9) <= 2 && std::abs(ec.front() - 9) <= 2 &&
                    std::abs(cf.back() - 4) <= 2 && std::abs(ec.back() - 4) <= 2;
  char buf[256];
  std::snprintf(buf, sizeof buf, "rank vs distance: closed form %.2f -> %.2f, eigen count %g -> %g, %.2f s",
                cf.front(), cf.back(), ec.front(), ec.back(), secs);
  report(1, mono && strict_overall && ends && secs < 30.0, buf);
}

void acc2() {
  const auto t0 = Clock::now();
  struct Row {
    Triple M;
    int nr, sum;
    bool efficient;
  };
  const Row table[] = {{{2, 2, 2}, 2, 3, true},  {{3, 3, 3}, 2, 4, true},  {{5, 3, 3}, 2, 4, false},
                       {{4, 4, 4}, 4, 6, true},  {{5, 4, 4}, 4, 6, true},  {{7, 4, 4}, 4, 6, false}};
  int matched = 0;
  for (const Row& r : table) {
    const DofAllocation a = dof_search(r.M, r.nr);
    if (a.total() == r.sum && ia_efficient(a, r.M) == r.efficient) ++matched;
  }
  const double secs = seconds_since(t0);
  report(2, matched == 6 && secs < 1.0, std::to_string(matched) + "/6 stream-allocation rows, " + str("%.4f s", secs));
}

void acc3(const NetworkStatistics& st) {
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  const int nr = st.scenario.config.nr;
  double worst_leak = 0.0, worst_sv = std::numeric_limits<double>::infinity();
  int solved = 0, failed = 0;
  for (int t = 0; t < 500; ++t) {
    const ChannelRealization h = sample_realization(st, mix_seed(3, t));
    for (const EdgePlan& e : plan.edges) {
      IaChannels ch;
      for (int k = 0; k < kNumBs; ++k)
        for (int i = 0; i < kNumBs; ++i)
          ch[k][i] = h.H[static_cast<std::size_t>(e.cluster)][i].middleRows(k * nr, nr) * e.B[i].B;
      bool done = false;
      for (const DofAllocation& cand : e.candidates) {
        try {
          const IaSolution sol = ia_precoders(ch, cand);
          worst_leak = std::max(worst_leak, ia_leakage(ch, sol));
          for (int k = 0; k < kNumBs; ++k)
            if (cand.S[k] > 0)
              worst_sv = std::min(worst_sv, min_singular_value(sol.U[k].adjoint() * ch[k][k] * sol.V[k]));
          done = true;
          break;
        } catch (const Error&) {
        }
      }
      (done ? solved : failed)++;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d edge realizations aligned (%d failed), max leakage %.2e, min direct singular value %.2e",
                solved, failed, worst_leak, worst_sv);
  report(3, failed == 0 && worst_leak <= 1e-8 && worst_sv > 1e-6, buf);
}

void acc4(const NetworkStatistics& st) {
  double worst = 0.0;
  int links = 0;
  for (Scheme sc : {Scheme::IaSsr, Scheme::De, Scheme::PureJsdm}) {
    const TransmissionPlan plan = plan_transmission(st, sc);
    for (int t = 0; t < 100; ++t) {
      const PreparedTrial prep = prepare_trial(st, plan, sample_realization(st, mix_seed(4, t)));
      worst = std::max(worst, prep.max_zf_residual);
      links += static_cast<int>(prep.center_owner.size());
    }
  }
  report(4, worst <= 1e-9, std::to_string(links) + str(" centre links, max ||Hbar V - zeta I||_F = %.2e", worst));
}

void acc5(const NetworkStatistics& st, const Rows& fig8) {
  // Water-filling KKT conditions on random gains.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  double kkt = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> l(1 + t % 12);
    for (double& x : l) x = u(rng);
    const double budget = u(rng);
    const auto p = waterfill(l, budget);
    double sum = 0.0, nu = 0.0;
    for (std::size_t s = 0; s < l.size(); ++s) {
      sum += p[s];
      if (p[s] > 0.0) nu = std::max(nu, p[s] + 1.0 / l[s]);
    }
    kkt = std::max(kkt, std::abs(sum - budget) / budget);
    for (std::size_t s = 0; s < l.size(); ++s) {
      if (p[s] > 0.0) kkt = std::max(kkt, std::abs(p[s] + 1.0 / l[s] - nu) / nu);
      else kkt = std::max(kkt, std::max(0.0, nu - 1.0 / l[s]) / nu);
      kkt = std::max(kkt, std::max(0.0, -p[s]));
    }
  }

  // Golden section against a 1000-point grid.
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  double worst_gap = 0.0;
  for (int t = 0; t < 50; ++t) {
    const PreparedTrial prep = prepare_trial(st, plan, sample_realization(st, mix_seed(5, t)));
    for (double snr : {10.0, 20.0, 30.0}) {
      const double P = total_power(st.scenario.config, snr);
      const TrialResult g = solve_trial(st, plan, prep, {snr});
      const double hi = P / prep.problem.center_streams();
      double grid = 0.0;
      for (int k = 0; k <= 1000; ++k) grid = std::max(grid, evaluate_split(prep.problem, P, hi * k / 1000.0).c_sum);
      worst_gap = std::max(worst_gap, (grid - g.c_sum) / grid);
    }
  }

  const double a0 = value(fig8, "0:opt", "iassr", "log10_alpha");
  const double a20 = value(fig8, "20:opt", "iassr", "log10_alpha");
  const double a40 = value(fig8, "40:opt", "iassr", "log10_alpha");
  const bool alpha_ok = a20 < 0.0 && a0 >= a20 && a20 >= a40;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "water-filling KKT residual %.1e; golden section within %.3f%% of grid; mean log10 alpha at 0/20/40 dB = %.3f/%.3f/%.3f",
                kkt, 100.0 * worst_gap, a0, a20, a40);
  report(5, kkt <= 1e-9 && worst_gap <= 0.01 && alpha_ok, buf);
}

void acc6(const Rows& fig3) {
  const double rc = value(fig3, "center", "iassr", "r"), re = value(fig3, "edge", "iassr", "r");
  const double s_de = value(fig3, "edge", "de", "S"), s_ia = value(fig3, "edge", "iassr", "S");
  const double m_ia = value(fig3, "center", "iassr", "M"), m_de = value(fig3, "center", "de", "M");
  const bool ok = std::abs(rc - 8) <= 1 && std::abs(re - 4) <= 1 && s_de == 2 && s_ia == 3 &&
                  std::abs(m_ia - 2 * m_de) <= 1;
  char buf[256];
  std::snprintf(buf, sizeof buf, "r centre %.2f, r edge %.2f, S edge DE %g / IA-SSR %g, M centre IA-SSR %.2f vs DE %.2f",
                rc, re, s_de, s_ia, m_ia, m_de);
  report(6, ok, buf);
}

void acc7(const Rows& fig4, const Rows& fig5) {
  bool ok = true;
  std::string worst;
  for (const auto& r : fig4) {
    if (r.scheme != "iassr") continue;
    const auto de = find(fig4, r.sweep, "de", r.metric);
    if (!de || !separated(r, *de)) {
      ok = false;
      worst += " centre@" + r.sweep;
    }
  }
  for (const auto& r : fig5) {
    if (r.scheme != "iassr" || std::stod(r.sweep) < 10.0) continue;
    const auto de = find(fig5, r.sweep, "de", r.metric);
    if (!de || !separated(r, *de)) {
      ok = false;
      worst += " edge@" + r.sweep;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "IA-SSR over DE, 200 trials: centre %.2f vs %.2f at 20 dB, edge %.2f vs %.2f at 20 dB",
                value(fig4, "20", "iassr", "center_rate"), value(fig4, "20", "de", "center_rate"),
                value(fig5, "20", "iassr", "edge_rate"), value(fig5, "20", "de", "edge_rate"));
  report(7, ok, std::string(buf) + (ok ? "" : "; not separated:" + worst));
}

void acc8(const Rows& fig7, const Rows& fig10) {
  std::vector<std::string> Ts;
  for (const auto& r : fig7)
    if (r.scheme == "iassr") Ts.push_back(r.sweep);
  const std::string lo = Ts.front(), hi = Ts.back();
  const double ia_lo = value(fig7, lo, "iassr", "effective_edge_rate"), de_lo = value(fig7, lo, "de", "effective_edge_rate");
  const double ia_hi = value(fig7, hi, "iassr", "effective_edge_rate"), de_hi = value(fig7, hi, "de", "effective_edge_rate");
  const bool cross_edge = ia_lo < de_lo && ia_hi > de_hi;

  const double pi_lo = value(fig10, lo, "pure_ia", "effective_rate"), pj_lo = value(fig10, lo, "pure_jsdm", "effective_rate");
  const double pi_hi = value(fig10, hi, "pure_ia", "effective_rate"), pj_hi = value(fig10, hi, "pure_jsdm", "effective_rate");
  const bool cross_pure = pj_lo > pi_lo && pi_hi > pj_hi;

  bool adaptive = true;
  std::string below;
  for (const auto& T : Ts) {
    const double a = value(fig10, T, "iassr", "effective_rate");
    const double b = std::max(value(fig10, T, "pure_ia", "effective_rate"), value(fig10, T, "pure_jsdm", "effective_rate"));
    if (a < b) {
      adaptive = false;
      below += " T=" + T + str("(%.2f", a) + str(" < %.2f)", b);
    }
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "edge IA-SSR vs DE: %.2f/%.2f at T=%s, %.2f/%.2f at T=%s [%s]; pure JSDM vs pure IA: %.2f/%.2f at T=%s, %.2f/%.2f at T=%s [%s]; IA-SSR >= both [%s]",
                ia_lo, de_lo, lo.c_str(), ia_hi, de_hi, hi.c_str(), cross_edge ? "ok" : "no", pj_lo, pi_lo,
                lo.c_str(), pj_hi, pi_hi, hi.c_str(), cross_pure ? "ok" : "no", adaptive ? "ok" : ("no:" + below).c_str());
  report(8, cross_edge && cross_pure && adaptive, buf);
}

void acc9(const NetworkStatistics& st, const Rows& fig11) {
  // Noiseless recovery of every effective channel of the default plan.
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  std::vector<EdgeDims> ed;
  std::vector<CenterDims> cd;
  for (const auto& e : plan.edges) ed.push_back({e.cluster, e.M});
  for (const auto& c : plan.centers) cd.push_back({c.cluster, c.bs, c.B.M()});
  const TrainingPlan tp = design_training(ed, cd);
  const ChannelRealization h = sample_realization(st, 9);
  double err = 0.0;
  for (const auto& e : plan.edges) {
    const auto& tr = tp.edge_for(e.cluster);
    const auto& H = h.H[static_cast<std::size_t>(e.cluster)];
    CMatrix y = CMatrix::Zero(H[0].rows(), tr.length);
    for (int i = 0; i < kNumBs; ++i) y += H[i] * e.B[i].B * tr.T[i];
    for (int i = 0; i < kNumBs; ++i) err = std::max(err, (ls_estimate_edge(y, tp, e.cluster, i) - H[i] * e.B[i].B).norm());
  }
  for (const auto& c : plan.centers) {
    const CMatrix g = h.H[static_cast<std::size_t>(c.cluster)][c.bs] * c.B.B;
    err = std::max(err, (ls_estimate_center(g * tp.center_for(c.cluster).T, tp, c.cluster) - g).norm());
  }

  bool order = true;
  for (const auto& r : fig11) {
    if (r.scheme != "with_interference" || r.metric != "mse_center" || std::stod(r.sweep) < 20.0) continue;
    order = order && r.mean > value(fig11, r.sweep, "with_interference", "mse_edge");
  }
  auto floor_ratio = [&](const char* metric) {
    return value(fig11, "40", "with_interference", metric) / value(fig11, "30", "with_interference", metric);
  };
  const double fc = floor_ratio("mse_center"), fe = floor_ratio("mse_edge");
  const bool floors = std::abs(fc - 1.0) <= 0.2 && std::abs(fe - 1.0) <= 0.2;
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "noiseless LS error %.1e; with interference at 30 dB centre %.4g vs edge %.4g [%s]; MSE(40)/MSE(30) centre %.3f, edge %.3f [%s]",
                err, value(fig11, "30", "with_interference", "mse_center"),
                value(fig11, "30", "with_interference", "mse_edge"), order ? "centre > edge" : "centre <= edge",
                fc, fe, floors ? "floors" : "no floor");
  report(9, err <= 1e-12 && order && floors, buf);
}

void acc10(const Scenario& sc, double suite_secs, int trials) {
  bool same = true;
  for (const char* fig : {"fig3", "fig4", "fig8", "fig11"}) {
    ExperimentSpec s = default_spec(fig, sc.config);
    s.trials = 20;
    same = same && format_csv(run_experiment(sc, s)) == format_csv(run_experiment(sc, s));
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "repeat runs %s; full default suite at %d trials/point took %.1f s",
                same ? "byte-identical" : "DIFFER", trials, suite_secs);
  report(10, same && suite_secs < 600.0, buf);
}

}  // namespace

int main() {
  try {
    const Scenario sc = default_scenario();
    const NetworkStatistics st = build_statistics(sc);
    constexpr int kTrials = 100;

    std::map<std::string, Rows> suite;
    std::map<std::string, double> secs;
    const auto t_suite = Clock::now();
    for (const auto& fig : figure_ids()) {
      const auto t0 = Clock::now();
      suite[fig] = run(sc, fig, kTrials);
      secs[fig] = seconds_since(t0);
      std::fprintf(stderr, "%s: %.1f s\n", fig.c_str(), secs[fig]);
    }
    const double suite_secs = seconds_since(t_suite);

    acc1(suite["fig2"], secs["fig2"]);
    acc2();
    acc3(st);
    acc4(st);
    acc5(st, suite["fig8"]);
    acc6(suite["fig3"]);
    acc7(run(sc, "fig4", 200), run(sc, "fig5", 200));
    acc8(suite["fig7"], suite["fig10"]);
    acc9(st, suite["fig11"]);
    acc10(sc, suite_secs, kTrials);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  return failures;
}
