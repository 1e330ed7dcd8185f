#include "iassr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "iassr/errors.hpp"
#include "iassr/training.hpp"

namespace iassr {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Key {
  std::string sweep, scheme, metric;
};

class Table {
 public:
  int add(std::string sweep, std::string scheme, std::string metric) {
    keys_.push_back({std::move(sweep), std::move(scheme), std::move(metric)});
    return static_cast<int>(keys_.size()) - 1;
  }
  int size() const { return static_cast<int>(keys_.size()); }
  const Key& key(int k) const { return keys_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<Key> keys_;
};

struct TrialSamples {
  std::vector<double> values;
  std::string diagnostic;
};

// Runs `fn` for every trial (seed = base + t) and reduces in trial order.
template <class Fn>
std::vector<ResultRow> monte_carlo(const Table& table, const ExperimentSpec& spec, Fn fn) {
  const int n = spec.trials;
  std::vector<TrialSamples> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) if (spec.exec == Execution::Parallel)
  for (int t = 0; t < n; ++t) {
    TrialSamples& s = out[static_cast<std::size_t>(t)];
    s.values.assign(static_cast<std::size_t>(table.size()), kMissing);
    try {
      fn(spec.seed + static_cast<std::uint64_t>(t), s);
    } catch (const Error& e) {
      std::fill(s.values.begin(), s.values.end(), kMissing);
      s.diagnostic = e.what();
    }
  }

  std::vector<ResultRow> rows;
  std::map<std::pair<std::string, std::string>, std::set<int>> aborted;
  std::vector<std::pair<std::string, std::string>> order;
  for (int k = 0; k < table.size(); ++k) {
    const Key& key = table.key(k);
    double sum = 0.0, sq = 0.0;
    int m = 0;
    for (int t = 0; t < n; ++t) {
      const double v = out[static_cast<std::size_t>(t)].values[static_cast<std::size_t>(k)];
      if (std::isnan(v)) {
        aborted[{key.sweep, key.scheme}].insert(t);
        continue;
      }
      sum += v;
      ++m;
    }
    const double mean = m > 0 ? sum / m : kMissing;
    for (int t = 0; t < n; ++t) {
      const double v = out[static_cast<std::size_t>(t)].values[static_cast<std::size_t>(k)];
      if (!std::isnan(v)) sq += (v - mean) * (v - mean);
    }
    const double se = m > 1 ? std::sqrt(sq / (m - 1) / m) : 0.0;
    rows.push_back({key.sweep, key.scheme, key.metric, mean, se, m});
    if (order.empty() || order.back() != std::make_pair(key.sweep, key.scheme))
      order.emplace_back(key.sweep, key.scheme);
  }
  for (const auto& sk : order) {
    auto it = aborted.find(sk);
    if (it != aborted.end() && !it->second.empty())
      rows.push_back({sk.first, sk.second, "aborted", static_cast<double>(it->second.size()), 0.0, n});
  }
  for (int t = 0; t < n; ++t)
    if (!out[static_cast<std::size_t>(t)].diagnostic.empty())
      std::cerr << spec.figure << " trial " << t << ": " << out[static_cast<std::size_t>(t)].diagnostic << '\n';
  return rows;
}

void note(TrialSamples& s, const TrialResult& r) {
  if (!r.ok && s.diagnostic.find(r.diagnostic) == std::string::npos) s.diagnostic += r.diagnostic;
}

double class_mean(const std::vector<double>& rate, const std::vector<bool>& is_edge, bool edge) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t j = 0; j < rate.size(); ++j)
    if (is_edge[j] == edge) {
      sum += rate[j];
      ++n;
    }
  return n > 0 ? sum / n : kMissing;
}

std::vector<bool> edge_mask(const TransmissionPlan& p) {
  std::vector<bool> m;
  for (const auto& a : p.assignment) m.push_back(a.is_edge());
  return m;
}

OverheadParams overhead_at(const ScenarioConfig& c, int T) {
  return {T, c.feedback_rate_F, c.quant_bits_Q, c.nr};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// fig2: rank of a broadside cluster's correlation versus distance.
std::vector<ResultRow> run_fig2(const Scenario& s, const ExperimentSpec& spec) {
  const ScenarioConfig& c = s.config;
  const double ring = s.clusters.empty() ? 25.0 : s.clusters.front().ring_radius_m;
  std::vector<ResultRow> rows;
  for (double d : spec.distances_m) {
    const double delta = std::atan(ring / d);
    rows.push_back({fmt(d), "closed_form", "rank", analytic_rank(0.0, delta, c.nt, c.spacing_ratio), 0.0, 1});
    const CMatrix R = correlation_matrix(0.0, delta, c.nt, c.spacing_ratio, spec.exec);
    rows.push_back({fmt(d), "eigen_count", "rank", static_cast<double>(eigen_basis(R, c.eigen_threshold).rank()), 0.0, 1});
  }
  return rows;
}

// fig3: correlation rank, effective dimension and streams per cluster class.
std::vector<ResultRow> run_fig3(const NetworkStatistics& st, const ExperimentSpec& spec) {
  const TransmissionPlan ref = plan_transmission(st, Scheme::IaSsr);
  const std::vector<bool> is_edge = edge_mask(ref);
  const int J = st.num_clusters();
  std::vector<ResultRow> rows;
  for (Scheme sc : spec.schemes) {
    if (sc != Scheme::IaSsr && sc != Scheme::De) continue;
    const TransmissionPlan p = sc == Scheme::IaSsr ? ref : plan_transmission(st, sc);
    for (bool edge : {false, true}) {
      std::vector<double> r, M, S;
      for (int j = 0; j < J; ++j) {
        if (is_edge[j] != edge) continue;
        if (const EdgePlan* e = p.edge_for(j)) {
          for (int i = 0; i < kNumBs; ++i) {
            r.push_back(st.link(j, i).basis.rank());
            M.push_back(e->M[i]);
          }
          S.push_back(e->candidates.empty() ? 0.0 : e->candidates.front().total());
        } else if (const CenterPlan* cp = p.center_for(j)) {
          r.push_back(st.link(j, cp->bs).basis.rank());
          M.push_back(cp->B.M());
          S.push_back(cp->streams);
        }
      }
      const std::string cls = edge ? "edge" : "center";
      rows.push_back({cls, scheme_name(sc), "r", mean_of(r), 0.0, 1});
      rows.push_back({cls, scheme_name(sc), "M", mean_of(M), 0.0, 1});
      rows.push_back({cls, scheme_name(sc), "S", mean_of(S), 0.0, 1});
    }
  }
  return rows;
}

// fig4 / fig5: per-cluster rate of one class versus SNR.
std::vector<ResultRow> run_rate_vs_snr(const NetworkStatistics& st, const ExperimentSpec& spec, bool edge) {
  const std::vector<bool> is_edge = edge_mask(plan_transmission(st, Scheme::IaSsr));
  std::vector<TransmissionPlan> plans;
  for (Scheme sc : spec.schemes) plans.push_back(plan_transmission(st, sc));
  const std::string metric = edge ? "edge_rate" : "center_rate";
  Table table;
  std::vector<std::vector<int>> key(spec.snr_db.size());
  for (std::size_t a = 0; a < spec.snr_db.size(); ++a)
    for (const auto& p : plans) key[a].push_back(table.add(fmt(spec.snr_db[a]), scheme_name(p.scheme), metric));

  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    for (std::size_t b = 0; b < plans.size(); ++b) {
      const PreparedTrial prep = prepare_trial(st, plans[b], h);
      for (std::size_t a = 0; a < spec.snr_db.size(); ++a) {
        const TrialResult r = solve_trial(st, plans[b], prep, {spec.snr_db[a]});
        note(s, r);
        if (r.ok) s.values[static_cast<std::size_t>(key[a][b])] = class_mean(r.rate, is_edge, edge);
      }
    }
  });
}

// fig6 / fig7: effective rate of one class versus the coherence block length.
std::vector<ResultRow> run_rate_vs_T(const NetworkStatistics& st, const ExperimentSpec& spec, bool edge) {
  const ScenarioConfig& c = st.scenario.config;
  const std::vector<bool> is_edge = edge_mask(plan_transmission(st, Scheme::IaSsr));
  std::vector<TransmissionPlan> plans;
  for (Scheme sc : spec.schemes) plans.push_back(plan_transmission(st, sc));
  const std::string metric = edge ? "effective_edge_rate" : "effective_center_rate";
  const double snr = spec.snr_db.front();
  Table table;
  std::vector<std::vector<int>> key(spec.coherence_T.size());
  for (std::size_t a = 0; a < spec.coherence_T.size(); ++a)
    for (const auto& p : plans)
      key[a].push_back(table.add(std::to_string(spec.coherence_T[a]), scheme_name(p.scheme), metric));

  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    for (std::size_t b = 0; b < plans.size(); ++b) {
      const TrialResult r = run_trial(st, plans[b], h, {snr});
      note(s, r);
      if (!r.ok) continue;
      for (std::size_t a = 0; a < spec.coherence_T.size(); ++a) {
        const OverheadParams o = overhead_at(c, spec.coherence_T[a]);
        std::vector<double> eff(r.rate.size());
        for (std::size_t j = 0; j < eff.size(); ++j)
          eff[j] = effective_rate(cluster_overhead(st, plans[b], static_cast<int>(j), o), r.rate[j]);
        s.values[static_cast<std::size_t>(key[a][b])] = class_mean(eff, is_edge, edge);
      }
    }
  });
}

// fig8: rates versus the power split alpha = p_cent / p_edge.
std::vector<ResultRow> run_fig8(const NetworkStatistics& st, const ExperimentSpec& spec) {
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  const std::vector<bool> is_edge = edge_mask(plan);
  const int J = st.num_clusters();
  const double lo = spec.log10_alpha.front(), hi = spec.log10_alpha.back();
  Table table;
  struct Point { int center, edge, avg; };
  std::vector<std::vector<Point>> grid(spec.snr_db.size());
  std::vector<Point> opt;
  std::vector<int> opt_alpha;
  for (std::size_t a = 0; a < spec.snr_db.size(); ++a) {
    const std::string snr = fmt(spec.snr_db[a]);
    for (double la : spec.log10_alpha) {
      const std::string sw = snr + ":" + fmt(la);
      grid[a].push_back({table.add(sw, "iassr", "center_rate"), table.add(sw, "iassr", "edge_rate"),
                         table.add(sw, "iassr", "avg_rate")});
    }
    const std::string sw = snr + ":opt";
    opt_alpha.push_back(table.add(sw, "iassr", "log10_alpha"));
    opt.push_back({table.add(sw, "iassr", "center_rate"), table.add(sw, "iassr", "edge_rate"),
                   table.add(sw, "iassr", "avg_rate")});
  }

  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    const PreparedTrial prep = prepare_trial(st, plan, h);
    const double ne = static_cast<double>(prep.problem.edge_gains.size());
    const double nc = static_cast<double>(prep.problem.center_streams());
    auto put = [&](const Point& k, const TrialResult& r) {
      note(s, r);
      if (!r.ok) return;
      s.values[static_cast<std::size_t>(k.center)] = class_mean(r.rate, is_edge, false);
      s.values[static_cast<std::size_t>(k.edge)] = class_mean(r.rate, is_edge, true);
      s.values[static_cast<std::size_t>(k.avg)] = r.c_sum / J;
    };
    for (std::size_t a = 0; a < spec.snr_db.size(); ++a) {
      const double P = total_power(st.scenario.config, spec.snr_db[a]);
      for (std::size_t g = 0; g < spec.log10_alpha.size(); ++g) {
        const double alpha = std::pow(10.0, spec.log10_alpha[g]);
        const double p_cent = alpha * P / (ne + alpha * nc);
        put(grid[a][g], score_trial(prep, evaluate_split(prep.problem, P, p_cent), J));
      }
      const TrialResult best = solve_trial(st, plan, prep, {spec.snr_db[a]});
      put(opt[a], best);
      const double p_edge = (P - nc * best.power.p_cent) / ne;
      double la = p_edge > 0.0 && best.power.p_cent > 0.0 ? std::log10(best.power.p_cent / p_edge)
                                                          : (best.power.p_cent > 0.0 ? hi : lo);
      s.values[static_cast<std::size_t>(opt_alpha[a])] = std::clamp(la, lo, hi);
    }
  });
}

// fig9: effective-DoF division against a capacity-driven division on random layouts.
std::vector<ResultRow> run_fig9(const Scenario& base, const ExperimentSpec& spec) {
  const ScenarioConfig& c = base.config;
  const OverheadParams o = overhead_at(c, spec.coherence_T.front());
  Table table;
  struct Keys { int dof_raw, dof_eff, cap_raw, cap_eff; };
  std::vector<Keys> keys;
  for (double snr : spec.snr_db) {
    const std::string sw = fmt(snr);
    keys.push_back({table.add(sw, "dof_criterion", "rate"), table.add(sw, "dof_criterion", "effective_rate"),
                    table.add(sw, "capacity_criterion", "rate"),
                    table.add(sw, "capacity_criterion", "effective_rate")});
  }

  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const Scenario sc = random_scenario(c, spec.clusters_per_cell, mix_seed(seed, 0x9a11));
    const NetworkStatistics st = build_statistics(sc, Execution::Serial);
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    const int J = st.num_clusters();

    const TransmissionPlan dof_raw = plan_transmission(st, Scheme::IaSsr);
    PlanOptions with_overhead;
    with_overhead.division_overhead = o;
    const TransmissionPlan dof_eff = plan_transmission(st, Scheme::IaSsr, with_overhead);

    // Prepared trials are SNR independent; cache them by assignment.
    std::map<std::vector<int>, std::pair<TransmissionPlan, PreparedTrial>> cache;
    auto code = [](const std::vector<Assignment>& a) {
      std::vector<int> v;
      for (const auto& x : a) v.push_back(x.is_edge() ? -1 : x.bs);
      return v;
    };
    auto prepared = [&](const std::vector<Assignment>& a) -> const std::pair<TransmissionPlan, PreparedTrial>& {
      auto it = cache.find(code(a));
      if (it == cache.end()) {
        PlanOptions po;
        po.assignment = a;
        TransmissionPlan p = plan_transmission(st, Scheme::IaSsr, po);
        PreparedTrial prep = prepare_trial(st, p, h);
        it = cache.emplace(code(a), std::make_pair(std::move(p), std::move(prep))).first;
      }
      return it->second;
    };
    auto sum_rate = [&](const std::vector<Assignment>& a, double snr) {
      try {
        const auto& pp = prepared(a);
        return solve_trial(st, pp.first, pp.second, {snr}).c_sum;
      } catch (const Error&) {
        return -std::numeric_limits<double>::infinity();
      }
    };
    auto effective_sum = [&](const TransmissionPlan& p, const TrialResult& r) {
      double e = 0.0;
      for (int j = 0; j < J; ++j) e += effective_rate(cluster_overhead(st, p, j, o), r.rate[static_cast<std::size_t>(j)]);
      return e / J;
    };

    std::vector<bool> edge_ok;
    for (int j = 0; j < J; ++j) {
      bool ok = sc.clusters[static_cast<std::size_t>(j)].num_users == kNumBs;
      for (int i = 0; i < kNumBs; ++i) ok = ok && st.link(j, i).set.size() > 0;
      edge_ok.push_back(ok);
    }

    for (std::size_t a = 0; a < spec.snr_db.size(); ++a) {
      const double snr = spec.snr_db[a];
      const TrialResult r_raw = run_trial(st, dof_raw, h, {snr});
      const TrialResult r_eff = solve_trial(st, dof_eff, prepared(dof_eff.assignment).second, {snr});
      note(s, r_raw);
      note(s, r_eff);
      if (r_raw.ok) s.values[static_cast<std::size_t>(keys[a].dof_raw)] = r_raw.c_sum / J;
      if (r_eff.ok) s.values[static_cast<std::size_t>(keys[a].dof_eff)] = effective_sum(dof_eff, r_eff);

      const std::vector<Assignment> basis = dof_raw.assignment;
      const std::vector<Assignment> cap = divide_clusters_by_capacity(
          J, edge_ok,
          [&](int j) {
            auto t = basis;
            t[static_cast<std::size_t>(j)] = Assignment::edge();
            return sum_rate(t, snr);
          },
          [&](int j) {
            std::array<double, kNumBs> v;
            for (int i = 0; i < kNumBs; ++i) {
              if (st.link(j, i).set.size() == 0) {
                v[static_cast<std::size_t>(i)] = -std::numeric_limits<double>::infinity();
                continue;
              }
              auto t = basis;
              t[static_cast<std::size_t>(j)] = Assignment::center(i);
              v[static_cast<std::size_t>(i)] = sum_rate(t, snr);
            }
            return v;
          });
      const auto& pc = prepared(cap);
      const TrialResult r_cap = solve_trial(st, pc.first, pc.second, {snr});
      note(s, r_cap);
      if (r_cap.ok) {
        s.values[static_cast<std::size_t>(keys[a].cap_raw)] = r_cap.c_sum / J;
        s.values[static_cast<std::size_t>(keys[a].cap_eff)] = effective_sum(pc.first, r_cap);
      }
    }
  });
}

// fig10: effective per-cluster rate of the adaptive division against pure IA and pure JSDM.
std::vector<ResultRow> run_fig10(const NetworkStatistics& st, const ExperimentSpec& spec) {
  const ScenarioConfig& c = st.scenario.config;
  const double snr = spec.snr_db.front();
  const int J = st.num_clusters();
  // One plan per distinct division; schemes other than iassr are T independent.
  std::vector<TransmissionPlan> plans;
  std::vector<std::vector<int>> plan_of(spec.coherence_T.size());
  auto intern = [&](TransmissionPlan p) {
    for (std::size_t k = 0; k < plans.size(); ++k)
      if (plans[k].scheme == p.scheme && plans[k].assignment == p.assignment) return static_cast<int>(k);
    plans.push_back(std::move(p));
    return static_cast<int>(plans.size()) - 1;
  };
  Table table;
  std::vector<std::vector<int>> key(spec.coherence_T.size());
  for (std::size_t a = 0; a < spec.coherence_T.size(); ++a) {
    const OverheadParams o = overhead_at(c, spec.coherence_T[a]);
    for (Scheme sc : spec.schemes) {
      PlanOptions po;
      if (sc == Scheme::IaSsr) po.division_overhead = o;
      plan_of[a].push_back(intern(plan_transmission(st, sc, po)));
      key[a].push_back(table.add(std::to_string(spec.coherence_T[a]), scheme_name(sc), "effective_rate"));
    }
  }

  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    std::vector<TrialResult> res;
    for (const auto& p : plans) {
      res.push_back(run_trial(st, p, h, {snr}));
      note(s, res.back());
    }
    for (std::size_t a = 0; a < spec.coherence_T.size(); ++a) {
      const OverheadParams o = overhead_at(c, spec.coherence_T[a]);
      for (std::size_t b = 0; b < plan_of[a].size(); ++b) {
        const TransmissionPlan& p = plans[static_cast<std::size_t>(plan_of[a][b])];
        const TrialResult& r = res[static_cast<std::size_t>(plan_of[a][b])];
        if (!r.ok) continue;
        double e = 0.0;
        for (int j = 0; j < J; ++j) e += effective_rate(cluster_overhead(st, p, j, o), r.rate[static_cast<std::size_t>(j)]);
        s.values[static_cast<std::size_t>(key[a][b])] = e / J;
      }
    }
  });
}

// fig11: LS training error per cluster class.
std::vector<ResultRow> run_fig11(const NetworkStatistics& st, const ExperimentSpec& spec) {
  const TransmissionPlan plan = plan_transmission(st, Scheme::IaSsr);
  Table table;
  std::vector<std::array<int, 4>> key;
  for (double snr : spec.snr_db) {
    const std::string sw = fmt(snr);
    key.push_back({table.add(sw, "with_interference", "mse_center"), table.add(sw, "with_interference", "mse_edge"),
                   table.add(sw, "without_interference", "mse_center"),
                   table.add(sw, "without_interference", "mse_edge")});
  }
  return monte_carlo(table, spec, [&](std::uint64_t seed, TrialSamples& s) {
    const ChannelRealization h = sample_realization(st, seed, Execution::Serial);
    for (std::size_t a = 0; a < spec.snr_db.size(); ++a) {
      for (int w = 0; w < 2; ++w) {
        const TrainingMse m = training_mse(st, plan, h, spec.snr_db[a], w == 0, mix_seed(seed, 0x7a11, a, w));
        s.values[static_cast<std::size_t>(key[a][2 * w])] = m.center;
        s.values[static_cast<std::size_t>(key[a][2 * w + 1])] = m.edge;
      }
    }
  });
}

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, double variance, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = {n(rng), n(rng)};
  return m;
}

// Zero-pads `t` to `len` columns.
CMatrix padded(const CMatrix& t, Eigen::Index len) {
  CMatrix out = CMatrix::Zero(t.rows(), len);
  out.leftCols(t.cols()) = t;
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), figure) == ids.end())
    throw Error(ErrorCode::InvalidArgument, "unknown figure '" + figure + "'");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (clusters_per_cell < 1) throw Error(ErrorCode::InvalidArgument, "clusters_per_cell must be >= 1");
  auto need = [&](bool empty, const char* what) {
    if (empty) throw Error(ErrorCode::InvalidArgument, std::string("empty grid: ") + what);
  };
  if (figure == "fig2") need(distances_m.empty(), "distances");
  if (figure != "fig2" && figure != "fig3") need(snr_db.empty(), "snr");
  if (figure == "fig6" || figure == "fig7" || figure == "fig9" || figure == "fig10")
    need(coherence_T.empty(), "coherence T");
  if (figure == "fig8") {
    need(log10_alpha.empty(), "alpha");
    if (!std::is_sorted(log10_alpha.begin(), log10_alpha.end()))
      throw Error(ErrorCode::InvalidArgument, "alpha grid must be ascending");
  }
  for (int T : coherence_T)
    if (T < 1) throw Error(ErrorCode::InvalidArgument, "coherence T must be positive");
  for (double d : distances_m)
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "distances must be positive");
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5",  "fig6",
                                            "fig7", "fig8", "fig9", "fig10", "fig11"};
  return ids;
}

ExperimentSpec default_spec(const std::string& figure, const ScenarioConfig& cfg) {
  ExperimentSpec s;
  s.figure = figure;
  s.seed = cfg.seed;
  auto range = [](double a, double b, double step) {
    std::vector<double> v;
    for (int k = 0; a + k * step <= b + 1e-9; ++k) v.push_back(a + k * step);
    return v;
  };
  const std::vector<int> T_grid{100, 150, 200, 250, 300, 400, 550, 700, 850, 1000};
  if (figure == "fig2") {
    s.distances_m = range(300.0, 900.0, 50.0);
  } else if (figure == "fig3") {
    s.schemes = {Scheme::IaSsr, Scheme::De};
  } else if (figure == "fig4" || figure == "fig5") {
    s.snr_db = range(0.0, 40.0, 5.0);
    s.schemes = {Scheme::IaSsr, Scheme::De, Scheme::EqualPower, Scheme::UpperBound};
  } else if (figure == "fig6" || figure == "fig7") {
    s.snr_db = {30.0};
    s.coherence_T = T_grid;
    s.schemes = {Scheme::IaSsr, Scheme::De, Scheme::UpperBound};
  } else if (figure == "fig8") {
    s.snr_db = {0.0, 20.0, 40.0};
    s.log10_alpha = range(-3.0, 2.0, 0.1);
    s.schemes = {Scheme::IaSsr};
  } else if (figure == "fig9") {
    s.snr_db = range(0.0, 40.0, 10.0);
    s.coherence_T = {cfg.coherence_T};
  } else if (figure == "fig10") {
    s.snr_db = {30.0};
    s.coherence_T = T_grid;
    s.schemes = {Scheme::IaSsr, Scheme::PureIa, Scheme::PureJsdm};
  } else if (figure == "fig11") {
    s.snr_db = range(0.0, 40.0, 5.0);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown figure '" + figure + "'");
  }
  return s;
}

std::vector<ResultRow> run_experiment(const Scenario& s, const ExperimentSpec& spec) {
  spec.validate();
  s.validate();
  if (spec.figure == "fig2") return run_fig2(s, spec);
  if (spec.figure == "fig9") return run_fig9(s, spec);
  const NetworkStatistics st = build_statistics(s, spec.exec);
  if (spec.figure == "fig3") return run_fig3(st, spec);
  if (spec.figure == "fig4") return run_rate_vs_snr(st, spec, false);
  if (spec.figure == "fig5") return run_rate_vs_snr(st, spec, true);
  if (spec.figure == "fig6") return run_rate_vs_T(st, spec, false);
  if (spec.figure == "fig7") return run_rate_vs_T(st, spec, true);
  if (spec.figure == "fig8") return run_fig8(st, spec);
  if (spec.figure == "fig10") return run_fig10(st, spec);
  return run_fig11(st, spec);
}

Scenario random_scenario(const ScenarioConfig& cfg, int per_cell, std::uint64_t seed) {
  if (per_cell < 1) throw Error(ErrorCode::InvalidArgument, "clusters per cell");
  std::mt19937_64 rng(seed);
  const double hw = (cfg.sector_half_width_deg - 3.0) * kPi / 180.0;
  const double d_min = 150.0, d_max = cfg.site_distance_m + 50.0;
  std::uniform_real_distribution<double> ang(-hw, hw), area(d_min * d_min, d_max * d_max);
  Scenario s;
  s.config = cfg;
  int id = 0;
  for (int i = 0; i < kNumBs; ++i) {
    const BsPose pose = bs_pose(cfg, i);
    for (int k = 0; k < per_cell; ++k) {
      const double a = pose.broadside + ang(rng);
      const double d = std::sqrt(area(rng));
      s.clusters.push_back({id++, {pose.position.x + d * std::cos(a), pose.position.y + d * std::sin(a)}, 25.0, 3});
    }
  }
  return s;
}

TrainingMse training_mse(const NetworkStatistics& st, const TransmissionPlan& plan,
                         const ChannelRealization& h, double snr_db, bool interference,
                         std::uint64_t seed) {
  const ScenarioConfig& c = st.scenario.config;
  const double rho = total_power(c, snr_db);
  const double amp = std::sqrt(rho);
  std::vector<EdgeDims> ed;
  std::vector<CenterDims> cd;
  for (const auto& e : plan.edges) ed.push_back({e.cluster, e.M});
  for (const auto& cp : plan.centers) cd.push_back({cp.cluster, cp.bs, cp.B.M()});
  const TrainingPlan tp = design_training(ed, cd);
  std::mt19937_64 rng(seed);
  TrainingMse out;

  // Edge phase: every BS sends its beams for all edge clusters at once.
  Eigen::Index te_len = 0;
  for (const auto& t : tp.edge) te_len = std::max<Eigen::Index>(te_len, t.length);
  double edge_sum = 0.0;
  int edge_n = 0;
  for (const auto& e : plan.edges) {
    const Eigen::Index rows = h.H[e.cluster][0].rows();
    CMatrix Y = complex_gaussian(rows, te_len, c.noise_variance, rng);
    for (const auto& src : plan.edges) {
      if (!interference && src.cluster != e.cluster) continue;
      const EdgeTraining& t = tp.edge_for(src.cluster);
      for (int i = 0; i < kNumBs; ++i)
        if (src.M[i] > 0) Y += amp * h.H[e.cluster][i] * src.B[i].B * padded(t.T[i], te_len);
    }
    const EdgeTraining& own = tp.edge_for(e.cluster);
    for (int i = 0; i < kNumBs; ++i) {
      if (e.M[i] == 0) continue;
      const CMatrix est = ls_estimate(Y, padded(own.T[i], te_len)) / amp;
      edge_sum += mse(est, h.H[e.cluster][i] * e.B[i].B);
      ++edge_n;
    }
  }

  // Centre phase: each BS reuses its block for all of its centre clusters.
  double center_sum = 0.0;
  int center_n = 0;
  for (const auto& cp : plan.centers) {
    const Eigen::Index rows = h.H[cp.cluster][0].rows();
    CMatrix Y = complex_gaussian(rows, tp.tc_len, c.noise_variance, rng);
    for (const auto& src : plan.centers) {
      if (!interference && src.cluster != cp.cluster) continue;
      Y += amp * h.H[cp.cluster][src.bs] * src.B.B * tp.center_for(src.cluster).T;
    }
    const CMatrix est = ls_estimate_center(Y, tp, cp.cluster) / amp;
    center_sum += mse(est, h.H[cp.cluster][cp.bs] * cp.B.B);
    ++center_n;
  }
  out.edge = edge_n > 0 ? edge_sum / edge_n : 0.0;
  out.center = center_n > 0 ? center_sum / center_n : 0.0;
  return out;
}

}  // namespace iassr
