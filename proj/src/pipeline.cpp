#include "iassr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "iassr/errors.hpp"
#include "iassr/precode.hpp"

namespace iassr {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::IaSsr: return "iassr";
    case Scheme::EqualPower: return "equal_power";
    case Scheme::De: return "de";
    case Scheme::PureIa: return "pure_ia";
    case Scheme::PureJsdm: return "pure_jsdm";
    case Scheme::UpperBound: return "ub_no_interference";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::IaSsr, Scheme::EqualPower, Scheme::De, Scheme::PureIa, Scheme::PureJsdm,
                   Scheme::UpperBound})
    if (name == scheme_name(s)) return s;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + name + "'");
}

const CenterPlan* TransmissionPlan::center_for(int cluster) const {
  for (const auto& c : centers)
    if (c.cluster == cluster) return &c;
  return nullptr;
}

const EdgePlan* TransmissionPlan::edge_for(int cluster) const {
  for (const auto& e : edges)
    if (e.cluster == cluster) return &e;
  return nullptr;
}

std::vector<Assignment> nearest_bs_assignment(const Scenario& s) {
  std::vector<Assignment> a;
  for (const auto& c : s.clusters) a.push_back(Assignment::center(nearest_bs(s.config, c)));
  return a;
}

double total_power(const ScenarioConfig& c, double snr_db) {
  return c.noise_variance * std::pow(10.0, snr_db / 10.0);
}

TransmissionPlan plan_transmission(const NetworkStatistics& st, Scheme scheme, const PlanOptions& opt) {
  const Scenario& s = st.scenario;
  const ScenarioConfig& c = s.config;
  const int J = st.num_clusters();
  const auto sets = st.sets_by_bs();

  TransmissionPlan p;
  p.scheme = scheme;
  p.power = scheme == Scheme::IaSsr ? PowerPolicy::GoldenSection : PowerPolicy::Equal;

  if (opt.assignment) {
    p.assignment = *opt.assignment;
  } else if (scheme == Scheme::IaSsr || scheme == Scheme::EqualPower) {
    DivisionInput in;
    in.sets = sets;
    for (const auto& cl : s.clusters) in.num_users.push_back(cl.num_users);
    in.nt = c.nt;
    in.nr = c.nr;
    in.overhead = opt.division_overhead;
    p.assignment = divide_clusters(in);
  } else if (scheme == Scheme::PureIa) {
    p.assignment.assign(static_cast<std::size_t>(J), Assignment::edge());
  } else {
    p.assignment = nearest_bs_assignment(s);
  }
  if (static_cast<int>(p.assignment.size()) != J)
    throw Error(ErrorCode::DimensionMismatch, "assignment size");
  if (scheme == Scheme::UpperBound) return p;

  for (int j = 0; j < J; ++j) {
    const Assignment& a = p.assignment[j];
    if (a.is_edge()) {
      if (s.clusters[j].num_users != kNumBs)
        throw Error(ErrorCode::InvalidArgument, "edge clusters need exactly one user per BS");
      EdgePlan e;
      e.cluster = j;
      for (int i = 0; i < kNumBs; ++i) {
        e.B[i] = edge_prebeam(j, i, sets[i], c.nt);
        e.M[i] = e.B[i].M();
      }
      e.candidates = dof_candidates(e.M, c.nr);
      p.edges.push_back(std::move(e));
    } else {
      CenterPlan cp;
      cp.cluster = j;
      cp.bs = a.bs;
      cp.B = scheme == Scheme::De ? edge_prebeam(j, a.bs, sets[a.bs], c.nt)
                                  : center_prebeam(j, a.bs, sets[a.bs], p.assignment, c.nt);
      cp.streams = std::min(cp.B.M(), s.clusters[j].num_users * c.nr);
      p.centers.push_back(std::move(cp));
    }
  }

  if (scheme == Scheme::De) {
    // Exclusive beams everywhere, so one training block is reused by every cluster.
    for (const auto& cp : p.centers) p.tc_len = std::max(p.tc_len, cp.B.M());
  } else {
    Triple mbar{0, 0, 0};
    for (const auto& cp : p.centers) mbar[cp.bs] = std::max(mbar[cp.bs], cp.B.M());
    p.tc_len = mbar[0] + mbar[1] + mbar[2];
  }
  return p;
}

double cluster_overhead(const NetworkStatistics& st, const TransmissionPlan& plan, int cluster,
                        const OverheadParams& o) {
  const int K = st.scenario.clusters.at(cluster).num_users;
  if (plan.scheme == Scheme::UpperBound) {
    // Full-dimension training and feedback from all three arrays.
    const int nt = st.scenario.config.nt;
    return overhead_factor_edge({nt, nt, nt}, K, o);
  }
  if (const EdgePlan* e = plan.edge_for(cluster)) return overhead_factor_edge(e->M, K, o);
  if (const CenterPlan* c = plan.center_for(cluster)) return overhead_factor_center(plan.tc_len, c->B.M(), K, o);
  throw Error(ErrorCode::InvalidArgument, "cluster not in plan");
}

namespace {

bool recoverable(ErrorCode c) {
  return c == ErrorCode::NoConvergence || c == ErrorCode::AlignmentFailed ||
         c == ErrorCode::DegenerateDirectLink;
}

void prepare_upper_bound(const NetworkStatistics& st, const ChannelRealization& h, PreparedTrial& t) {
  const int J = st.num_clusters();
  t.upper_bound_rate.assign(static_cast<std::size_t>(J), 0.0);
  for (int j = 0; j < J; ++j) {
    const Eigen::Index rows = h.H[j][0].rows();
    CMatrix gram = CMatrix::Zero(rows, rows);
    for (int i = 0; i < kNumBs; ++i) gram += h.H[j][i] * h.H[j][i].adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()));
    const int n = static_cast<int>(es.eigenvalues().size());
    for (int s = 0; s < n; ++s) t.problem.edge_gains.push_back(std::max(0.0, es.eigenvalues()(s)) / st.scenario.config.noise_variance);
    t.edge_stream_owner.insert(t.edge_stream_owner.end(), static_cast<std::size_t>(n), j);
    t.streams[j] = n;
  }
}

}  // namespace

PreparedTrial prepare_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                            const ChannelRealization& h) {
  const ScenarioConfig& c = st.scenario.config;
  const int J = st.num_clusters();
  PreparedTrial t;
  t.streams.assign(static_cast<std::size_t>(J), 0);
  if (plan.scheme == Scheme::UpperBound) {
    prepare_upper_bound(st, h, t);
    return t;
  }

  for (const EdgePlan& e : plan.edges) {
    const int j = e.cluster;
    IaChannels hb;
    for (int k = 0; k < kNumBs; ++k)
      for (int i = 0; i < kNumBs; ++i) hb[k][i] = h.H[j][i].middleRows(k * c.nr, c.nr) * e.B[i].B;
    bool done = false;
    for (std::size_t ci = 0; ci < e.candidates.size() && !done; ++ci) {
      try {
        const DofAllocation& S = e.candidates[ci];
        const IaSolution sol = ia_precoders(hb, S);
        std::vector<double> gains;
        for (int k = 0; k < kNumBs; ++k) {
          if (S.S[k] == 0) continue;
          const CMatrix g = effective_edge_channel(sol.U[k], hb[k][k], sol.V[k]);
          Eigen::JacobiSVD<CMatrix> svd(g);
          for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s)
            gains.push_back(svd.singularValues()(s) * svd.singularValues()(s) / c.noise_variance);
        }
        t.max_leakage = std::max(t.max_leakage, sol.leakage);
        t.problem.edge_gains.insert(t.problem.edge_gains.end(), gains.begin(), gains.end());
        t.edge_stream_owner.insert(t.edge_stream_owner.end(), gains.size(), j);
        t.streams[j] = S.total();
        done = true;
      } catch (const Error& err) {
        if (!recoverable(err.code())) throw;
        ++t.ia_fallbacks;
      }
    }
  }

  for (const CenterPlan& cp : plan.centers) {
    const int j = cp.cluster;
    const std::vector<int> rows = served_rows(st.scenario.clusters[j].num_users, c.nr, cp.streams);
    CenterLink link;
    link.noise_variance = c.noise_variance;
    if (cp.streams > 0) {
      const CMatrix hbar = select_rows(h.H[j][cp.bs], rows) * cp.B.B;
      const ZfPrecoder zf = zf_inner(hbar);
      const double residual =
          (hbar * zf.V - zf.zeta * CMatrix::Identity(cp.streams, cp.streams)).norm();
      t.max_zf_residual = std::max(t.max_zf_residual, residual);
      link.zeta = zf.zeta;
      std::vector<CMatrix> interferers;
      for (const CenterPlan& other : plan.centers)
        if (other.bs != cp.bs && other.B.M() > 0)
          interferers.push_back(select_rows(h.H[j][other.bs], rows) * other.B.B);
      const CMatrix sigma = equivalent_noise_cov(cp.streams, interferers, 1.0, 0.0);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
      for (Eigen::Index s = 0; s < es.eigenvalues().size(); ++s)
        link.interference.push_back(std::max(0.0, es.eigenvalues()(s)));
    }
    t.problem.centers.push_back(std::move(link));
    t.center_owner.push_back(j);
    t.streams[j] = cp.streams;
  }
  return t;
}

TrialResult score_trial(const PreparedTrial& prep, const PowerAllocation& power, int num_clusters) {
  TrialResult r;
  r.rate.assign(static_cast<std::size_t>(num_clusters), 0.0);
  r.streams = prep.streams;
  for (std::size_t s = 0; s < prep.edge_stream_owner.size(); ++s)
    r.rate[prep.edge_stream_owner[s]] += std::log2(1.0 + prep.problem.edge_gains[s] * power.edge_powers[s]);
  const std::vector<double> cc = center_capacities(prep.problem, power.p_cent);
  for (std::size_t k = 0; k < cc.size(); ++k) r.rate[prep.center_owner[k]] += cc[k];
  r.power = power;
  r.c_sum = std::accumulate(r.rate.begin(), r.rate.end(), 0.0);
  r.max_leakage = prep.max_leakage;
  r.max_zf_residual = prep.max_zf_residual;
  r.ia_fallbacks = prep.ia_fallbacks;
  r.budget_error = std::abs(power.used_power(prep.problem) - power.total_budget);

  std::ostringstream d;
  if (r.max_leakage > kLeakageLimit) d << "IA leakage " << r.max_leakage << "; ";
  if (r.max_zf_residual > kZfResidualLimit) d << "ZF residual " << r.max_zf_residual << "; ";
  if (r.budget_error > kBudgetLimit * std::max(1.0, power.total_budget))
    d << "power budget off by " << r.budget_error << "; ";
  r.diagnostic = d.str();
  r.ok = r.diagnostic.empty();
  return r;
}

TrialResult run_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                      const ChannelRealization& h, const TrialOptions& opt) {
  return solve_trial(st, plan, prepare_trial(st, plan, h), opt);
}

TrialResult solve_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                        const PreparedTrial& prep, const TrialOptions& opt) {
  const double P = total_power(st.scenario.config, opt.snr_db);
  PowerAllocation power;
  if (plan.scheme == Scheme::UpperBound) {
    // Per-cluster budget P/J, water-filled over that cluster's eigenmodes.
    const int J = st.num_clusters();
    power.total_budget = P;
    power.edge_powers.assign(prep.problem.edge_gains.size(), 0.0);
    for (int j = 0; j < J; ++j) {
      std::vector<double> g;
      std::vector<std::size_t> idx;
      for (std::size_t s = 0; s < prep.edge_stream_owner.size(); ++s)
        if (prep.edge_stream_owner[s] == j) {
          g.push_back(prep.problem.edge_gains[s]);
          idx.push_back(s);
        }
      const std::vector<double> p = waterfill(g, P / J);
      for (std::size_t s = 0; s < idx.size(); ++s) power.edge_powers[idx[s]] = p[s];
    }
  } else if (plan.power == PowerPolicy::GoldenSection) {
    const int nc = prep.problem.center_streams();
    const double eps = opt.golden_eps_rel * (nc > 0 ? P / nc : 1.0);
    power = allocate(prep.problem, P, std::max(eps, 1e-300));
  } else {
    power = equal_power(prep.problem, P);
  }
  return score_trial(prep, power, st.num_clusters());
}

}  // namespace iassr
