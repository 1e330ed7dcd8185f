#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iassr/division.hpp"
#include "iassr/ia.hpp"
#include "iassr/network.hpp"
#include "iassr/power.hpp"
#include "iassr/prebeam.hpp"

namespace iassr {

enum class Scheme {
  IaSsr,        // IA for edge clusters, beam reuse for centres, golden-section power split
  EqualPower,   // IA-SSR plan with a uniform per-stream power
  De,           // nearest BS only, exclusive beams, ZF, uniform power
  PureIa,       // every cluster handled as an edge cluster
  PureJsdm,     // every cluster a centre cluster of its nearest BS, uniform power
  UpperBound,   // joint three-BS transmission without interference, per-cluster budget
};

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct EdgePlan {
  int cluster = -1;
  Triple M{0, 0, 0};
  std::array<Prebeamformer, kNumBs> B;
  std::vector<DofAllocation> candidates;  // best first; later entries are fallbacks
};

struct CenterPlan {
  int cluster = -1;
  int bs = -1;
  Prebeamformer B;
  int streams = 0;  // min(M, K Nr)
};

enum class PowerPolicy { GoldenSection, Equal };

struct TransmissionPlan {
  Scheme scheme = Scheme::IaSsr;
  std::vector<Assignment> assignment;
  std::vector<EdgePlan> edges;
  std::vector<CenterPlan> centers;
  PowerPolicy power = PowerPolicy::GoldenSection;
  int tc_len = 0;  // centre training length

  const CenterPlan* center_for(int cluster) const;
  const EdgePlan* edge_for(int cluster) const;
};

struct PlanOptions {
  std::optional<OverheadParams> division_overhead;  // weight the division by overhead at this T
  std::optional<std::vector<Assignment>> assignment;  // skip the division entirely
};

std::vector<Assignment> nearest_bs_assignment(const Scenario& s);

TransmissionPlan plan_transmission(const NetworkStatistics& st, Scheme scheme,
                                   const PlanOptions& opt = {});

// Overhead factor charged to `cluster` under `plan`.
double cluster_overhead(const NetworkStatistics& st, const TransmissionPlan& plan, int cluster,
                        const OverheadParams& o);

// Linear P_total for an SNR defined at the reference distance.
double total_power(const ScenarioConfig& c, double snr_db);

struct PreparedTrial {
  PowerProblem problem;
  std::vector<int> edge_stream_owner;  // cluster of every edge stream
  std::vector<int> center_owner;       // cluster of every centre link
  std::vector<int> streams;            // per cluster
  double max_leakage = 0.0;
  double max_zf_residual = 0.0;
  int ia_fallbacks = 0;
  std::vector<double> upper_bound_rate;  // UpperBound scheme only
};

PreparedTrial prepare_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                            const ChannelRealization& h);

struct TrialOptions {
  double snr_db = 20.0;
  double golden_eps_rel = 1e-6;  // bracket tolerance relative to P/N_c
};

struct TrialResult {
  std::vector<double> rate;  // per cluster, bits/s/Hz
  std::vector<int> streams;
  PowerAllocation power;
  double c_sum = 0.0;
  double max_leakage = 0.0;
  double max_zf_residual = 0.0;
  double budget_error = 0.0;
  int ia_fallbacks = 0;
  bool ok = true;
  std::string diagnostic;
};

TrialResult score_trial(const PreparedTrial& prep, const PowerAllocation& power, int num_clusters);

TrialResult run_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                      const ChannelRealization& h, const TrialOptions& opt);

// Power allocation and scoring of an already prepared trial.
TrialResult solve_trial(const NetworkStatistics& st, const TransmissionPlan& plan,
                        const PreparedTrial& prep, const TrialOptions& opt);

inline constexpr double kLeakageLimit = 1e-8;
inline constexpr double kZfResidualLimit = 1e-9;
inline constexpr double kBudgetLimit = 1e-9;

}  // namespace iassr
