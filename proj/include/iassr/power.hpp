#pragma once

#include <vector>

namespace iassr {

double capacity_edge(const std::vector<double>& lambda, const std::vector<double>& p);
double capacity_center(const std::vector<double>& k, double zeta, const std::vector<double>& p);

// p_s = max(0, nu - 1/lambda_s) with sum p = budget.
std::vector<double> waterfill(const std::vector<double>& lambda, double budget);

// Centre link seen by the power search: S streams with per-stream noise
// eigenvalues k_s(p) = noise_variance + p * interference[s].
struct CenterLink {
  double zeta = 0.0;
  std::vector<double> interference;  // eigenvalues of the interference covariance, one per stream
  double noise_variance = 1.0;
  int streams() const { return static_cast<int>(interference.size()); }
};

struct PowerProblem {
  std::vector<double> edge_gains;  // lambda_s / noise_variance for every edge stream
  std::vector<CenterLink> centers;
  int center_streams() const;
};

struct PowerAllocation {
  double p_cent = 0.0;
  std::vector<double> edge_powers;
  double total_budget = 0.0;
  double c_sum = 0.0;
  double c_center = 0.0;
  double c_edge = 0.0;
  int evaluations = 0;

  double used_power(const PowerProblem& pb) const;
};

// Fixed centre power; edges water-fill the remaining budget.
PowerAllocation evaluate_split(const PowerProblem& pb, double p_total, double p_cent);

// Golden-section search over p_cent in [0, P/N_c]; returns the best point visited.
PowerAllocation allocate(const PowerProblem& pb, double p_total, double eps);

// Uniform P/N over every stream.
PowerAllocation equal_power(const PowerProblem& pb, double p_total);

std::vector<double> center_capacities(const PowerProblem& pb, double p_cent);

}  // namespace iassr
