#include "iassr/power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iassr/errors.hpp"

namespace iassr {

double capacity_edge(const std::vector<double>& lambda, const std::vector<double>& p) {
  if (lambda.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "gains vs powers");
  double c = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) c += std::log2(1.0 + lambda[s] * p[s]);
  return c;
}

double capacity_center(const std::vector<double>& k, double zeta, const std::vector<double>& p) {
  if (k.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "noise vs powers");
  double c = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) c += std::log2(1.0 + zeta * zeta * p[s] / k[s]);
  return c;
}

std::vector<double> waterfill(const std::vector<double>& lambda, double budget) {
  if (budget < 0.0) throw Error(ErrorCode::InvalidArgument, "negative budget");
  std::vector<double> p(lambda.size(), 0.0);
  if (budget == 0.0 || lambda.empty()) return p;
  double max_inv = 0.0;
  bool any = false;
  for (double l : lambda) {
    if (l < 0.0) throw Error(ErrorCode::InvalidArgument, "negative stream gain");
    if (l > 0.0) {
      any = true;
      max_inv = std::max(max_inv, 1.0 / l);
    }
  }
  if (!any) return p;
  auto spent = [&](double nu) {
    double s = 0.0;
    for (double l : lambda)
      if (l > 0.0) s += std::max(0.0, nu - 1.0 / l);
    return s;
  };
  double lo = 0.0, hi = budget + max_inv;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) > budget ? hi : lo) = mid;
  }
  // Exact level on the active set found by bisection.
  std::vector<bool> active(lambda.size());
  for (std::size_t s = 0; s < lambda.size(); ++s)
    active[s] = lambda[s] > 0.0 && hi - 1.0 / lambda[s] > 0.0;
  for (;;) {
    double inv = 0.0;
    int n = 0;
    for (std::size_t s = 0; s < lambda.size(); ++s)
      if (active[s]) {
        inv += 1.0 / lambda[s];
        ++n;
      }
    const double nu = (budget + inv) / n;
    bool changed = false;
    for (std::size_t s = 0; s < lambda.size(); ++s)
      if (active[s] && nu - 1.0 / lambda[s] <= 0.0 && n > 1) {
        active[s] = false;
        changed = true;
      }
    if (changed) continue;
    for (std::size_t s = 0; s < lambda.size(); ++s) p[s] = active[s] ? nu - 1.0 / lambda[s] : 0.0;
    return p;
  }
}

int PowerProblem::center_streams() const {
  int n = 0;
  for (const auto& c : centers) n += c.streams();
  return n;
}

double PowerAllocation::used_power(const PowerProblem& pb) const {
  return p_cent * pb.center_streams() + std::accumulate(edge_powers.begin(), edge_powers.end(), 0.0);
}

std::vector<double> center_capacities(const PowerProblem& pb, double p_cent) {
  std::vector<double> out;
  out.reserve(pb.centers.size());
  for (const auto& c : pb.centers) {
    std::vector<double> k(c.interference.size()), p(c.interference.size(), p_cent);
    for (std::size_t s = 0; s < k.size(); ++s) k[s] = c.noise_variance + p_cent * c.interference[s];
    out.push_back(capacity_center(k, c.zeta, p));
  }
  return out;
}

PowerAllocation evaluate_split(const PowerProblem& pb, double p_total, double p_cent) {
  if (p_total < 0.0 || p_cent < 0.0) throw Error(ErrorCode::InvalidArgument, "negative power");
  const double reserved = p_cent * pb.center_streams();
  if (reserved > p_total * (1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "centre power exceeds budget");
  PowerAllocation a;
  a.p_cent = p_cent;
  a.total_budget = p_total;
  a.edge_powers = waterfill(pb.edge_gains, std::max(0.0, p_total - reserved));
  a.c_edge = capacity_edge(pb.edge_gains, a.edge_powers);
  for (double c : center_capacities(pb, p_cent)) a.c_center += c;
  a.c_sum = a.c_edge + a.c_center;
  a.evaluations = 1;
  return a;
}

PowerAllocation allocate(const PowerProblem& pb, double p_total, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "golden-section tolerance must be positive");
  const int nc = pb.center_streams();
  if (nc == 0 || p_total == 0.0) return evaluate_split(pb, p_total, 0.0);

  double lo = 0.0, hi = p_total / nc;
  int evals = 0;
  PowerAllocation best;
  auto visit = [&](double x) {
    PowerAllocation a = evaluate_split(pb, p_total, std::min(x, p_total / nc));
    const double c = a.c_sum;
    if (++evals == 1 || c > best.c_sum) best = std::move(a);
    return c;
  };
  visit(lo);
  visit(hi);
  while (hi - lo >= eps) {
    const double x1 = lo + 0.382 * (hi - lo), x2 = lo + 0.618 * (hi - lo);
    const double f1 = visit(x1), f2 = visit(x2);
    if (f1 > f2)
      hi = x2;
    else
      lo = x1;
  }
  best.evaluations = evals;
  return best;
}

PowerAllocation equal_power(const PowerProblem& pb, double p_total) {
  const std::size_t n = pb.edge_gains.size() + static_cast<std::size_t>(pb.center_streams());
  PowerAllocation a;
  a.total_budget = p_total;
  if (n == 0) return a;
  const double p = p_total / static_cast<double>(n);
  a.p_cent = pb.center_streams() > 0 ? p : 0.0;
  a.edge_powers.assign(pb.edge_gains.size(), p);
  a.c_edge = capacity_edge(pb.edge_gains, a.edge_powers);
  for (double c : center_capacities(pb, a.p_cent)) a.c_center += c;
  a.c_sum = a.c_edge + a.c_center;
  a.evaluations = 1;
  return a;
}

}  // namespace iassr
