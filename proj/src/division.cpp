#include "iassr/division.hpp"

#include <algorithm>

#include "iassr/errors.hpp"
#include "iassr/prebeam.hpp"

namespace iassr {

namespace {

double feedback_fraction(int coefficients, int K, const OverheadParams& o) {
  return static_cast<double>(coefficients) * K * o.nr * o.Q / (o.F * o.T);
}

void check(const OverheadParams& o) {
  if (o.T < 1 || !(o.F > 0.0)) throw Error(ErrorCode::InvalidArgument, "overhead parameters");
}

}  // namespace

double overhead_factor_center(int tc_len, int M, int K, const OverheadParams& o) {
  check(o);
  return std::max(0.0, 1.0 - static_cast<double>(tc_len) / o.T - feedback_fraction(M, K, o));
}

double overhead_factor_edge(const Triple& M, int K, const OverheadParams& o) {
  check(o);
  const int sum = M[0] + M[1] + M[2];
  return std::max(0.0, 1.0 - static_cast<double>(sum) / o.T - feedback_fraction(sum, K, o));
}

bool ia_efficient(const DofAllocation& S, const Triple& M) {
  return S.total() > *std::max_element(M.begin(), M.end());
}

double effective_rate(double alpha, double capacity) { return alpha * capacity; }

Assignment decide_by_dof(const ClusterOptions& c) {
  int best = 0;
  double best_v = c.alpha_center[0] * c.m_center[0];
  for (int i = 1; i < kNumBs; ++i) {
    const double v = c.alpha_center[i] * c.m_center[i];
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (c.edge_allowed && c.alpha_edge * c.s_edge.total() > best_v) return Assignment::edge();
  return Assignment::center(best);
}

Assignment decide_by_capacity(double c_edge, const std::array<double, kNumBs>& c_center,
                              bool edge_allowed) {
  const int best = static_cast<int>(std::max_element(c_center.begin(), c_center.end()) - c_center.begin());
  if (edge_allowed && c_edge > c_center[best]) return Assignment::edge();
  return Assignment::center(best);
}

namespace {

struct Divider {
  const DivisionInput& in;
  int J;

  int edge_m(int j, int i) const { return static_cast<int>(exclusive_columns(j, in.sets[i], std::vector<bool>(J, true)).size()); }

  int center_m(int j, int i, const std::vector<Assignment>& a) const {
    std::vector<bool> mask(J);
    for (int k = 0; k < J; ++k) mask[k] = a[k].is_edge() || a[k].bs == i;
    return static_cast<int>(exclusive_columns(j, in.sets[i], mask).size());
  }

  // Per-BS max centre dimension with cluster j provisionally assigned.
  int tc_len(const std::vector<Assignment>& a, const std::vector<bool>& decided, bool reuse_rule) const {
    Triple mbar{0, 0, 0};
    for (int k = 0; k < J; ++k) {
      if (!decided[k] || a[k].is_edge()) continue;
      const int b = a[k].bs;
      mbar[b] = std::max(mbar[b], reuse_rule ? center_m(k, b, a) : edge_m(k, b));
    }
    return mbar[0] + mbar[1] + mbar[2];
  }

  Assignment decide(int j, std::vector<Assignment>& a, std::vector<bool>& decided, bool reuse_rule,
                    Triple& m_edge, DofAllocation& s, Triple& m_center) const {
    for (int i = 0; i < kNumBs; ++i) m_edge[i] = edge_m(j, i);
    s = dof_search(m_edge, in.nr);
    ClusterOptions opt;
    opt.s_edge = s;
    opt.edge_allowed = in.num_users[j] == kNumBs;
    const Assignment keep = a[j];
    const bool was = decided[j];
    decided[j] = true;
    for (int i = 0; i < kNumBs; ++i) {
      a[j] = Assignment::center(i);
      m_center[i] = reuse_rule ? center_m(j, i, a) : m_edge[i];
      if (in.overhead) opt.alpha_center[i] = overhead_factor_center(tc_len(a, decided, reuse_rule), m_center[i], in.num_users[j], *in.overhead);
    }
    a[j] = keep;
    decided[j] = was;
    opt.m_center = m_center;
    if (in.overhead) opt.alpha_edge = overhead_factor_edge(m_edge, in.num_users[j], *in.overhead);
    return decide_by_dof(opt);
  }
};

}  // namespace

std::vector<Assignment> divide_clusters(const DivisionInput& in, DivisionTrace* trace) {
  const int J = static_cast<int>(in.num_users.size());
  for (const auto& s : in.sets)
    if (static_cast<int>(s.size()) != J) throw Error(ErrorCode::DimensionMismatch, "index sets per BS");
  Divider d{in, J};
  std::vector<Assignment> a(static_cast<std::size_t>(J), Assignment::edge());
  std::vector<bool> decided(static_cast<std::size_t>(J), false);
  DivisionTrace t;
  t.m_edge.resize(J);
  t.s_edge.resize(J);
  t.m_center.resize(J);
  for (int j = 0; j < J; ++j) {
    a[j] = d.decide(j, a, decided, false, t.m_edge[j], t.s_edge[j], t.m_center[j]);
    decided[j] = true;
  }
  for (int j = 0; j < J; ++j) a[j] = d.decide(j, a, decided, true, t.m_edge[j], t.s_edge[j], t.m_center[j]);
  if (trace) *trace = std::move(t);
  return a;
}

std::vector<Assignment> divide_clusters_by_capacity(
    int num_clusters, const std::vector<bool>& edge_allowed,
    const std::function<double(int)>& c_edge,
    const std::function<std::array<double, kNumBs>(int)>& c_center) {
  std::vector<Assignment> a;
  for (int j = 0; j < num_clusters; ++j)
    a.push_back(decide_by_capacity(c_edge(j), c_center(j), edge_allowed.at(static_cast<std::size_t>(j))));
  return a;
}

}  // namespace iassr
