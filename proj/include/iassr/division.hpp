#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "iassr/channel.hpp"
#include "iassr/ia.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

struct OverheadParams {
  int T = 250;       // coherence block, symbols
  double F = 4.0;    // feedback bits per symbol
  int Q = 16;        // bits per fed-back coefficient
  int nr = 2;
};

// 1 - tc_len/T - M K Nr Q / (F T), floored at 0.
double overhead_factor_center(int tc_len, int M, int K, const OverheadParams& o);
// 1 - sum(M)/T - sum(M) K Nr Q / (F T), floored at 0.
double overhead_factor_edge(const Triple& M, int K, const OverheadParams& o);

bool ia_efficient(const DofAllocation& S, const Triple& M);
double effective_rate(double alpha, double capacity);

struct ClusterOptions {
  DofAllocation s_edge;
  double alpha_edge = 1.0;
  Triple m_center{0, 0, 0};
  std::array<double, kNumBs> alpha_center{1.0, 1.0, 1.0};
  bool edge_allowed = true;
};

// Edge iff alpha_e * sum(S) > max_i alpha_c,i * M^i; else centre of the argmax (lowest BS on ties).
Assignment decide_by_dof(const ClusterOptions& c);
Assignment decide_by_capacity(double c_edge, const std::array<double, kNumBs>& c_center,
                              bool edge_allowed = true);

struct DivisionInput {
  std::array<std::vector<DftIndexSet>, kNumBs> sets;  // [bs][cluster]
  std::vector<int> num_users;
  int nt = 128;
  int nr = 2;
  std::optional<OverheadParams> overhead;  // empty: alpha = 1
};

struct DivisionTrace {
  std::vector<Triple> m_edge;
  std::vector<DofAllocation> s_edge;
  std::vector<Triple> m_center;  // final pass, cluster provisionally in C_i
};

// Ascending-id pass with prebeam-rule M, then one refinement pass using the
// beam-reuse M under the assignments of the first pass.
std::vector<Assignment> divide_clusters(const DivisionInput& in, DivisionTrace* trace = nullptr);

std::vector<Assignment> divide_clusters_by_capacity(
    int num_clusters, const std::vector<bool>& edge_allowed,
    const std::function<double(int)>& c_edge,
    const std::function<std::array<double, kNumBs>(int)>& c_center);

}  // namespace iassr
