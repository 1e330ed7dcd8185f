#include "iassr/network.hpp"

namespace iassr {

std::array<std::vector<DftIndexSet>, kNumBs> NetworkStatistics::sets_by_bs() const {
  std::array<std::vector<DftIndexSet>, kNumBs> out;
  for (int i = 0; i < kNumBs; ++i)
    for (const auto& l : links) out[i].push_back(l[i].set);
  return out;
}

namespace {

LinkStatistics link_statistics(const Scenario& s, int j, int i) {
  const ScenarioConfig& c = s.config;
  LinkStatistics l;
  l.geometry = link_geometry(c, s.clusters[j], i);
  if (!l.geometry.visible) return l;
  l.gain = relative_path_gain(c, l.geometry.distance);
  l.set = dft_index_set(l.geometry.theta, l.geometry.delta, c.nt, c.spacing_ratio);
  l.analytic_rank = analytic_rank(l.geometry.theta, l.geometry.delta, c.nt, c.spacing_ratio);
  const CMatrix R = correlation_matrix(l.geometry.theta, l.geometry.delta, c.nt, c.spacing_ratio,
                                       Execution::Serial);
  l.channel_basis = eigen_basis(R, kChannelBasisThreshold);
  l.basis = truncate_basis(l.channel_basis, c.eigen_threshold);
  return l;
}

}  // namespace

NetworkStatistics build_statistics(const Scenario& s, Execution exec) {
  s.validate();
  NetworkStatistics st;
  st.scenario = s;
  const int J = static_cast<int>(s.clusters.size());
  st.links.resize(static_cast<std::size_t>(J));
  const int n = J * kNumBs;
  if (exec == Execution::Serial) {
    for (int t = 0; t < n; ++t) st.links[t / kNumBs][t % kNumBs] = link_statistics(s, t / kNumBs, t % kNumBs);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n; ++t) st.links[t / kNumBs][t % kNumBs] = link_statistics(s, t / kNumBs, t % kNumBs);
  }
  return st;
}

ChannelRealization sample_realization(const NetworkStatistics& st, std::uint64_t trial_seed,
                                      Execution exec) {
  const ScenarioConfig& c = st.scenario.config;
  const CMatrix phi = exponential_correlation(c.nr, c.ue_correlation);
  const int J = st.num_clusters();
  ChannelRealization r;
  r.H.resize(static_cast<std::size_t>(J));
  auto fill = [&](int t) {
    const int j = t / kNumBs, i = t % kNumBs;
    const int K = st.scenario.clusters[j].num_users;
    CMatrix h = CMatrix::Zero(K * c.nr, c.nt);
    const LinkStatistics& l = st.link(j, i);
    if (l.geometry.visible)
      for (int k = 0; k < K; ++k)
        h.middleRows(k * c.nr, c.nr) = sample_channel(l.channel_basis, l.gain, phi, c.nr,
                                                      mix_seed(trial_seed, j, k, i));
    r.H[j][i] = std::move(h);
  };
  const int n = J * kNumBs;
  if (exec == Execution::Serial) {
    for (int t = 0; t < n; ++t) fill(t);
  } else {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < n; ++t) fill(t);
  }
  return r;
}

}  // namespace iassr
