#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "iassr/channel.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

struct LinkStatistics {
  LinkGeometry geometry;
  double gain = 0.0;  // path gain relative to the reference distance
  DftIndexSet set;    // empty when the cluster is outside the sector
  EigenBasis basis;          // eigenvalues above the configured threshold (rank r)
  EigenBasis channel_basis;  // numerical rank, used to draw channels
  double analytic_rank = 0.0;
};

// Second-order statistics of every (cluster, BS) link.
struct NetworkStatistics {
  Scenario scenario;
  std::vector<std::array<LinkStatistics, kNumBs>> links;  // [cluster][bs]

  int num_clusters() const { return static_cast<int>(links.size()); }
  const LinkStatistics& link(int cluster, int bs) const { return links.at(cluster).at(bs); }
  std::array<std::vector<DftIndexSet>, kNumBs> sets_by_bs() const;
};

// Relative cutoff of the basis used for channel sampling.
inline constexpr double kChannelBasisThreshold = 1e-10;

NetworkStatistics build_statistics(const Scenario& s, Execution exec = Execution::Parallel);

struct ChannelRealization {
  // [cluster][bs]: (K_j Nr) x Nt, user k in rows [k Nr, (k+1) Nr).
  std::vector<std::array<CMatrix, kNumBs>> H;
};

ChannelRealization sample_realization(const NetworkStatistics& st, std::uint64_t trial_seed,
                                      Execution exec = Execution::Parallel);

}  // namespace iassr
