#pragma once

#include <vector>

#include "iassr/channel.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

struct Prebeamformer {
  CMatrix B;                 // Nt x M, distinct DFT beams
  std::vector<int> columns;  // ascending DFT indices
  int bs = -1;
  int cluster = -1;
  int M() const { return static_cast<int>(columns.size()); }
};

Prebeamformer make_prebeamformer(int nt, std::vector<int> columns, int bs, int cluster);

// Beams of `target` that no cluster flagged in `excluded` uses at this BS.
std::vector<int> exclusive_columns(int target, const std::vector<DftIndexSet>& sets_at_bs,
                                   const std::vector<bool>& excluded);

// Excludes every other cluster in the system.
Prebeamformer edge_prebeam(int target, int bs, const std::vector<DftIndexSet>& sets_at_bs, int nt);

// Excludes the clusters in C_bs and E (other than the target); other cells'
// centre clusters may share beams.
Prebeamformer center_prebeam(int target, int bs, const std::vector<DftIndexSet>& sets_at_bs,
                             const std::vector<Assignment>& assignment, int nt);

}  // namespace iassr
