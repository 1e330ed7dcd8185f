#include "iassr/prebeam.hpp"

#include <algorithm>

#include "iassr/errors.hpp"

namespace iassr {

Prebeamformer make_prebeamformer(int nt, std::vector<int> columns, int bs, int cluster) {
  std::sort(columns.begin(), columns.end());
  if (std::adjacent_find(columns.begin(), columns.end()) != columns.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate DFT column");
  Prebeamformer p;
  p.B = dft_beams(nt, columns);
  p.columns = std::move(columns);
  p.bs = bs;
  p.cluster = cluster;
  return p;
}

std::vector<int> exclusive_columns(int target, const std::vector<DftIndexSet>& sets_at_bs,
                                   const std::vector<bool>& excluded) {
  if (target < 0 || target >= static_cast<int>(sets_at_bs.size()) ||
      excluded.size() != sets_at_bs.size())
    throw Error(ErrorCode::InvalidArgument, "prebeam target or exclusion mask");
  std::vector<int> out;
  for (int n : sets_at_bs[target].indices) {
    bool taken = false;
    for (std::size_t j = 0; j < sets_at_bs.size() && !taken; ++j) {
      if (static_cast<int>(j) == target || !excluded[j]) continue;
      const auto& v = sets_at_bs[j].indices;
      taken = std::binary_search(v.begin(), v.end(), n);
    }
    if (!taken) out.push_back(n);
  }
  return out;
}

Prebeamformer edge_prebeam(int target, int bs, const std::vector<DftIndexSet>& sets_at_bs, int nt) {
  std::vector<bool> all(sets_at_bs.size(), true);
  return make_prebeamformer(nt, exclusive_columns(target, sets_at_bs, all), bs, target);
}

Prebeamformer center_prebeam(int target, int bs, const std::vector<DftIndexSet>& sets_at_bs,
                             const std::vector<Assignment>& assignment, int nt) {
  if (assignment.size() != sets_at_bs.size())
    throw Error(ErrorCode::DimensionMismatch, "assignment / index-set count");
  std::vector<bool> mask(sets_at_bs.size());
  for (std::size_t j = 0; j < mask.size(); ++j)
    mask[j] = assignment[j].is_edge() || assignment[j].bs == bs;
  return make_prebeamformer(nt, exclusive_columns(target, sets_at_bs, mask), bs, target);
}

}  // namespace iassr
