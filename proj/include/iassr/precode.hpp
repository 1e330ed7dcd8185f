#pragma once

#include <vector>

#include "iassr/linalg.hpp"
#include "iassr/prebeam.hpp"

namespace iassr {

struct ZfPrecoder {
  CMatrix V;           // M x S, equals zeta * Z
  double zeta = 0.0;
};

inline constexpr double kZfConditionLimit = 1e12;

// Z = Hbar^H (Hbar Hbar^H)^{-1}, zeta = sqrt(S / tr(Z Z^H)).
ZfPrecoder zf_inner(const CMatrix& hbar);

// noise_variance * I + p_cent * sum_l G_l G_l^H, dim x dim.
CMatrix equivalent_noise_cov(int dim, const std::vector<CMatrix>& interference, double p_cent,
                             double noise_variance);

CMatrix compose(const Prebeamformer& B, const CMatrix& V);

// First `streams` rows in user order: contiguous Nr-row blocks.
std::vector<int> served_rows(int num_users, int nr, int streams);
CMatrix select_rows(const CMatrix& m, const std::vector<int>& rows);

}  // namespace iassr
