#pragma once

#include <array>
#include <vector>

#include "iassr/linalg.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

using Triple = std::array<int, kNumBs>;

struct DofAllocation {
  Triple S{0, 0, 0};
  int total() const { return S[0] + S[1] + S[2]; }
  bool operator==(const DofAllocation&) const = default;
};

bool dof_feasible(const Triple& S, const Triple& M, int nr);

// All feasible allocations, best first (sum, then the tie-break order).
std::vector<DofAllocation> dof_candidates(const Triple& M, int nr);

// Maximises S1+S2+S3; ties go to the lexicographically largest S taken in
// order of descending M (stable in BS index).
DofAllocation dof_search(const Triple& M, int nr);

// h[k][i]: Nr x M^i effective channel from BS i to user k (user k is served by BS k).
using IaChannels = std::array<std::array<CMatrix, kNumBs>, kNumBs>;

struct IaOptions {
  double tol = 1e-9;
  int max_iter = 2000;
};

struct IaSolution {
  std::array<CMatrix, kNumBs> V;  // M^i x S^i, orthonormal
  std::array<CMatrix, kNumBs> U;  // Nr x S^k, orthonormal
  double leakage = 0.0;           // max_{k != i} ||U_k^H h[k][i] V_i||_F
  int iterations = 0;
  bool closed_form = false;
};

IaSolution ia_precoders(const IaChannels& h, const DofAllocation& S, const IaOptions& opt = {});

// Orthonormal basis of the left nullspace of `interference` (Nr x n).
// Zero interference gives the leading identity columns.
CMatrix ia_decoder(const CMatrix& interference, int streams, double rel_tol = 1e-6);
std::array<CMatrix, kNumBs> ia_decoders(const std::array<CMatrix, kNumBs>& interference,
                                        const Triple& streams, double rel_tol = 1e-6);

double ia_leakage(const IaChannels& h, const IaSolution& sol);

// U^H Hbar V (S x S); throws when it loses rank.
CMatrix effective_edge_channel(const CMatrix& U, const CMatrix& hbar, const CMatrix& V);

}  // namespace iassr
