#pragma once

#include <array>
#include <vector>

#include "iassr/ia.hpp"
#include "iassr/linalg.hpp"

namespace iassr {

struct EdgeDims {
  int cluster = -1;
  Triple M{0, 0, 0};
};

struct CenterDims {
  int cluster = -1;
  int bs = -1;
  int M = 0;
};

struct EdgeTraining {
  int cluster = -1;
  int length = 0;                 // sum_i M^i
  std::array<CMatrix, kNumBs> T;  // M^i x length, contiguous DFT row blocks
};

struct CenterTraining {
  int cluster = -1;
  int bs = -1;
  CMatrix T;  // M x tc_len, leading rows of the BS block
};

struct TrainingPlan {
  std::vector<EdgeTraining> edge;
  std::vector<CenterTraining> center;
  Triple center_max{0, 0, 0};      // per-BS max centre dimension
  int tc_len = 0;                  // sum of center_max
  std::array<CMatrix, kNumBs> Fc;  // per-BS row blocks of the tc_len-point DFT

  const EdgeTraining& edge_for(int cluster) const;
  const CenterTraining& center_for(int cluster) const;
};

// Rows [first, first+count) of the unitary n-point DFT matrix.
CMatrix dft_rows(int n, int first, int count);

// `center_floor` raises the per-BS block sizes (e.g. to reserve room).
TrainingPlan design_training(const std::vector<EdgeDims>& edge, const std::vector<CenterDims>& center,
                             const Triple& center_floor = {0, 0, 0});

// Y T^H.
CMatrix ls_estimate(const CMatrix& Y, const CMatrix& T);
CMatrix ls_estimate_edge(const CMatrix& Y, const TrainingPlan& plan, int cluster, int bs);
CMatrix ls_estimate_center(const CMatrix& Y, const TrainingPlan& plan, int cluster);

// Upsilon = [Y Fc^{i'H}]_{i' != home}; K = sigma^2 I + p_cent (Upsilon Upsilon^H - 2 tc_len sigma^2 I) / rho,
// with the interference part clipped to be PSD.
CMatrix estimate_noise_cov(const CMatrix& Y, const TrainingPlan& plan, int home_bs, double p_cent,
                           double training_power = 1.0, double noise_variance = 1.0);

// Frobenius-squared error per entry.
double mse(const CMatrix& estimate, const CMatrix& truth);

}  // namespace iassr
