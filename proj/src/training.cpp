#include "iassr/training.hpp"

#include <algorithm>
#include <cmath>

#include "iassr/errors.hpp"

namespace iassr {

CMatrix dft_rows(int n, int first, int count) {
  if (n < 0 || first < 0 || count < 0 || first + count > n)
    throw Error(ErrorCode::InvalidArgument, "DFT row range");
  CMatrix f(count, n);
  if (n == 0) return f;
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < count; ++r)
    for (int c = 0; c < n; ++c) {
      const long k = (static_cast<long>(first + r) * c) % n;
      f(r, c) = std::polar(s, -2.0 * kPi * static_cast<double>(k) / n);
    }
  return f;
}

const EdgeTraining& TrainingPlan::edge_for(int cluster) const {
  for (const auto& e : edge)
    if (e.cluster == cluster) return e;
  throw Error(ErrorCode::InvalidArgument, "no edge training for cluster " + std::to_string(cluster));
}

const CenterTraining& TrainingPlan::center_for(int cluster) const {
  for (const auto& c : center)
    if (c.cluster == cluster) return c;
  throw Error(ErrorCode::InvalidArgument, "no centre training for cluster " + std::to_string(cluster));
}

TrainingPlan design_training(const std::vector<EdgeDims>& edge, const std::vector<CenterDims>& center,
                             const Triple& center_floor) {
  TrainingPlan plan;
  for (const auto& e : edge) {
    EdgeTraining t;
    t.cluster = e.cluster;
    for (int m : e.M)
      if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative training dimension");
    t.length = e.M[0] + e.M[1] + e.M[2];
    int offset = 0;
    for (int i = 0; i < kNumBs; ++i) {
      t.T[i] = dft_rows(t.length, offset, e.M[i]);
      offset += e.M[i];
    }
    plan.edge.push_back(std::move(t));
  }

  plan.center_max = center_floor;
  for (const auto& c : center) {
    if (c.bs < 0 || c.bs >= kNumBs || c.M < 0) throw Error(ErrorCode::InvalidArgument, "centre training dims");
    plan.center_max[c.bs] = std::max(plan.center_max[c.bs], c.M);
  }
  plan.tc_len = plan.center_max[0] + plan.center_max[1] + plan.center_max[2];
  int offset = 0;
  for (int i = 0; i < kNumBs; ++i) {
    plan.Fc[i] = dft_rows(plan.tc_len, offset, plan.center_max[i]);
    offset += plan.center_max[i];
  }
  for (const auto& c : center)
    plan.center.push_back({c.cluster, c.bs, CMatrix(plan.Fc[c.bs].topRows(c.M))});
  return plan;
}

CMatrix ls_estimate(const CMatrix& Y, const CMatrix& T) {
  if (Y.cols() != T.cols()) throw Error(ErrorCode::DimensionMismatch, "Y and training length differ");
  return Y * T.adjoint();
}

CMatrix ls_estimate_edge(const CMatrix& Y, const TrainingPlan& plan, int cluster, int bs) {
  if (bs < 0 || bs >= kNumBs) throw Error(ErrorCode::InvalidArgument, "bs index");
  return ls_estimate(Y, plan.edge_for(cluster).T[bs]);
}

CMatrix ls_estimate_center(const CMatrix& Y, const TrainingPlan& plan, int cluster) {
  return ls_estimate(Y, plan.center_for(cluster).T);
}

CMatrix estimate_noise_cov(const CMatrix& Y, const TrainingPlan& plan, int home_bs, double p_cent,
                           double training_power, double noise_variance) {
  if (Y.cols() != plan.tc_len) throw Error(ErrorCode::DimensionMismatch, "Y is not a centre-phase block");
  if (!(training_power > 0.0)) throw Error(ErrorCode::InvalidArgument, "training power");
  const Eigen::Index n = Y.rows();
  const CMatrix eye = CMatrix::Identity(n, n);
  if (p_cent == 0.0) return noise_variance * eye;
  CMatrix gram = CMatrix::Zero(n, n);
  for (int i = 0; i < kNumBs; ++i) {
    if (i == home_bs || plan.Fc[i].rows() == 0) continue;
    const CMatrix u = Y * plan.Fc[i].adjoint();
    gram += u * u.adjoint();
  }
  const CMatrix sigma = (gram - 2.0 * plan.tc_len * noise_variance * eye) / training_power;
  return noise_variance * eye + p_cent * clip_eigenvalues(sigma, 0.0);
}

double mse(const CMatrix& estimate, const CMatrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw Error(ErrorCode::DimensionMismatch, "mse shapes");
  if (truth.size() == 0) return 0.0;
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

}  // namespace iassr
