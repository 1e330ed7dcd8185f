#include "iassr/precode.hpp"

#include <cmath>

#include "iassr/errors.hpp"

namespace iassr {

ZfPrecoder zf_inner(const CMatrix& hbar) {
  if (hbar.rows() == 0) return {CMatrix(hbar.cols(), 0), 0.0};
  if (hbar.cols() < hbar.rows())
    throw Error(ErrorCode::ZfSingular, "more streams than effective dimensions");
  if (!(condition_number(hbar) <= kZfConditionLimit))
    throw Error(ErrorCode::ZfSingular, "effective channel is rank deficient");
  const CMatrix gram = hbar * hbar.adjoint();
  const CMatrix z = hbar.adjoint() * gram.llt().solve(CMatrix::Identity(hbar.rows(), hbar.rows()));
  ZfPrecoder p;
  p.zeta = std::sqrt(static_cast<double>(hbar.rows()) / z.squaredNorm());
  p.V = p.zeta * z;
  return p;
}

CMatrix equivalent_noise_cov(int dim, const std::vector<CMatrix>& interference, double p_cent,
                             double noise_variance) {
  if (p_cent < 0.0) throw Error(ErrorCode::InvalidArgument, "negative centre power");
  CMatrix k = noise_variance * CMatrix::Identity(dim, dim);
  for (const CMatrix& g : interference) {
    if (g.rows() != dim) throw Error(ErrorCode::DimensionMismatch, "interference rows");
    if (g.cols() > 0) k.noalias() += p_cent * (g * g.adjoint());
  }
  return 0.5 * (k + k.adjoint());
}

CMatrix compose(const Prebeamformer& B, const CMatrix& V) {
  if (B.B.cols() != V.rows()) throw Error(ErrorCode::DimensionMismatch, "B and V do not compose");
  return B.B * V;
}

std::vector<int> served_rows(int num_users, int nr, int streams) {
  if (streams < 0 || streams > num_users * nr)
    throw Error(ErrorCode::InvalidArgument, "more streams than receive antennas");
  std::vector<int> rows(static_cast<std::size_t>(streams));
  for (int s = 0; s < streams; ++s) rows[static_cast<std::size_t>(s)] = s;
  return rows;
}

CMatrix select_rows(const CMatrix& m, const std::vector<int>& rows) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  return out;
}

}  // namespace iassr
