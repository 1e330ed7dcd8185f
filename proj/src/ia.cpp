#include "iassr/ia.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iassr/errors.hpp"

namespace iassr {

bool dof_feasible(const Triple& S, const Triple& M, int nr) {
  for (int i = 0; i < kNumBs; ++i)
    if (S[i] < 0 || S[i] > std::min(M[i], nr)) return false;
  long lhs = 0;
  for (int i = 0; i < kNumBs; ++i) lhs += static_cast<long>(S[i]) * (M[i] + nr - 2 * S[i]);
  const long rhs = static_cast<long>(S[0]) * S[1] + static_cast<long>(S[1]) * S[2] +
                   static_cast<long>(S[0]) * S[2];
  if (lhs < rhs) return false;
  for (int i = 0; i < kNumBs; ++i)
    for (int k = i + 1; k < kNumBs; ++k) {
      const int cap = std::min({M[i] + M[k], 2 * nr, std::max(M[i], nr), std::max(M[k], nr)});
      if (S[i] + S[k] > cap) return false;
    }
  return true;
}

namespace {

std::array<int, kNumBs> m_order(const Triple& M) {
  std::array<int, kNumBs> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return M[a] > M[b]; });
  return order;
}

}  // namespace

std::vector<DofAllocation> dof_candidates(const Triple& M, int nr) {
  if (nr < 1) throw Error(ErrorCode::InvalidArgument, "Nr must be >= 1");
  for (int m : M)
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "M must be >= 0");
  std::vector<DofAllocation> out;
  Triple s{};
  for (s[0] = 0; s[0] <= std::min(M[0], nr); ++s[0])
    for (s[1] = 0; s[1] <= std::min(M[1], nr); ++s[1])
      for (s[2] = 0; s[2] <= std::min(M[2], nr); ++s[2])
        if (dof_feasible(s, M, nr)) out.push_back({s});
  const auto order = m_order(M);
  auto key = [&](const DofAllocation& a) {
    return std::array<int, 4>{a.total(), a.S[order[0]], a.S[order[1]], a.S[order[2]]};
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const DofAllocation& a, const DofAllocation& b) { return key(a) > key(b); });
  return out;
}

DofAllocation dof_search(const Triple& M, int nr) { return dof_candidates(M, nr).front(); }

CMatrix ia_decoder(const CMatrix& interference, int streams, double rel_tol) {
  const Eigen::Index nr = interference.rows();
  if (streams < 0 || streams > nr) throw Error(ErrorCode::InvalidArgument, "decoder stream count");
  if (streams == 0) return CMatrix(nr, 0);
  const double scale = interference.size() ? interference.norm() : 0.0;
  if (scale == 0.0) return CMatrix::Identity(nr, streams);
  const CMatrix q = interference * interference.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (q + q.adjoint()));
  const double tail = es.eigenvalues().head(streams).cwiseMax(0.0).sum();
  if (std::sqrt(tail) > rel_tol * scale)
    throw Error(ErrorCode::AlignmentFailed, "interference leaves no room for the requested streams");
  return es.eigenvectors().leftCols(streams);
}

std::array<CMatrix, kNumBs> ia_decoders(const std::array<CMatrix, kNumBs>& interference,
                                        const Triple& streams, double rel_tol) {
  std::array<CMatrix, kNumBs> u;
  for (int k = 0; k < kNumBs; ++k) u[k] = ia_decoder(interference[k], streams[k], rel_tol);
  return u;
}

double ia_leakage(const IaChannels& h, const IaSolution& sol) {
  double worst = 0.0;
  for (int k = 0; k < kNumBs; ++k)
    for (int i = 0; i < kNumBs; ++i) {
      if (i == k || sol.U[k].cols() == 0 || sol.V[i].cols() == 0) continue;
      worst = std::max(worst, (sol.U[k].adjoint() * h[k][i] * sol.V[i]).norm());
    }
  return worst;
}

CMatrix effective_edge_channel(const CMatrix& U, const CMatrix& hbar, const CMatrix& V) {
  if (U.rows() != hbar.rows() || hbar.cols() != V.rows() || U.cols() != V.cols())
    throw Error(ErrorCode::DimensionMismatch, "effective edge channel");
  CMatrix g = U.adjoint() * hbar * V;
  if (g.size() == 0) return g;
  Eigen::JacobiSVD<CMatrix> svd(g);
  const RVector& s = svd.singularValues();
  const double ref = std::max(hbar.norm(), std::numeric_limits<double>::min());
  if (s(s.size() - 1) <= 1e-12 * ref)
    throw Error(ErrorCode::DegenerateDirectLink, "direct effective channel is rank deficient");
  return g;
}

namespace {

std::array<CMatrix, kNumBs> interference_at_users(const IaChannels& h,
                                                  const std::array<CMatrix, kNumBs>& V) {
  std::array<CMatrix, kNumBs> out;
  for (int k = 0; k < kNumBs; ++k) {
    const Eigen::Index nr = h[k][k].rows();
    Eigen::Index cols = 0;
    for (int i = 0; i < kNumBs; ++i)
      if (i != k) cols += V[i].cols();
    out[k].resize(nr, cols);
    Eigen::Index c = 0;
    for (int i = 0; i < kNumBs; ++i) {
      if (i == k || V[i].cols() == 0) continue;
      out[k].middleCols(c, V[i].cols()) = h[k][i] * V[i];
      c += V[i].cols();
    }
  }
  return out;
}

bool closed_form_case(const IaChannels& h, const Triple& S) {
  const int d = S[0];
  if (d < 1 || S[1] != d || S[2] != d) return false;
  for (int k = 0; k < kNumBs; ++k)
    for (int i = 0; i < kNumBs; ++i)
      if (h[k][i].rows() != 2 * d || h[k][i].cols() != 2 * d) return false;
  return true;
}

// Chained eigenvector construction for M = Nr = 2S. Returns false when a
// needed inverse is ill conditioned.
bool solve_closed_form(const IaChannels& h, int d, std::array<CMatrix, kNumBs>& V) {
  for (const auto& [k, i] : {std::pair{1, 2}, {2, 0}, {0, 1}, {1, 0}})
    if (condition_number(h[k][i]) > 1e10) return false;
  auto solve = [](const CMatrix& a, const CMatrix& b) { return CMatrix(a.partialPivLu().solve(b)); };
  // User 0: h02 V2 ~ h01 V1; user 1: h12 V2 ~ h10 V0; user 2: h21 V1 ~ h20 V0.
  const CMatrix t1 = solve(h[0][1], h[0][2]);  // V1 = t1 V2
  const CMatrix t0 = solve(h[1][0], h[1][2]);  // V0 = t0 V2
  const CMatrix a = solve(h[2][0] * t0, h[2][1] * t1);
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) return false;
  std::vector<int> idx(static_cast<std::size_t>(a.rows()));
  std::iota(idx.begin(), idx.end(), 0);
  const CVector& ev = es.eigenvalues();
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    if (std::abs(ev(x)) != std::abs(ev(y))) return std::abs(ev(x)) > std::abs(ev(y));
    return std::arg(ev(x)) > std::arg(ev(y));
  });
  CMatrix v2(a.rows(), d);
  for (int c = 0; c < d; ++c) v2.col(c) = es.eigenvectors().col(idx[static_cast<std::size_t>(c)]);
  V[2] = orthonormal_columns(v2);
  V[1] = orthonormal_columns(t1 * V[2]);
  V[0] = orthonormal_columns(t0 * V[2]);
  return true;
}

void iterate_min_leakage(const IaChannels& h, const Triple& S, const IaOptions& opt,
                         IaSolution& sol) {
  for (int i = 0; i < kNumBs; ++i) {
    const CMatrix& d = h[i][i];
    if (S[i] == 0) {
      sol.V[i] = CMatrix(d.cols(), 0);
      continue;
    }
    Eigen::JacobiSVD<CMatrix> svd(d, Eigen::ComputeFullV);
    sol.V[i] = svd.matrixV().leftCols(S[i]);
  }
  for (int it = 1; it <= opt.max_iter; ++it) {
    for (int k = 0; k < kNumBs; ++k) {
      const Eigen::Index nr = h[k][k].rows();
      CMatrix q = CMatrix::Zero(nr, nr);
      for (int i = 0; i < kNumBs; ++i)
        if (i != k && S[i] > 0) q += h[k][i] * sol.V[i] * sol.V[i].adjoint() * h[k][i].adjoint();
      sol.U[k] = q.norm() == 0.0 ? CMatrix(CMatrix::Identity(nr, S[k])) : minor_eigenvectors(q, S[k]);
    }
    for (int i = 0; i < kNumBs; ++i) {
      if (S[i] == 0) continue;
      const Eigen::Index m = h[i][i].cols();
      CMatrix q = CMatrix::Zero(m, m);
      for (int k = 0; k < kNumBs; ++k)
        if (k != i && S[k] > 0) q += h[k][i].adjoint() * sol.U[k] * sol.U[k].adjoint() * h[k][i];
      if (q.norm() > 0.0) sol.V[i] = minor_eigenvectors(q, S[i]);
    }
    sol.iterations = it;
    sol.leakage = ia_leakage(h, sol);
    if (sol.leakage <= opt.tol) return;
  }
}

}  // namespace

IaSolution ia_precoders(const IaChannels& h, const DofAllocation& alloc, const IaOptions& opt) {
  const int nr = static_cast<int>(h[0][0].rows());
  Triple M{};
  for (int i = 0; i < kNumBs; ++i) M[i] = static_cast<int>(h[i][i].cols());
  for (int k = 0; k < kNumBs; ++k)
    for (int i = 0; i < kNumBs; ++i)
      if (h[k][i].rows() != nr || h[k][i].cols() != M[i])
        throw Error(ErrorCode::DimensionMismatch, "IA channel shapes");
  const Triple& S = alloc.S;
  if (!dof_feasible(S, M, nr)) throw Error(ErrorCode::InfeasibleAllocation, "stream triple violates DoF limits");
  if (!(opt.tol > 0.0) || opt.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "IA options");

  IaSolution sol;
  if (closed_form_case(h, S) && solve_closed_form(h, S[0], sol.V)) {
    sol.U = ia_decoders(interference_at_users(h, sol.V), S, 1e-6);
    sol.leakage = ia_leakage(h, sol);
    sol.closed_form = true;
    if (sol.leakage <= opt.tol) return sol;
    sol = IaSolution{};
  }
  iterate_min_leakage(h, S, opt, sol);
  if (sol.leakage > opt.tol)
    throw Error(ErrorCode::NoConvergence,
                "leakage " + std::to_string(sol.leakage) + " after " + std::to_string(sol.iterations) + " iterations");
  return sol;
}

}  // namespace iassr
