#include "iassr/linalg.hpp"

#include <algorithm>

#include "iassr/errors.hpp"

namespace iassr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Geometry: return "geometry";
    case ErrorCode::DegenerateSpread: return "degenerate spread";
    case ErrorCode::NotHermitian: return "not hermitian";
    case ErrorCode::InfeasibleAllocation: return "infeasible allocation";
    case ErrorCode::NoConvergence: return "no convergence";
    case ErrorCode::AlignmentFailed: return "alignment failed";
    case ErrorCode::DegenerateDirectLink: return "degenerate direct link";
    case ErrorCode::ZfSingular: return "ZF singular";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "error";
}

double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix not square");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_sqrt(const CMatrix& a) {
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  RVector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix orthonormal_columns(const CMatrix& a) {
  if (a.cols() == 0) return a;
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(a.rows(), a.cols());
}

CMatrix minor_eigenvectors(const CMatrix& a, int count) {
  if (count < 0 || count > a.rows()) throw Error(ErrorCode::InvalidArgument, "eigenvector count");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  return es.eigenvectors().leftCols(count);
}

CMatrix major_eigenvectors(const CMatrix& a, int count) {
  if (count < 0 || count > a.rows()) throw Error(ErrorCode::InvalidArgument, "eigenvector count");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  return es.eigenvectors().rightCols(count).rowwise().reverse();
}

double min_singular_value(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double condition_number(const CMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const RVector& s = svd.singularValues();
  double lo = s(s.size() - 1);
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

CMatrix clip_eigenvalues(const CMatrix& a, double floor) {
  if (a.size() == 0) return a;
  CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector d = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace iassr
