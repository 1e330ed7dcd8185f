#pragma once

#include <complex>

#include <Eigen/Dense>

namespace iassr {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Largest |A - A^H| entry.
double hermitian_defect(const CMatrix& a);

// Principal square root of a Hermitian PSD matrix.
CMatrix hermitian_sqrt(const CMatrix& a);

// Orthonormal basis (thin QR) for the column span of `a`.
CMatrix orthonormal_columns(const CMatrix& a);

// Eigenvectors of a Hermitian matrix for the `count` smallest eigenvalues.
CMatrix minor_eigenvectors(const CMatrix& a, int count);

// Eigenvectors for the `count` largest eigenvalues, descending.
CMatrix major_eigenvectors(const CMatrix& a, int count);

double min_singular_value(const CMatrix& a);
double condition_number(const CMatrix& a);

// Project a Hermitian matrix onto {X : X >= floor*I}.
CMatrix clip_eigenvalues(const CMatrix& a, double floor);

}  // namespace iassr
