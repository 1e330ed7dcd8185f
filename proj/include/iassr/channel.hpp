#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "iassr/linalg.hpp"

namespace iassr {

enum class Execution { Serial, Parallel };

// One-ring BS-side correlation, Nt x Nt Hermitian Toeplitz with unit diagonal.
CMatrix correlation_matrix(double theta, double delta, int nt, double spacing_ratio,
                           Execution exec = Execution::Parallel);

// First column of the Toeplitz matrix: c[m] = R[m, 0].
CVector correlation_lags(double theta, double delta, int nt, double spacing_ratio,
                         Execution exec = Execution::Parallel);

CMatrix toeplitz_hermitian(const CVector& first_column);

struct EigenBasis {
  CMatrix E;       // Nt x r, orthonormal columns
  RVector lambda;  // r eigenvalues, descending
  int rank() const { return static_cast<int>(lambda.size()); }
};

// Keeps eigenvalues >= threshold * lambda_max.
EigenBasis eigen_basis(const CMatrix& R, double threshold);
// Leading part of `b` with eigenvalues >= threshold * lambda_max.
EigenBasis truncate_basis(const EigenBasis& b, double threshold);

struct DftIndexSet {
  std::vector<int> indices;  // ascending, in [0, Nt)
  bool clamped = false;      // interval spilled outside [0, Nt)
  int size() const { return static_cast<int>(indices.size()); }
};

DftIndexSet dft_index_set(double theta, double delta, int nt, double spacing_ratio);
double analytic_rank(double theta, double delta, int nt, double spacing_ratio);

// Unitary DFT beam n: b[p] = exp(j 2 pi p (n - Nt/2) / Nt) / sqrt(Nt).
// Channels enter as rows of H = (E Lambda^{1/2} W)^T, so beam n is the conjugate
// steering vector for sin(theta) = (n - Nt/2) / (Nt * tau/lambda).
CVector dft_beam(int nt, int n);
CMatrix dft_beams(int nt, const std::vector<int>& columns);

// Exponential correlation [Phi]_{ab} = rho^|a-b|.
CMatrix exponential_correlation(int nr, double rho);

// H (Nr x Nt) with H^T = sqrt(beta) E Lambda^{1/2} W Phi^{T/2}, W ~ CN(0,1) from `seed`.
CMatrix sample_channel(const EigenBasis& basis, double beta, const CMatrix& phi, int nr,
                       std::uint64_t seed);

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

// Flat dump: "IASSRMAT" magic, uint32 version (1), uint32 rows, uint32 cols,
// then rows*cols (re, im) float64 pairs, row-major, little-endian.
void write_matrix(std::ostream& os, const CMatrix& m);
CMatrix read_matrix(std::istream& is);

}  // namespace iassr
