#include "iassr/channel.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>

#include "iassr/errors.hpp"
#include "iassr/quadrature.hpp"

namespace iassr {

namespace {

cdouble lag_value(int m, double theta, double delta, double spacing_ratio) {
  if (m == 0) return {1.0, 0.0};
  const double k = -2.0 * kPi * m * spacing_ratio;
  auto f = [k](double a) { return std::polar(1.0, k * std::sin(a)); };
  return integrate(f, theta - delta, theta + delta) / (2.0 * delta);
}

void check_spread(double delta, int nt) {
  if (!(delta > 0.0)) throw Error(ErrorCode::DegenerateSpread, "angular spread must be positive");
  if (nt < 1) throw Error(ErrorCode::InvalidArgument, "Nt must be positive");
}

}  // namespace

CVector correlation_lags(double theta, double delta, int nt, double spacing_ratio, Execution exec) {
  check_spread(delta, nt);
  CVector c(nt);
  if (exec == Execution::Serial) {
    for (int m = 0; m < nt; ++m) c(m) = lag_value(m, theta, delta, spacing_ratio);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (int m = 0; m < nt; ++m) c(m) = lag_value(m, theta, delta, spacing_ratio);
  }
  return c;
}

CMatrix toeplitz_hermitian(const CVector& c) {
  const Eigen::Index n = c.size();
  CMatrix r(n, n);
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p) r(p, q) = p >= q ? c(p - q) : std::conj(c(q - p));
  return r;
}

CMatrix correlation_matrix(double theta, double delta, int nt, double spacing_ratio,
                           Execution exec) {
  return toeplitz_hermitian(correlation_lags(theta, delta, nt, spacing_ratio, exec));
}

EigenBasis eigen_basis(const CMatrix& R, double threshold) {
  if (R.rows() != R.cols()) throw Error(ErrorCode::DimensionMismatch, "R must be square");
  if (hermitian_defect(R) > 1e-10) throw Error(ErrorCode::NotHermitian, "R is not Hermitian");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error(ErrorCode::InvalidArgument, "eigen threshold must lie in (0,1)");
  EigenBasis b;
  if (R.size() == 0) return b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (R + R.adjoint()));
  const RVector& ev = es.eigenvalues();  // ascending
  const Eigen::Index n = ev.size();
  const double cut = threshold * ev(n - 1);
  int r = 0;
  while (r < n && ev(n - 1 - r) >= cut && ev(n - 1 - r) > 0.0) ++r;
  b.E = es.eigenvectors().rightCols(r).rowwise().reverse();
  b.lambda = ev.tail(r).reverse();
  return b;
}

EigenBasis truncate_basis(const EigenBasis& b, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error(ErrorCode::InvalidArgument, "eigen threshold must lie in (0,1)");
  EigenBasis out;
  if (b.rank() == 0) return b;
  const double cut = threshold * b.lambda(0);
  int r = 0;
  while (r < b.rank() && b.lambda(r) >= cut) ++r;
  out.E = b.E.leftCols(r);
  out.lambda = b.lambda.head(r);
  return out;
}

DftIndexSet dft_index_set(double theta, double delta, int nt, double spacing_ratio) {
  const double a = nt * spacing_ratio * std::sin(theta - delta) + nt / 2.0;
  const double b = nt * spacing_ratio * std::sin(theta + delta) + nt / 2.0;
  double lo = std::min(a, b), hi = std::max(a, b);
  DftIndexSet s;
  if (lo < 0.0 || hi > nt - 1) s.clamped = true;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, static_cast<double>(nt - 1));
  constexpr double eps = 1e-9;  // closed interval, ties included
  for (long n = static_cast<long>(std::ceil(lo - eps)); n <= static_cast<long>(std::floor(hi + eps));
       ++n)
    s.indices.push_back(static_cast<int>(n));
  return s;
}

double analytic_rank(double theta, double delta, int nt, double spacing_ratio) {
  return 2.0 * nt * spacing_ratio * std::abs(std::cos(theta)) * std::sin(delta);
}

CVector dft_beam(int nt, int n) {
  CVector f(nt);
  const double s = 1.0 / std::sqrt(static_cast<double>(nt));
  for (int p = 0; p < nt; ++p) {
    // Reduce the phase index exactly before converting to radians.
    const long k = (static_cast<long>(p) * (2L * n - nt)) % (2L * nt);
    f(p) = std::polar(s, kPi * static_cast<double>(k) / nt);
  }
  return f;
}

CMatrix dft_beams(int nt, const std::vector<int>& columns) {
  CMatrix b(nt, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] < 0 || columns[c] >= nt) throw Error(ErrorCode::InvalidArgument, "DFT column");
    b.col(static_cast<Eigen::Index>(c)) = dft_beam(nt, columns[c]);
  }
  return b;
}

CMatrix exponential_correlation(int nr, double rho) {
  CMatrix phi(nr, nr);
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) phi(a, b) = std::pow(rho, std::abs(a - b));
  return phi;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = splitmix(base);
  h = splitmix(h ^ a);
  h = splitmix(h ^ b);
  return splitmix(h ^ c);
}

CMatrix sample_channel(const EigenBasis& basis, double beta, const CMatrix& phi, int nr,
                       std::uint64_t seed) {
  if (phi.rows() != nr || phi.cols() != nr)
    throw Error(ErrorCode::DimensionMismatch, "Phi must be Nr x Nr");
  if (hermitian_defect(phi) > 1e-10) throw Error(ErrorCode::NotHermitian, "Phi not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(phi);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw Error(ErrorCode::InvalidArgument, "Phi not positive semidefinite");
  if (beta < 0.0) throw Error(ErrorCode::InvalidArgument, "negative path gain");

  const Eigen::Index nt = basis.E.rows(), r = basis.rank();
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix w(r, nr);
  for (Eigen::Index c = 0; c < nr; ++c)
    for (Eigen::Index k = 0; k < r; ++k) {
      const double re = g(gen);
      w(k, c) = cdouble(re, g(gen));
    }
  if (beta == 0.0 || r == 0) return CMatrix::Zero(nr, nt);
  const CMatrix phi_half = hermitian_sqrt(phi.transpose());
  const CMatrix ht = std::sqrt(beta) * basis.E * basis.lambda.cwiseSqrt().asDiagonal() * w * phi_half;
  return ht.transpose();
}

namespace {

static_assert(std::endian::native == std::endian::little, "dump format assumes little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error(ErrorCode::Io, "truncated dump");
  return v;
}

constexpr char kMagic[8] = {'I', 'A', 'S', 'S', 'R', 'M', 'A', 'T'};

}  // namespace

void write_matrix(std::ostream& os, const CMatrix& m) {
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(m.rows()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      put<double>(os, m(r, c).real());
      put<double>(os, m(r, c).imag());
    }
  if (!os) throw Error(ErrorCode::Io, "write failed");
}

CMatrix read_matrix(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw Error(ErrorCode::Io, "bad matrix dump header");
  if (get<std::uint32_t>(is) != 1) throw Error(ErrorCode::Io, "unsupported dump version");
  const auto rows = get<std::uint32_t>(is), cols = get<std::uint32_t>(is);
  CMatrix m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      const double re = get<double>(is);
      m(r, c) = cdouble(re, get<double>(is));
    }
  return m;
}

}  // namespace iassr
