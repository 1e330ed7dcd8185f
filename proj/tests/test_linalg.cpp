#include "doctest.h"
#include "oracles.hpp"

#include "iassr/linalg.hpp"

using namespace iassr;

TEST_CASE("hermitian_sqrt squares back") {
  const CMatrix g = oracle::random_complex(5, 5, 11);
  const CMatrix a = g * g.adjoint();
  const CMatrix r = hermitian_sqrt(a);
  CHECK((r * r - a).norm() < 1e-10 * a.norm());
  CHECK(hermitian_defect(r) < 1e-12);
}

TEST_CASE("orthonormal_columns spans the input") {
  const CMatrix a = oracle::random_complex(6, 3, 12);
  const CMatrix q = orthonormal_columns(a);
  CHECK((q.adjoint() * q - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((a - q * (q.adjoint() * a)).norm() < 1e-12);
}

TEST_CASE("major and minor eigenvectors") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 5.0;
  d(2, 2) = 3.0;
  const CMatrix big = major_eigenvectors(d, 2);
  CHECK(std::abs(std::abs(big(1, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(big(2, 1)) - 1.0) < 1e-12);
  const CMatrix small = minor_eigenvectors(d, 1);
  CHECK(std::abs(std::abs(small(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("singular values and condition number") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 0.5;
  CHECK(min_singular_value(d) == doctest::Approx(0.5));
  CHECK(condition_number(d) == doctest::Approx(8.0));
}

TEST_CASE("clip_eigenvalues projects onto the floor") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = -2.0;
  d(1, 1) = 3.0;
  const CMatrix c = clip_eigenvalues(d, 0.0);
  CHECK(std::abs(c(0, 0)) < 1e-12);
  CHECK(c(1, 1).real() == doctest::Approx(3.0));
}
