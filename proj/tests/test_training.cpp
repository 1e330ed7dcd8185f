#include "doctest.h"
#include "oracles.hpp"

#include "iassr/errors.hpp"
#include "iassr/training.hpp"

using namespace iassr;

namespace {

TrainingPlan example_plan() {
  return design_training({{4, {2, 2, 2}}, {5, {3, 0, 1}}},
                         {{0, 0, 7}, {1, 1, 5}, {2, 2, 6}, {3, 0, 4}});
}

}  // namespace

TEST_CASE("training lengths") {
  const TrainingPlan p = example_plan();
  CHECK(p.edge_for(4).length == 6);
  CHECK(p.edge_for(5).length == 4);
  CHECK(p.center_max == Triple{7, 5, 6});
  CHECK(p.tc_len == 18);
  CHECK(p.center_for(3).T.rows() == 4);
  CHECK(p.center_for(3).T.cols() == 18);
  CHECK_THROWS_AS(p.edge_for(0), Error);
  CHECK_THROWS_AS(p.center_for(4), Error);
  CHECK(design_training({}, {{0, 1, 2}}, {1, 1, 1}).tc_len == 4);
}

TEST_CASE("training sequences are orthonormal across BSs") {
  const TrainingPlan p = example_plan();
  const auto& e = p.edge_for(4);
  for (int i = 0; i < kNumBs; ++i)
    for (int k = 0; k < kNumBs; ++k) {
      const CMatrix g = e.T[i] * e.T[k].adjoint();
      if (i == k) CHECK((g - CMatrix::Identity(2, 2)).norm() < 1e-12);
      else CHECK(g.norm() < 1e-12);
      const CMatrix f = p.Fc[i] * p.Fc[k].adjoint();
      if (i == k) CHECK((f - CMatrix::Identity(f.rows(), f.cols())).norm() < 1e-12);
      else CHECK(f.norm() < 1e-12);
    }
  CHECK((dft_rows(8, 0, 8) * dft_rows(8, 0, 8).adjoint() - CMatrix::Identity(8, 8)).norm() < 1e-12);
  CHECK_THROWS_AS(dft_rows(4, 3, 2), Error);
}

TEST_CASE("noiseless least squares is exact") {
  const TrainingPlan p = example_plan();
  const auto& e = p.edge_for(4);
  std::array<CMatrix, kNumBs> h;
  CMatrix y = CMatrix::Zero(2, e.length);
  for (int i = 0; i < kNumBs; ++i) {
    h[i] = oracle::random_complex(2, 2, 20 + i);
    y += h[i] * e.T[i];
  }
  for (int i = 0; i < kNumBs; ++i) CHECK((ls_estimate_edge(y, p, 4, i) - h[i]).norm() <= 1e-12);
  const CMatrix hc = oracle::random_complex(2, 5, 30);
  CHECK((ls_estimate_center(hc * p.center_for(1).T, p, 1) - hc).norm() <= 1e-12);
}

TEST_CASE("estimation error equals the noise variance") {
  const TrainingPlan p = example_plan();
  const CMatrix t = p.center_for(0).T;
  const CMatrix h = oracle::random_complex(4, 7, 1);
  double acc = 0.0;
  const int draws = 2000;
  for (int d = 0; d < draws; ++d) {
    const CMatrix y = h * t + oracle::random_complex(4, p.tc_len, 1000 + d);
    acc += mse(ls_estimate(y, t), h);
  }
  CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("interference covariance estimate") {
  const TrainingPlan p = example_plan();
  const CMatrix y = oracle::random_complex(4, p.tc_len, 2);
  CHECK((estimate_noise_cov(y, p, 0, 0.0) - CMatrix::Identity(4, 4)).norm() == 0.0);

  // Planted cross-cell centre signals with negligible noise.
  const CMatrix g1 = oracle::random_complex(4, 5, 3), g2 = oracle::random_complex(4, 6, 4);
  const double rho = 3.0, pc = 0.7, s2 = 1e-12;
  const CMatrix y2 = std::sqrt(rho) * (g1 * p.Fc[1] + g2 * p.Fc[2]);
  const CMatrix want = s2 * CMatrix::Identity(4, 4) + pc * (g1 * g1.adjoint() + g2 * g2.adjoint());
  const CMatrix k = estimate_noise_cov(y2, p, 0, pc, rho, s2);
  CHECK((k - want).norm() <= 1e-9 * want.norm());
  CHECK_THROWS_AS(estimate_noise_cov(CMatrix::Zero(4, 3), p, 0, 1.0), Error);
}

TEST_CASE("mse") {
  CHECK(mse(CMatrix::Ones(2, 2), CMatrix::Zero(2, 2)) == 1.0);
  CHECK(mse(CMatrix(0, 0), CMatrix(0, 0)) == 0.0);
  CHECK_THROWS_AS(mse(CMatrix::Ones(2, 2), CMatrix::Ones(2, 1)), Error);
}
