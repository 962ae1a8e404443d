#include "polartomo/forward.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "polartomo/stategen.hpp"

namespace pt = polartomo;
using pt::testing::max_abs_diff;

namespace {

pt::DensityMatrix uniform_pure(std::size_t n) {
  const auto g = pt::make_grid(n, 2.0);
  pt::RawMode raw{std::vector<pt::Complex>(n, pt::Complex(1.0, 0.0))};
  return pt::assemble_density_matrix(pt::MixtureSpec{{{1.0, raw}}}, g);
}

}  // namespace

TEST(Forward, UniformStateFrames) {
  const std::size_t n = 16;
  const auto rho = uniform_pure(n);
  const auto f = pt::forward_frames(rho, rho.grid);
  const double inv_n = 1.0 / n;
  EXPECT_LT((f.gamma_d.array() - inv_n).abs().maxCoeff(), 1e-15);
  EXPECT_LT(f.gamma_a.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((f.gamma_r.array() - inv_n / 2).abs().maxCoeff(), 1e-15);
  EXPECT_LT((f.gamma_l.array() - inv_n / 2).abs().maxCoeff(), 1e-15);
}

TEST(Forward, AntiDiagonalOfDiagonalFrameIsPopulation) {
  std::mt19937_64 rng(3);
  const auto g = pt::make_grid(40, 2.0);
  const auto rho = pt::testing::random_density(g, 3, rng);
  const auto f = pt::forward_frames(rho, g);
  double anti_sum = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    const auto x = static_cast<Eigen::Index>(i);
    const auto y = static_cast<Eigen::Index>(g.flip_index(i));
    EXPECT_NEAR(f.gamma_d(x, y), rho.elements(x, x).real(), 1e-15);
    anti_sum += f.gamma_d(x, y);
  }
  EXPECT_NEAR(anti_sum, 1.0, 1e-10);
}

TEST(Forward, MatchesLiteralUnitaryOracleHermiteGauss) {
  const auto g = pt::make_grid(64, 2.0);
  const auto rho = pt::assemble_density_matrix(pt::hermite_gauss_benchmark_mixture(), g);
  const auto fast = pt::forward_frames(rho, g);
  const auto slow = pt::testing::literal_forward_frames(rho);
  EXPECT_LT(max_abs_diff(fast.gamma_d, slow.gamma_d), 1e-12);
  EXPECT_LT(max_abs_diff(fast.gamma_a, slow.gamma_a), 1e-12);
  EXPECT_LT(max_abs_diff(fast.gamma_r, slow.gamma_r), 1e-12);
  EXPECT_LT(max_abs_diff(fast.gamma_l, slow.gamma_l), 1e-12);
}

TEST(Forward, MatchesLiteralUnitaryOracleRandomComplexStates) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {5u, 12u, 31u}) {
    const auto g = pt::make_grid(n, 1.0);
    const auto rho = pt::testing::random_density(g, 3, rng);
    const auto fast = pt::forward_frames(rho, g);
    const auto slow = pt::testing::literal_forward_frames(rho);
    EXPECT_LT(max_abs_diff(fast.gamma_d, slow.gamma_d), 1e-12);
    EXPECT_LT(max_abs_diff(fast.gamma_a, slow.gamma_a), 1e-12);
    EXPECT_LT(max_abs_diff(fast.gamma_r, slow.gamma_r), 1e-12);
    EXPECT_LT(max_abs_diff(fast.gamma_l, slow.gamma_l), 1e-12);
  }
}

TEST(Forward, PropertyFrameSumIdentityAndNonNegativity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial) * 5;
    const auto g = pt::make_grid(n, 2.0);
    const auto rho = pt::testing::random_density(g, 1 + trial % 4, rng);
    const auto f = pt::forward_frames(rho, g);
    EXPECT_LT(pt::frame_sum_defect(f), 1e-12);
    for (const auto* plane : {&f.gamma_d, &f.gamma_a, &f.gamma_r, &f.gamma_l}) {
      EXPECT_GE(plane->minCoeff(), -1e-15);
    }
  }
}

TEST(Forward, RejectsGridMismatchAndNonHermitianInput) {
  const auto rho = uniform_pure(8);
  EXPECT_THROW(pt::forward_frames(rho, pt::make_grid(8, 3.0)), std::invalid_argument);
  auto bad = rho;
  bad.elements(0, 1) += 1e-6;
  EXPECT_THROW(pt::forward_frames(bad, bad.grid), std::invalid_argument);
}

TEST(Mosaic, SinglePixelLayout) {
  const auto g = pt::make_grid(2, 1.0);
  pt::PolarizationFrames f{pt::RealMatrix::Constant(2, 2, 1.0), pt::RealMatrix::Constant(2, 2, 2.0),
                           pt::RealMatrix::Constant(2, 2, 3.0), pt::RealMatrix::Constant(2, 2, 4.0),
                           g, std::nullopt};
  const auto m = pt::to_mosaic(f);
  ASSERT_EQ(m.rows(), 4);
  // Top-left superpixel [[D, R], [L, A]].
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 3.0);
  EXPECT_EQ(m(1, 0), 4.0);
  EXPECT_EQ(m(1, 1), 2.0);
}

TEST(Mosaic, RoundTripIsBitExactAndKeepsIdentity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = pt::make_grid(9, 1.0);
  pt::PolarizationFrames f{pt::RealMatrix(9, 9), pt::RealMatrix(9, 9), pt::RealMatrix(9, 9),
                           pt::RealMatrix(9, 9), g, std::nullopt};
  for (auto* p : {&f.gamma_d, &f.gamma_a, &f.gamma_r, &f.gamma_l}) {
    for (Eigen::Index i = 0; i < p->size(); ++i) p->data()[i] = u(rng);
  }
  const auto back = pt::from_mosaic(pt::to_mosaic(f), g);
  EXPECT_EQ(back.gamma_d, f.gamma_d);
  EXPECT_EQ(back.gamma_a, f.gamma_a);
  EXPECT_EQ(back.gamma_r, f.gamma_r);
  EXPECT_EQ(back.gamma_l, f.gamma_l);

  const auto rho = pt::testing::random_density(pt::make_grid(9, 1.0), 2, rng);
  const auto clean = pt::forward_frames(rho, rho.grid);
  EXPECT_LT(pt::frame_sum_defect(pt::from_mosaic(pt::to_mosaic(clean), rho.grid)), 1e-12);
}

TEST(Mosaic, RejectsOddOrMismatchedInput) {
  const auto g = pt::make_grid(2, 1.0);
  EXPECT_THROW(pt::from_mosaic(pt::RealMatrix::Zero(3, 4), g), std::invalid_argument);
  EXPECT_THROW(pt::from_mosaic(pt::RealMatrix::Zero(6, 6), g), std::invalid_argument);
}
