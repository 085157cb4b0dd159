#include <gtest/gtest.h>

#include <cmath>

#include "sdn/denoise.hpp"
#include "sdn/errors.hpp"
#include "sdn/simlab/metrics.hpp"
#include "test_support.hpp"

using namespace sdn;
using sdn::testing::random_spd;
using sdn::testing::spikes_for;
using sdn::testing::synthetic_geometry;

namespace {

std::vector<double> log_grid(double lo, double hi, int m) {
  std::vector<double> g;
  for (int i = 0; i < m; ++i) g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (m - 1)));
  return g;
}

// Minimizer of <D B D~, B> - 2 <C T C~^T, B> from the r^2 x r^2 normal
// equations (D~ kron D) vec(B) = vec(C T C~^T).
Matrix normal_equations_B(const WeightedGeometry& g) {
  const Index r = g.rank;
  Matrix K(r * r, r * r);
  for (Index a = 0; a < r; ++a) {
    for (Index b = 0; b < r; ++b) {
      for (Index c = 0; c < r; ++c) {
        for (Index d = 0; d < r; ++d) K(a * r + c, b * r + d) = g.D_tilde(a, b) * g.D(c, d);
      }
    }
  }
  const Matrix rhs = g.C * g.t.asDiagonal() * g.C_tilde.transpose();
  const Vector vec_rhs = Eigen::Map<const Vector>(rhs.data(), r * r);
  const Vector sol = K.fullPivLu().solve(vec_rhs);
  return Eigen::Map<const Matrix>(sol.data(), r, r);
}

WeightedGeometry random_geometry(std::uint64_t seed) {
  const Index r = 1 + static_cast<Index>(seed % 4);
  const AspectRatio gamma(0.3 + 0.2 * static_cast<double>(seed % 6));
  Vector t(r);
  for (Index k = 0; k < r; ++k) t[k] = 1.5 + static_cast<double>(r - k) + 0.1 * static_cast<double>(seed % 3);
  const SpikeParams sp = spikes_for(t, gamma);
  return synthetic_geometry(sp, random_spd(r, seed, 0.3, 2.0), random_spd(r, seed + 77, 0.3, 2.0),
                            0.5 + 0.05 * static_cast<double>(seed % 9), 0.6 + 0.07 * static_cast<double>(seed % 5));
}

}  // namespace

TEST(OptimalB, IdentityGeometryIsShrinker) {
  Vector t(3);
  t << 5.0, 3.0, 1.5;
  const SpikeParams sp = spikes_for(t, AspectRatio(0.5));
  const auto g = synthetic_geometry(sp, Matrix::Identity(3, 3), Matrix::Identity(3, 3), 1.0, 1.0);
  const Matrix B = optimal_B(g);
  for (Index j = 0; j < 3; ++j) {
    for (Index k = 0; k < 3; ++k) {
      EXPECT_NEAR(B(j, k), j == k ? t[k] * sp.c[k] * sp.c_tilde[k] : 0.0, 1e-13);
    }
  }
  double expected = 0.0;
  for (Index k = 0; k < 3; ++k) expected += t[k] * t[k] * (1 - sp.c[k] * sp.c[k] * sp.c_tilde[k] * sp.c_tilde[k]);
  EXPECT_NEAR(amse_estimate(g).value, expected, 1e-12);
}

TEST(OptimalB, ScalarCase) {
  WeightedGeometry g;
  g.rank = 1;
  g.t = Vector::Constant(1, 2.0);
  g.D = Matrix::Constant(1, 1, 0.8);
  g.D_tilde = Matrix::Constant(1, 1, 0.5);
  g.C = Matrix::Constant(1, 1, 0.6);
  g.C_tilde = Matrix::Constant(1, 1, 0.3);
  g.E = g.E_tilde = Matrix::Identity(1, 1);
  EXPECT_NEAR(optimal_B(g)(0, 0), 2.0 * 0.6 * 0.3 / (0.8 * 0.5), 1e-15);
}

TEST(OptimalB, MatchesNormalEquations) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const WeightedGeometry g = random_geometry(seed);
    const Matrix B = optimal_B(g);
    const Matrix ref = normal_equations_B(g);
    EXPECT_LE((B - ref).norm(), 1e-8 * ref.norm()) << "seed " << seed;
  }
}

TEST(OptimalB, FirstOrderOptimality) {
  const WeightedGeometry g = random_geometry(7);
  const Matrix B = optimal_B(g);
  const double f0 = quadratic_objective(g, B);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Matrix dir = sdn::testing::gaussian_matrix(g.rank, g.rank, 1000 + k);
    dir /= dir.norm();
    EXPECT_GE(quadratic_objective(g, B + 1e-3 * dir), f0 - 1e-9);
    EXPECT_GE(quadratic_objective(g, B - 1e-3 * dir), f0 - 1e-9);
  }
}

TEST(Amse, EqualsSignalEnergyPlusMinimalObjective) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WeightedGeometry g = random_geometry(seed);
    const Matrix T = g.t.asDiagonal();
    const double energy = (g.E * T * g.E_tilde).cwiseProduct(T).sum();
    EXPECT_NEAR(amse_estimate(g).value, energy + quadratic_objective(g, optimal_B(g)), 1e-10 * energy);
  }
}

TEST(Amse, VanishesWithSignal) {
  WeightedGeometry g = random_geometry(3);
  g.t *= 1e-9;
  EXPECT_LT(amse_estimate(g).value, 1e-15);
  WeightedGeometry empty;
  EXPECT_EQ(amse_estimate(empty).value, 0.0);
}

TEST(DiagonalDenoiser, UnitCorrectionWhenGeneric) {
  const DiagonalShrinker d = diagonal_shrinker(2.0, AspectRatio(1.0), 0.7, 1.3, 0.7, 1.3);
  EXPECT_NEAR(d.eta, 1.0, 1e-15);
  EXPECT_NEAR(d.t_hat, 1.5, 1e-14);
}

TEST(DiagonalDenoiser, MatchesOptimalBUnderWeightedOrthogonality) {
  const AspectRatio gamma(0.7);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Index r = 1 + static_cast<Index>(seed % 4);
    Vector t(r);
    for (Index k = 0; k < r; ++k) t[k] = 1.4 + 0.8 * static_cast<double>(r - k);
    const SpikeParams sp = spikes_for(t, gamma);
    const Vector alpha = sdn::testing::uniform_vector(r, seed, 0.1, 3.0);
    const Vector beta = sdn::testing::uniform_vector(r, seed + 9, 0.1, 3.0);
    const double mu = 0.8, nu = 1.4;
    const auto g = synthetic_geometry(sp, alpha.asDiagonal(), beta.asDiagonal(), mu, nu);
    const Matrix B = optimal_B(g);
    double amse = 0.0;
    for (Index k = 0; k < r; ++k) {
      const DiagonalShrinker d = diagonal_shrinker(t[k], gamma, alpha[k], beta[k], mu, nu);
      EXPECT_NEAR(B(k, k), d.t_hat, 1e-10);
      amse += t[k] * t[k] * alpha[k] * beta[k] *
              (1 - sp.c[k] * sp.c[k] * sp.c_tilde[k] * sp.c_tilde[k] * d.eta);
      for (Index j = 0; j < r; ++j) {
        if (j != k) EXPECT_NEAR(B(j, k), 0.0, 1e-12);
      }
    }
    EXPECT_NEAR(amse_estimate(g).value, amse, 1e-10 * std::max(1.0, amse));
  }
}

TEST(DiagonalDenoiser, LargeWeightsInflate) {
  // alpha = beta = 10: t_hat = 2 * 0.75 * (10 / 7.75)^2, just below lambda = 2.5
  const DiagonalShrinker d10 = diagonal_shrinker(2.0, AspectRatio(1.0), 10.0, 10.0, 1.0, 1.0);
  EXPECT_NEAR(d10.t_hat, 1.5 * (10.0 / 7.75) * (10.0 / 7.75), 1e-13);
  EXPECT_LT(d10.t_hat, d10.lambda);
  // alpha = beta = 20 pushes it above the observed value
  const DiagonalShrinker d20 = diagonal_shrinker(2.0, AspectRatio(1.0), 20.0, 20.0, 1.0, 1.0);
  EXPECT_NEAR(d20.t_hat, 1.5 * (20.0 / 15.25) * (20.0 / 15.25), 1e-13);
  EXPECT_GT(d20.t_hat, d20.lambda);
}

TEST(ShrinkageProperties, UniformWeights) {
  const auto grid = log_grid(std::pow(0.5, 0.25) * 1.001, 50.0, 300);
  const ShrinkageReport rep = check_shrinkage_properties(AspectRatio(0.5), 1, 1, 1, 1, grid);
  EXPECT_TRUE(rep.hypothesis);
  EXPECT_TRUE(rep.shrinks);
  EXPECT_TRUE(rep.monotone);
}

TEST(ShrinkageProperties, LargeWeightsBreakMonotonicity) {
  const auto grid = log_grid(std::pow(0.1, 0.25) * 1.001, 20.0, 400);
  const ShrinkageReport rep = check_shrinkage_properties(AspectRatio(0.1), 10, 10, 1, 1, grid);
  EXPECT_FALSE(rep.hypothesis);
  EXPECT_FALSE(rep.monotone);
  EXPECT_FALSE(rep.monotone_violations.empty());
}

TEST(ShrinkageProperties, OneSmallWeightSuffices) {
  for (double g : {0.1, 0.5, 1.0, 2.0}) {
    const auto grid = log_grid(std::pow(g, 0.25) * 1.001, 50.0, 300);
    const ShrinkageReport rep = check_shrinkage_properties(AspectRatio(g), 0.5, 2.0, 1, 1, grid);
    EXPECT_TRUE(rep.hypothesis);
    EXPECT_TRUE(rep.shrinks) << "gamma " << g;
    EXPECT_TRUE(rep.monotone) << "gamma " << g;
  }
}

TEST(ShrinkageProperties, RejectsBadGrid) {
  EXPECT_THROW(check_shrinkage_properties(AspectRatio(1.0), 1, 1, 1, 1, std::vector<double>{0.5, 2.0}),
               InvalidArgument);
  EXPECT_THROW(check_shrinkage_properties(AspectRatio(1.0), 1, 1, 1, 1, std::vector<double>{3.0, 2.0}),
               InvalidArgument);
}

TEST(SvsShrink, HandValue) {
  Matrix Y = Matrix::Zero(50, 50);
  Y(0, 0) = 2.5;
  const DenoiseResult res = svs_shrink(Y);
  ASSERT_EQ(res.spikes.rank(), 1);
  EXPECT_NEAR(res.B_hat(0, 0), 1.5, 1e-13);
  EXPECT_NEAR(std::abs(res.X_hat(0, 0)), 1.5, 1e-13);
  EXPECT_NEAR(res.amse_estimate, 4.0 * (1 - 0.75 * 0.75), 1e-13);
}

TEST(SvsShrink, NoSignalGivesZero) {
  const Matrix G = sdn::testing::gaussian_matrix(100, 200, 4, 1.0 / std::sqrt(200.0));
  const DenoiseResult res = svs_shrink(G * 0.5);
  EXPECT_TRUE(res.rank_zero);
  EXPECT_EQ(res.X_hat.norm(), 0.0);
  EXPECT_EQ(res.amse_estimate, 0.0);
  const DenoiseResult sd = spectral_denoise(G * 0.5, WeightOperator::identity(100), WeightOperator::identity(200));
  EXPECT_TRUE(sd.rank_zero);
  EXPECT_EQ(sd.X_hat.norm(), 0.0);
}

TEST(SpectralDenoise, ReducesToShrinkageUnderIdentityWeights) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Index p = 60 + 10 * static_cast<Index>(seed % 5);
    const Index n = 120 - 7 * static_cast<Index>(seed % 4);
    Vector t(2);
    t << 3.0 + 0.1 * static_cast<double>(seed), 1.8;
    const auto inst = sdn::testing::spiked_instance(p, n, t, seed);
    const DenoiseResult a = spectral_denoise(inst.Y, WeightOperator::identity(p), WeightOperator::identity(n));
    const DenoiseResult b = svs_shrink(inst.Y);
    ASSERT_EQ(a.spikes.rank(), b.spikes.rank());
    ASSERT_GT(b.X_hat.norm(), 0.0);
    EXPECT_LE((a.X_hat - b.X_hat).norm(), 1e-8 * b.X_hat.norm());
    EXPECT_NEAR(a.amse_estimate, b.amse_estimate, 1e-8 * b.amse_estimate);
  }
}

TEST(SpectralDenoise, ReconstructionIdentity) {
  Vector t(2);
  t << 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(80, 160, t, 8);
  const WeightOperator om = WeightOperator::diagonal(sdn::testing::uniform_vector(80, 1, 0.2, 2.0));
  const WeightOperator pi = WeightOperator::projection({0, 5, 9, 30, 31, 32, 100, 150}, 160);
  const SpectralBasis basis = spectral_basis(inst.Y);
  const DenoiseResult res = spectral_denoise(basis, om, pi);
  const Matrix ref = basis.U * res.B_hat * basis.V.transpose();
  EXPECT_LE((res.X_hat - ref).norm(), 1e-10 * ref.norm());
  Eigen::JacobiSVD<Matrix> svd(res.X_hat);
  EXPECT_LT(svd.singularValues()(res.spikes.rank()), 1e-10 * svd.singularValues()(0));
}

TEST(SpectralDenoise, SignFlipInvariance) {
  Vector t(3);
  t << 4.0, 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(90, 150, t, 9);
  const WeightOperator om = WeightOperator::diagonal(sdn::testing::uniform_vector(90, 2, 0.1, 1.5));
  const WeightOperator pi = WeightOperator::diagonal(sdn::testing::uniform_vector(150, 3, 0.1, 1.5));
  SpectralBasis basis = spectral_basis(inst.Y, RankSelection{3, 0.0});
  const DenoiseResult a = spectral_denoise(basis, om, pi);
  basis.U.col(1) *= -1.0;
  basis.V.col(1) *= -1.0;
  const DenoiseResult b = spectral_denoise(basis, om, pi);
  EXPECT_LE((a.X_hat - b.X_hat).norm(), 1e-12 * a.X_hat.norm());
  EXPECT_NEAR(a.amse_estimate, b.amse_estimate, 1e-12 * a.amse_estimate);
}

TEST(SpectralDenoise, ForcedRankBelowThreshold) {
  Vector t(1);
  t << 3.0;
  const auto inst = sdn::testing::spiked_instance(100, 200, t, 10);
  DenoiseOptions opts;
  opts.rank.rank = 4;
  try {
    spectral_denoise(inst.Y, WeightOperator::identity(100), WeightOperator::identity(200), opts);
    FAIL();
  } catch (const BelowThreshold& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(SpectralDenoise, DimensionMismatch) {
  const Matrix Y = Matrix::Zero(10, 20);
  EXPECT_THROW(spectral_denoise(Y, WeightOperator::identity(20), WeightOperator::identity(20)), InvalidArgument);
}

TEST(SpectralDenoise, WeightedNeverMuchWorseThanShrinkage) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Vector t(2);
    t << 3.0, 2.0;
    const auto inst = sdn::testing::spiked_instance(200, 400, t, 100 + seed);
    const WeightOperator om = WeightOperator::diagonal(sdn::testing::uniform_vector(200, seed, 0.0, 2.0));
    const WeightOperator pi = WeightOperator::diagonal(sdn::testing::uniform_vector(400, seed + 50, 0.0, 2.0));
    const DenoiseResult w = spectral_denoise(inst.Y, om, pi);
    const DenoiseResult s = svs_shrink(inst.Y);
    const Matrix& X = inst.signal.X;
    const double lw = weighted_squared_norm(w.X_hat - X, om, pi);
    const double ls = weighted_squared_norm(s.X_hat - X, om, pi);
    EXPECT_LE(lw, ls + 0.02 * weighted_squared_norm(X, om, pi));
  }
}

TEST(DiagonalDenoise, AgreesWithFormulaOnData) {
  Vector t(2);
  t << 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(100, 200, t, 11);
  const WeightOperator om = WeightOperator::diagonal(sdn::testing::uniform_vector(100, 4, 0.2, 2.0));
  const WeightOperator pi = WeightOperator::identity(200);
  const DenoiseResult d = diagonal_denoise(inst.Y, om, pi);
  ASSERT_EQ(d.spikes.rank(), 2);
  for (Index k = 0; k < 2; ++k) {
    const DiagonalShrinker ref = diagonal_shrinker(d.spikes.t[k], d.spikes.gamma, d.geometry.alpha[k],
                                                   d.geometry.beta[k], d.geometry.mu, d.geometry.nu);
    EXPECT_NEAR(d.B_hat(k, k), ref.t_hat, 1e-12);
  }
  EXPECT_EQ(d.B_hat(0, 1), 0.0);
}

TEST(Reconstruct, BlockMatchesFull) {
  const Matrix U = simlab::random_orthonormal(20, 3, 1);
  const Matrix V = simlab::random_orthonormal(30, 3, 2);
  const Matrix B = sdn::testing::gaussian_matrix(3, 3, 3);
  const Matrix full = reconstruct(U, B, V);
  const std::vector<Index> rows{2, 5, 19};
  const std::vector<Index> cols{0, 29};
  const Matrix blk = reconstruct_block(U, B, V, rows, cols);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) EXPECT_EQ(blk(a, b), full(rows[a], cols[b]));
  }
  EXPECT_LT((full - U * B * V.transpose()).norm(), 1e-12);
}

TEST(Pinv, DropsSmallEigenvalues) {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 2.0;
  A(1, 1) = 1e-12;
  A(2, 2) = 0.5;
  const Matrix P = symmetric_pinv(A);
  EXPECT_NEAR(P(0, 0), 0.5, 1e-15);
  EXPECT_EQ(P(1, 1), 0.0);
  EXPECT_NEAR(P(2, 2), 2.0, 1e-15);
}
