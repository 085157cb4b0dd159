#include <gtest/gtest.h>

#include <cmath>

#include "sdn/applications.hpp"
#include "sdn/errors.hpp"
#include "test_support.hpp"

using namespace sdn;

namespace {

SamplingPattern full_pattern(const Matrix& Y) {
  SamplingPattern pat;
  pat.rows = Y.rows();
  pat.cols = Y.cols();
  pat.q_row = Vector::Ones(Y.rows());
  pat.q_col = Vector::Ones(Y.cols());
  for (Index j = 0; j < Y.cols(); ++j) {
    for (Index i = 0; i < Y.rows(); ++i) pat.observed.push_back({i, j, Y(i, j)});
  }
  return pat;
}

}  // namespace

TEST(SnrGain, HandValues) {
  EXPECT_DOUBLE_EQ(snr_gain_tau({Covariance::identity(3), Covariance::identity(5)}), 1.0);
  Vector s(2);
  s << 1.0, 4.0;
  EXPECT_DOUBLE_EQ(snr_gain_tau({Covariance::diagonal(s), Covariance::identity(4)}), 1.5625);
}

TEST(SnrGain, AtLeastOneAndOneOnlyForScalar) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Index p = 2 + static_cast<Index>(seed % 7);
    const NoiseCovariances cov{Covariance::dense(sdn::testing::random_spd(p, seed, 0.1, 5.0)),
                               Covariance::diagonal(sdn::testing::uniform_vector(4, seed, 0.2, 3.0))};
    const double tau = snr_gain_tau(cov);
    EXPECT_GE(tau, 1.0);
    EXPECT_EQ(std::abs(tau - 1.0) < 1e-12, cov.S.is_scalar(1e-9) && cov.T.is_scalar(1e-9));
  }
  EXPECT_NEAR(snr_gain_tau({Covariance::identity(3).scaled(7.0), Covariance::identity(2).scaled(0.2)}), 1.0, 1e-14);
}

TEST(Covariance, Validation) {
  Vector bad(2);
  bad << 1.0, 0.0;
  EXPECT_THROW(Covariance::diagonal(bad), InvalidArgument);
  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(Covariance::dense(asym), InvalidArgument);
  Matrix indef(2, 2);
  indef << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(Covariance::dense(indef), InvalidArgument);
}

TEST(Covariance, PowersAreInverse) {
  const Covariance c = Covariance::dense(sdn::testing::random_spd(5, 3, 0.5, 4.0));
  const Matrix h = c.power_operator(0.5).to_dense();
  const Matrix hi = c.power_operator(-0.5).to_dense();
  EXPECT_LT((h * h - c.to_dense()).norm(), 1e-12);
  EXPECT_LT((h * hi - Matrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Covariance, NormalizeKeepsNoise) {
  const NoiseCovariances cov{Covariance::diagonal(sdn::testing::uniform_vector(4, 1, 0.5, 2.0)),
                             Covariance::diagonal(sdn::testing::uniform_vector(6, 2, 0.5, 5.0))};
  const NoiseCovariances nc = cov.normalize();
  EXPECT_TRUE(nc.normalized());
  EXPECT_FALSE(cov.normalized());
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 6; ++j) {
      EXPECT_NEAR(nc.S.eigenvalues()[i] * nc.T.eigenvalues()[j], cov.S.eigenvalues()[i] * cov.T.eigenvalues()[j],
                  1e-13);
    }
  }
}

TEST(Whiten, IdentityCovariancesGiveShrinkage) {
  Vector t(2);
  t << 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(100, 200, t, 41);
  const PipelineResult w = whiten_denoise(inst.Y, {Covariance::identity(100), Covariance::identity(200)});
  const DenoiseResult s = svs_shrink(inst.Y);
  EXPECT_LE((w.estimate - s.X_hat).norm(), 1e-8 * s.X_hat.norm());
}

TEST(Whiten, DimensionMismatch) {
  EXPECT_THROW(whiten_denoise(Matrix::Zero(3, 4), {Covariance::identity(3), Covariance::identity(3)}),
               InvalidArgument);
}

TEST(NoiseCovariances, HomoscedasticIsScalar) {
  const Matrix G = sdn::testing::gaussian_matrix(200, 2000, 9, 1.0 / std::sqrt(2000.0));
  const NoiseCovariances cov = estimate_noise_covariances(G);
  EXPECT_TRUE(cov.normalized());
  const Vector& a = cov.S.eigenvalues();
  EXPECT_LT((a.array() - a.mean()).abs().maxCoeff(), 0.1 * a.mean());
}

TEST(NoiseCovariances, RecoversRowVariances) {
  const Index p = 100, n = 4000;
  const Vector a = sdn::testing::uniform_vector(p, 5, 0.2, 2.0);
  Matrix Y = sdn::testing::gaussian_matrix(p, n, 6, 1.0 / std::sqrt(static_cast<double>(n)));
  Y = a.cwiseSqrt().asDiagonal() * Y;
  const NoiseCovariances cov = estimate_noise_covariances(Y);
  EXPECT_LT((cov.S.eigenvalues() - a).cwiseAbs().maxCoeff(), 0.1);
}

TEST(NoiseCovariances, ZeroRowIsDegenerate) {
  Matrix Y = sdn::testing::gaussian_matrix(5, 8, 1);
  Y.row(2).setZero();
  EXPECT_THROW(estimate_noise_covariances(Y), DegenerateEstimate);
  Matrix Z = sdn::testing::gaussian_matrix(5, 8, 1);
  Z.col(7).setZero();
  EXPECT_THROW(estimate_noise_covariances(Z), DegenerateEstimate);
}

TEST(Submatrix, FullSelectionIsShrinkage) {
  Vector t(2);
  t << 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(90, 150, t, 42);
  std::vector<Index> rows(90), cols(150);
  for (Index i = 0; i < 90; ++i) rows[static_cast<std::size_t>(i)] = i;
  for (Index j = 0; j < 150; ++j) cols[static_cast<std::size_t>(j)] = j;
  const DenoiseResult s = svs_shrink(inst.Y);
  EXPECT_LE((submatrix_denoise(inst.Y, rows, cols).estimate - s.X_hat).norm(), 1e-8 * s.X_hat.norm());
  EXPECT_LE((shrink_submatrix_baseline(inst.Y, rows, cols).estimate - s.X_hat).norm(), 1e-12 * s.X_hat.norm());
}

TEST(Submatrix, EstimateIsBlockOfWeightedDenoiser) {
  Vector t(1);
  t << 3.0;
  const auto inst = sdn::testing::spiked_instance(80, 120, t, 43);
  const std::vector<Index> rows{1, 4, 9, 30}, cols{0, 2, 100, 119};
  const PipelineResult r = submatrix_denoise(inst.Y, rows, cols);
  const Matrix ref = r.inner.X_hat;
  ASSERT_EQ(r.estimate.rows(), 4);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      EXPECT_NEAR(r.estimate(static_cast<Index>(a), static_cast<Index>(b)), ref(rows[a], cols[b]), 1e-12);
    }
  }
}

TEST(Submatrix, BaselineOnPureNoiseIsZero) {
  const Matrix G = sdn::testing::gaussian_matrix(100, 200, 7, 1.0 / std::sqrt(200.0));
  std::vector<Index> rows, cols;
  for (Index i = 0; i < 50; ++i) rows.push_back(i);
  for (Index j = 0; j < 100; ++j) cols.push_back(j);
  EXPECT_EQ(shrink_submatrix_baseline(G, rows, cols).estimate.norm(), 0.0);
}

TEST(Submatrix, EmptySelection) {
  const Matrix Y = Matrix::Zero(5, 5);
  EXPECT_THROW(submatrix_denoise(Y, {}, {0}), InvalidArgument);
  EXPECT_THROW(shrink_submatrix_baseline(Y, {0}, {}), InvalidArgument);
}

TEST(Backproject, Cases) {
  const Matrix A = sdn::testing::gaussian_matrix(4, 6, 2);
  const SamplingPattern full = full_pattern(A);
  EXPECT_EQ(backproject(full), A);
  EXPECT_EQ(backproject(full, sample(A, full)), A);
  SamplingPattern none = full;
  none.observed.clear();
  EXPECT_EQ(backproject(none), Matrix::Zero(4, 6));
  SamplingPattern half = full;
  half.observed.clear();
  for (const Entry& e : full.observed) {
    if ((e.row + e.col) % 2 == 0) half.observed.push_back(e);
  }
  const auto mask = half.mask();
  EXPECT_EQ(backproject(half), A.cwiseProduct(mask.cast<double>()));
}

TEST(Backproject, AdjointIdentity) {
  const Matrix A = sdn::testing::gaussian_matrix(7, 9, 3);
  SamplingPattern pat = full_pattern(A);
  std::vector<Entry> keep;
  for (std::size_t k = 0; k < pat.observed.size(); k += 3) keep.push_back(pat.observed[k]);
  pat.observed = keep;
  const Vector y = sdn::testing::uniform_vector(static_cast<Index>(keep.size()), 4, -1.0, 1.0);
  const Matrix B = sdn::testing::gaussian_matrix(7, 9, 5);
  EXPECT_NEAR(sample(B, pat).dot(y), backproject(pat, y).cwiseProduct(B).sum(), 1e-12);
}

TEST(SamplingPattern, Validation) {
  SamplingPattern pat = full_pattern(Matrix::Ones(2, 2));
  EXPECT_NO_THROW(pat.validate());
  SamplingPattern zero_q = pat;
  zero_q.q_row[0] = 0.0;
  EXPECT_THROW(zero_q.validate(), InvalidArgument);
  EXPECT_THROW(missing_data_denoise(zero_q), InvalidArgument);
  SamplingPattern dup = pat;
  dup.observed.push_back(dup.observed.front());
  EXPECT_THROW(dup.validate(), InvalidArgument);
  SamplingPattern out = pat;
  out.observed.push_back({2, 0, 1.0});
  EXPECT_THROW(out.validate(), InvalidArgument);
}

TEST(MissingData, FullSamplingIsShrinkage) {
  Vector t(2);
  t << 3.0, 2.0;
  const auto inst = sdn::testing::spiked_instance(80, 160, t, 44);
  const double sd = 0.7;
  const double scale = sd * std::sqrt(160.0);
  const PipelineResult r = missing_data_denoise(full_pattern(inst.Y * scale), sd);
  const DenoiseResult s = svs_shrink(inst.Y);
  EXPECT_LE((r.estimate / scale - s.X_hat).norm(), 1e-8 * s.X_hat.norm());
}

TEST(MissingData, ProbabilityEstimateUnderFullSampling) {
  const auto [qr, qc] = estimate_sampling_probabilities(full_pattern(Matrix::Ones(3, 5)));
  EXPECT_LT((qr - Vector::Ones(3)).norm(), 1e-14);
  EXPECT_LT((qc - Vector::Ones(5)).norm(), 1e-14);
}
