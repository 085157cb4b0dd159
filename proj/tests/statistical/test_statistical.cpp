// Monte Carlo invariants at moderate dimensions. Slower than the unit tests.

#include <gtest/gtest.h>

#include <cmath>

#include "sdn/applications.hpp"
#include "sdn/localized.hpp"
#include "sdn/simlab/experiment.hpp"
#include "sdn/simlab/metrics.hpp"
#include "sdn/simlab/rng.hpp"
#include "sdn/svd.hpp"
#include "test_support.hpp"

using namespace sdn;

namespace {

Vector linspace(double lo, double hi, Index m) { return Vector::LinSpaced(m, lo, hi); }

}  // namespace

TEST(Localized, NeverMuchWorseThanShrinkage) {
  const Index p = 800, n = 800;
  const Partition rows = make_equispaced_partition(p, 4);
  const Partition cols = make_equispaced_partition(n, 4);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::uint64_t seed = simlab::derive_seed(99, i);
    simlab::Signal sig;
    double level = 1.0;
    if (i % 2 == 0) {
      Vector t(2);
      t << 3.0, 1.7;
      sig = simlab::gen_signal(simlab::SignalSpec{p, n, simlab::RandomOrthonormal{t, seed}});
    } else {
      const double f = 0.55 + 0.045 * static_cast<double>(i);
      sig = simlab::gen_signal(simlab::SignalSpec{p, n, simlab::Checkerboard{std::min(f, 1.0), 4, 4}});
      level = 0.1;
    }
    simlab::NoiseSpec ns;
    ns.seed = simlab::derive_seed(seed, 2);
    const Matrix Y = sig.X / level + simlab::gen_noise(ns, p, n);
    const SpectralBasis basis = spectral_basis(Y);
    const Matrix loc = localized_denoise(basis, rows, cols).X_hat * level;
    const Matrix shr = svs_shrink(basis).X_hat * level;
    const double x2 = sig.X.squaredNorm();
    EXPECT_LE((loc - sig.X).squaredNorm(), (shr - sig.X).squaredNorm() + 0.02 * x2) << "instance " << i;
  }
}

TEST(Localized, StrictGainUnderHeterogeneity) {
  simlab::ExperimentConfig cfg;
  cfg.scenario = "localized-checkerboard";
  cfg.replicates = 50;
  cfg.seed = 4242;
  cfg.params = {{"f", {0.8}}};
  const auto rep = simlab::run_experiment(cfg);
  const auto& gap = rep.aggregate("f=0.8", "loss_gap").summary;
  EXPECT_GT(gap.mean, 3.0 * gap.stderr_mean());
}

TEST(Whitening, SnrGainAtLeastTau) {
  const Index p = 1000, n = 2000;
  const Vector s = linspace(0.1, 1.0, p);
  const Vector tt = linspace(0.1, 1.0, n);
  const NoiseCovariances cov = NoiseCovariances{Covariance::diagonal(s), Covariance::diagonal(tt)}.normalize();
  const double tau = snr_gain_tau(cov);
  ASSERT_GT(tau, 1.5);
  const Vector& sv = cov.S.eigenvalues();
  const Vector& tv = cov.T.eigenvalues();
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const Matrix u = simlab::random_orthonormal(p, 1, simlab::derive_seed(rep, 1));
    const Matrix v = simlab::random_orthonormal(n, 1, simlab::derive_seed(rep, 2));
    simlab::NoiseSpec ns;
    ns.seed = simlab::derive_seed(rep, 3);
    const Matrix G = simlab::gen_noise(ns, p, n);
    const Matrix N = sv.cwiseSqrt().asDiagonal() * G * tv.cwiseSqrt().asDiagonal();
    const double t = 2.0;
    const double snr = t * t / std::pow(operator_norm(N), 2);
    const double t_w = t * (sv.cwiseSqrt().cwiseInverse().asDiagonal() * u).norm() *
                       (tv.cwiseSqrt().cwiseInverse().asDiagonal() * v).norm();
    const double snr_w = t_w * t_w / std::pow(operator_norm(G), 2);
    EXPECT_GE(snr_w, 0.98 * tau * snr) << "tau " << tau << " ratio " << snr_w / snr;
  }
}

TEST(NoiseCovariances, RowVariancesConsistent) {
  const Index p = 200, n = 4000;
  const Vector a = linspace(0.2, 2.0, p);
  simlab::NoiseSpec ns;
  ns.seed = 8;
  const Matrix Y = a.cwiseSqrt().asDiagonal() * simlab::gen_noise(ns, p, n);
  const NoiseCovariances cov = estimate_noise_covariances(Y);
  EXPECT_LT((cov.S.eigenvalues() - a).cwiseAbs().maxCoeff(), 0.1);
  // column estimates average only p rows: b_j - 1 has sd sqrt(2 sum a^2) / sum a
  const double sd = std::sqrt(2.0 * a.squaredNorm()) / a.sum();
  const double rms = std::sqrt((cov.T.eigenvalues().array() - 1.0).square().mean());
  EXPECT_NEAR(rms / sd, 1.0, 0.15);
}

TEST(Submatrix, BeatsBaselineForGenericVectors) {
  const Index p = 1000, n = 2000;
  std::vector<Index> rows, cols;
  for (Index i = 0; i < p / 2; ++i) rows.push_back(i);
  for (Index j = 0; j < n / 2; ++j) cols.push_back(j);
  double loss_alg = 0.0, loss_base = 0.0;
  for (std::uint64_t r = 0; r < 50; ++r) {
    Vector t(1);
    t << 1.6;
    const auto inst = sdn::testing::spiked_instance(p, n, t, simlab::derive_seed(77, r));
    const Matrix X0 = inst.signal.X.topLeftCorner(p / 2, n / 2);
    loss_alg += (submatrix_denoise(inst.Y, rows, cols).estimate - X0).squaredNorm();
    loss_base += (shrink_submatrix_baseline(inst.Y, rows, cols).estimate - X0).squaredNorm();
  }
  EXPECT_LT(loss_alg, loss_base);
}

TEST(Amse, PredictsWeightedLoss) {
  const Index p = 800, n = 1600;
  const WeightOperator om = WeightOperator::diagonal(linspace(0.2, 1.5, p));
  const WeightOperator pi = WeightOperator::diagonal(linspace(1.0, 0.1, n));
  std::vector<double> ratio;
  for (std::uint64_t r = 0; r < 10; ++r) {
    Vector t(2);
    t << 3.0, 2.0;
    const auto inst = sdn::testing::spiked_instance(p, n, t, simlab::derive_seed(5, r));
    const DenoiseResult res = spectral_denoise(inst.Y, om, pi);
    ratio.push_back(weighted_squared_norm(res.X_hat - inst.signal.X, om, pi) / res.amse_estimate);
  }
  const simlab::Summary s = simlab::summarize(ratio);
  EXPECT_NEAR(s.mean, 1.0, 0.1);
}

TEST(RankEstimation, NoSignalRarelyDetects) {
  simlab::ExperimentConfig cfg;
  cfg.scenario = "rank-estimation";
  cfg.replicates = 40;
  cfg.seed = 3;
  cfg.params = {{"signal", false}, {"p", 200}, {"n", 400}};
  const auto rep = simlab::run_experiment(cfg);
  const auto& r = rep.aggregate("gaussian", "naive_rank").summary;
  EXPECT_GE(r.min, 0.0);
  EXPECT_LT(r.mean, 0.5);
}

TEST(RankEstimation, HeavyTailsInflateRank) {
  simlab::ExperimentConfig cfg;
  cfg.scenario = "rank-estimation";
  cfg.replicates = 10;
  cfg.seed = 3;
  cfg.params = {{"noise", {"gaussian", "t3"}}};
  const auto rep = simlab::run_experiment(cfg);
  EXPECT_GT(rep.aggregate("t3", "naive_rank").summary.mean, 2.0 * rep.aggregate("gaussian", "naive_rank").summary.mean);
}
