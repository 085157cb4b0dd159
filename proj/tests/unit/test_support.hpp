#pragma once

#include <cstdint>

#include "sdn/denoise.hpp"
#include "sdn/simlab/noise.hpp"
#include "sdn/simlab/rng.hpp"
#include "sdn/simlab/signals.hpp"

namespace sdn::testing {

inline Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed, double sd = 1.0) {
  simlab::RandomStream rng(seed);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = sd * rng.normal();
  }
  return m;
}

inline Vector uniform_vector(Index n, std::uint64_t seed, double lo, double hi) {
  simlab::RandomStream rng(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.uniform();
  return v;
}

// Y = U diag(t) V^T + G with G of entry variance 1/n; U, V random orthonormal.
struct SpikedInstance {
  simlab::Signal signal;
  Matrix Y;
};

inline SpikedInstance spiked_instance(Index p, Index n, const Vector& t, std::uint64_t seed) {
  SpikedInstance inst;
  inst.signal = simlab::gen_signal(simlab::SignalSpec{p, n, simlab::RandomOrthonormal{t, simlab::derive_seed(seed, 1)}});
  simlab::NoiseSpec ns;
  ns.seed = simlab::derive_seed(seed, 2);
  inst.Y = inst.signal.X + simlab::gen_noise(ns, p, n);
  return inst;
}

// Geometry built from the limit formulas for chosen population quantities:
// D_kk = c_k^2 alpha_k + s_k^2 mu, D_jk = c_j c_k e_jk, C_jk = e_jk c_j.
inline WeightedGeometry synthetic_geometry(const SpikeParams& sp, const Matrix& E, const Matrix& Et, double mu,
                                           double nu) {
  const Index r = sp.rank();
  WeightedGeometry g;
  g.rank = r;
  g.t = sp.t;
  g.mu = mu;
  g.nu = nu;
  g.E = E;
  g.E_tilde = Et;
  g.alpha = E.diagonal();
  g.beta = Et.diagonal();
  g.D.resize(r, r);
  g.D_tilde.resize(r, r);
  g.C.resize(r, r);
  g.C_tilde.resize(r, r);
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < r; ++k) {
      g.D(j, k) = (j == k) ? sp.c[k] * sp.c[k] * E(k, k) + sp.s[k] * sp.s[k] * mu : sp.c[j] * sp.c[k] * E(j, k);
      g.D_tilde(j, k) = (j == k) ? sp.c_tilde[k] * sp.c_tilde[k] * Et(k, k) + sp.s_tilde[k] * sp.s_tilde[k] * nu
                                 : sp.c_tilde[j] * sp.c_tilde[k] * Et(j, k);
      g.C(j, k) = E(j, k) * sp.c[j];
      g.C_tilde(j, k) = Et(j, k) * sp.c_tilde[j];
    }
  }
  return g;
}

// Spike parameters for given population values t (all above threshold).
inline SpikeParams spikes_for(const Vector& t, AspectRatio gamma) {
  std::vector<double> lam;
  for (Index k = 0; k < t.size(); ++k) lam.push_back(forward_singular_value(t[k], gamma));
  return estimate_spike_params(lam, gamma, t.size());
}

// Random symmetric positive-definite r x r matrix with eigenvalues in [lo, hi].
inline Matrix random_spd(Index r, std::uint64_t seed, double lo, double hi) {
  const Matrix Q = simlab::random_orthonormal(r, r, seed);
  const Vector ev = uniform_vector(r, seed ^ 0x5555u, lo, hi);
  Matrix m = Q * ev.asDiagonal() * Q.transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace sdn::testing
