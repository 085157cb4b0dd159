#include "sdn/geometry.hpp"

#include <cmath>
#include <sstream>

#include "sdn/errors.hpp"

namespace sdn {

double trace_weight(const WeightOperator& omega, Index dim) {
  if (dim != omega.cols()) throw InvalidArgument("trace_weight: dimension mismatch");
  return omega.squared_frobenius() / static_cast<double>(dim);
}

Matrix weighted_gram(const MatrixRef& vectors, const WeightOperator& omega) {
  if (vectors.rows() != omega.cols()) throw InvalidArgument("weighted_gram: dimension mismatch");
  for (Index k = 0; k < vectors.cols(); ++k) {
    if (std::abs(vectors.col(k).norm() - 1.0) > 1e-8) {
      throw InvalidArgument("weighted_gram: columns must have unit norm");
    }
  }
  return omega.gram(vectors);
}

namespace {

void recover_side(const Matrix& D, const Vector& c, const Vector& s, double mu, const GeometryOptions& opts,
                  Vector& diag, Matrix& E, Matrix& C, std::vector<bool>& clipped) {
  const Index r = c.size();
  diag.resize(r);
  E.resize(r, r);
  C.resize(r, r);
  for (Index k = 0; k < r; ++k) {
    double a = (D(k, k) - s[k] * s[k] * mu) / (c[k] * c[k]);
    if (!(a >= opts.alpha_floor)) {
      a = opts.alpha_floor;
      clipped[static_cast<std::size_t>(k)] = true;
    }
    diag[k] = a;
  }
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < r; ++k) {
      E(j, k) = (j == k) ? diag[k] : D(j, k) / (c[j] * c[k]);
    }
  }
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < r; ++k) C(j, k) = E(j, k) * c[j];
  }
}

}  // namespace

WeightedGeometry recover_population_geometry(const Matrix& D, const Matrix& D_tilde, const SpikeParams& spikes,
                                             double mu, double nu, const GeometryOptions& opts) {
  const Index r = spikes.rank();
  if (D.rows() != r || D.cols() != r || D_tilde.rows() != r || D_tilde.cols() != r) {
    throw InvalidArgument("geometry: Gram matrices must be rank x rank");
  }
  if (!(mu > 0.0) || !(nu > 0.0) || !std::isfinite(mu) || !std::isfinite(nu)) {
    throw InvalidArgument("geometry: mu and nu must be positive");
  }
  for (Index k = 0; k < r; ++k) {
    if (spikes.c[k] < opts.min_cosine || spikes.c_tilde[k] < opts.min_cosine) {
      std::ostringstream msg;
      msg << "component " << k << " has cosine below " << opts.min_cosine
          << "; weighted geometry cannot be recovered";
      throw IllConditioned(static_cast<std::size_t>(k), msg.str());
    }
  }

  WeightedGeometry g;
  g.rank = r;
  g.t = spikes.t;
  g.D = D;
  g.D_tilde = D_tilde;
  g.mu = mu;
  g.nu = nu;
  std::vector<bool> clipped(static_cast<std::size_t>(r), false);
  recover_side(D, spikes.c, spikes.s, mu, opts, g.alpha, g.E, g.C, clipped);
  recover_side(D_tilde, spikes.c_tilde, spikes.s_tilde, nu, opts, g.beta, g.E_tilde, g.C_tilde, clipped);
  for (Index k = 0; k < r; ++k) {
    if (clipped[static_cast<std::size_t>(k)]) g.clipped.push_back(k);
  }
  return g;
}

}  // namespace sdn
