#include "sdn/spiked.hpp"

#include <cmath>
#include <sstream>

#include "sdn/errors.hpp"

namespace sdn {

AspectRatio::AspectRatio(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("aspect ratio must be positive and finite");
  }
}

AspectRatio AspectRatio::of(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("matrix dimensions must be positive");
  return AspectRatio(static_cast<double>(rows) / static_cast<double>(cols));
}

double AspectRatio::bulk_edge() const noexcept { return 1.0 + std::sqrt(gamma_); }

double AspectRatio::detection_threshold() const noexcept { return std::sqrt(std::sqrt(gamma_)); }

double forward_singular_value(double t, AspectRatio gamma) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive and finite");
  const double g = gamma.value();
  if (t <= gamma.detection_threshold()) return gamma.bulk_edge();
  const double t2 = t * t;
  return std::sqrt((t2 + 1.0) * (1.0 + g / t2));
}

double invert_singular_value(double lambda, AspectRatio gamma) {
  if (!std::isfinite(lambda)) throw InvalidArgument("singular value must be finite");
  if (!(lambda > gamma.bulk_edge())) {
    std::ostringstream msg;
    msg << "singular value " << lambda << " is not above the bulk edge " << gamma.bulk_edge();
    throw BelowThreshold(0, msg.str());
  }
  const double g = gamma.value();
  const double a = lambda * lambda - 1.0 - g;
  // a^2 - 4g factored as (a - 2 sqrt g)(a + 2 sqrt g) to keep precision near the edge
  const double rg = std::sqrt(g);
  const double disc = std::max(0.0, (a - 2.0 * rg) * (a + 2.0 * rg));
  return std::sqrt(0.5 * (a + std::sqrt(disc)));
}

Cosines cosines(double t, AspectRatio gamma) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive and finite");
  Cosines out;
  if (t <= gamma.detection_threshold()) return out;
  const double g = gamma.value();
  const double t2 = t * t;
  const double t4 = t2 * t2;
  const double num = t4 - g;
  // c^2 = (t^4 - g) / (t^2 (t^2 + g)), s^2 = g (t^2 + 1) / (t^2 (t^2 + g))
  const double den = t2 * (t2 + g);
  const double den_tilde = t2 * (t2 + 1.0);
  const double c2 = num / den;
  const double ct2 = num / den_tilde;
  out.c = std::sqrt(c2);
  out.c_tilde = std::sqrt(ct2);
  out.s = std::sqrt(1.0 - c2);
  out.s_tilde = std::sqrt(1.0 - ct2);
  return out;
}

namespace {

void require_descending(std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0) {
      throw InvalidArgument("singular values must be finite and nonnegative");
    }
    if (k > 0 && values[k] > values[k - 1]) {
      throw InvalidArgument("singular values must be sorted in descending order");
    }
  }
}

}  // namespace

Index naive_rank(std::span<const double> singular_values, AspectRatio gamma, double margin) {
  if (!(margin >= 0.0)) throw InvalidArgument("margin must be nonnegative");
  require_descending(singular_values);
  const double threshold = gamma.bulk_edge() + margin;
  Index r = 0;
  for (double v : singular_values) {
    if (v > threshold) ++r;
  }
  return r;
}

SpikeParams estimate_spike_params(std::span<const double> singular_values, AspectRatio gamma,
                                  std::optional<Index> rank) {
  require_descending(singular_values);
  Index r = 0;
  if (rank) {
    if (*rank < 0 || static_cast<std::size_t>(*rank) > singular_values.size()) {
      throw InvalidArgument("requested rank exceeds the number of singular values supplied");
    }
    r = *rank;
  } else {
    r = naive_rank(singular_values, gamma, 0.0);
  }

  SpikeParams sp;
  sp.gamma = gamma;
  sp.lambda.resize(r);
  sp.t.resize(r);
  sp.c.resize(r);
  sp.c_tilde.resize(r);
  sp.s.resize(r);
  sp.s_tilde.resize(r);
  for (Index k = 0; k < r; ++k) {
    const double lam = singular_values[static_cast<std::size_t>(k)];
    if (!(lam > gamma.bulk_edge())) {
      std::ostringstream msg;
      msg << "component " << k << " has singular value " << lam
          << " at or below the bulk edge " << gamma.bulk_edge();
      throw BelowThreshold(static_cast<std::size_t>(k), msg.str());
    }
    const double t = invert_singular_value(lam, gamma);
    const Cosines cs = cosines(t, gamma);
    sp.lambda[k] = lam;
    sp.t[k] = t;
    sp.c[k] = cs.c;
    sp.c_tilde[k] = cs.c_tilde;
    sp.s[k] = cs.s;
    sp.s_tilde[k] = cs.s_tilde;
  }
  return sp;
}

}  // namespace sdn
