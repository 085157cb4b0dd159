#include "sdn/simlab/signals.hpp"

#include <cmath>

#include "sdn/errors.hpp"
#include "sdn/simlab/rng.hpp"

namespace sdn::simlab {

namespace {

// Cell index of every coordinate for `cells` nearly equispaced segments,
// earlier segments taking the larger size.
std::vector<Index> cell_of(Index dim, Index cells) {
  if (cells < 1 || cells > dim) throw InvalidArgument("number of cells must lie in [1, dim]");
  std::vector<Index> out(static_cast<std::size_t>(dim));
  const Index base = dim / cells;
  const Index extra = dim % cells;
  Index pos = 0;
  for (Index c = 0; c < cells; ++c) {
    const Index len = base + (c < extra ? 1 : 0);
    for (Index k = 0; k < len; ++k) out[static_cast<std::size_t>(pos++)] = c;
  }
  return out;
}

// Exact SVD of the piecewise constant matrix X(i, j) = K(cell(i), cell(j)).
Signal block_signal(Index p, Index n, const Matrix& K) {
  const auto rc = cell_of(p, K.rows());
  const auto cc = cell_of(n, K.cols());
  Vector rsize = Vector::Zero(K.rows());
  Vector csize = Vector::Zero(K.cols());
  for (Index c : rc) rsize[c] += 1.0;
  for (Index c : cc) csize[c] += 1.0;
  const Matrix M = rsize.cwiseSqrt().asDiagonal() * K * csize.cwiseSqrt().asDiagonal();
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv[r] > 1e-12 * sv[0]) ++r;

  Signal s;
  s.t = sv.head(r);
  s.U.resize(p, r);
  s.V.resize(n, r);
  for (Index i = 0; i < p; ++i) {
    const Index c = rc[static_cast<std::size_t>(i)];
    s.U.row(i) = svd.matrixU().row(c).head(r) / std::sqrt(rsize[c]);
  }
  for (Index j = 0; j < n; ++j) {
    const Index c = cc[static_cast<std::size_t>(j)];
    s.V.row(j) = svd.matrixV().row(c).head(r) / std::sqrt(csize[c]);
  }
  s.X.resize(p, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < p; ++i) s.X(i, j) = K(rc[static_cast<std::size_t>(i)], cc[static_cast<std::size_t>(j)]);
  }
  return s;
}

Signal from_factors(Matrix U, Vector t, Matrix V) {
  Signal s;
  s.X = U * t.asDiagonal() * V.transpose();
  s.U = std::move(U);
  s.t = std::move(t);
  s.V = std::move(V);
  return s;
}

void check_dims(const SignalSpec& spec) {
  if (spec.p <= 0 || spec.n <= 0) throw InvalidArgument("signal dimensions must be positive");
}

Signal make(const SignalSpec& spec, const Checkerboard& cb) {
  if (!(cb.f >= 0.5 && cb.f <= 1.0)) throw InvalidArgument("checkerboard energy fraction must lie in [1/2, 1]");
  const auto rc = cell_of(spec.p, cb.cell_rows);
  const auto cc = cell_of(spec.n, cb.cell_cols);
  // count entries on light cells ((row cell + col cell) even)
  Vector rsize = Vector::Zero(cb.cell_rows);
  Vector csize = Vector::Zero(cb.cell_cols);
  for (Index c : rc) rsize[c] += 1.0;
  for (Index c : cc) csize[c] += 1.0;
  double light = 0.0;
  double dark = 0.0;
  for (Index a = 0; a < cb.cell_rows; ++a) {
    for (Index b = 0; b < cb.cell_cols; ++b) {
      ((a + b) % 2 == 0 ? light : dark) += rsize[a] * csize[b];
    }
  }
  if (dark == 0.0 && cb.f < 1.0) throw InvalidArgument("checkerboard needs at least one dark cell");
  const double lv = std::sqrt(cb.f / light);
  const double dv = dark > 0.0 ? std::sqrt((1.0 - cb.f) / dark) : 0.0;
  Matrix K(cb.cell_rows, cb.cell_cols);
  for (Index a = 0; a < cb.cell_rows; ++a) {
    for (Index b = 0; b < cb.cell_cols; ++b) K(a, b) = ((a + b) % 2 == 0) ? lv : dv;
  }
  return block_signal(spec.p, spec.n, K);
}

Signal make(const SignalSpec& spec, const RandomOrthonormal& ro) {
  const Index r = ro.t.size();
  if (r < 1 || r > std::min(spec.p, spec.n)) throw InvalidArgument("rank must lie in [1, min(p, n)]");
  for (Index k = 0; k < r; ++k) {
    if (!(ro.t[k] > 0.0)) throw InvalidArgument("singular values must be positive");
    if (k > 0 && !(ro.t[k] < ro.t[k - 1])) throw InvalidArgument("singular values must be strictly decreasing");
  }
  return from_factors(random_orthonormal(spec.p, r, derive_seed(ro.seed, 0)),
                      ro.t, random_orthonormal(spec.n, r, derive_seed(ro.seed, 1)));
}

Vector two_level(Index dim, double first_share) {
  const Index h = dim / 2;
  if (h == 0) throw InvalidArgument("dimension too small for a two-level vector");
  Vector v(dim);
  v.head(h).setConstant(std::sqrt(first_share / static_cast<double>(h)));
  v.tail(dim - h).setConstant(std::sqrt((1.0 - first_share) / static_cast<double>(dim - h)));
  return v;
}

Signal make(const SignalSpec& spec, const PiecewiseConstant& pc) {
  if (!(pc.t > 0.0)) throw InvalidArgument("singular value must be positive");
  if (!(pc.energy_fraction >= 0.0 && pc.energy_fraction <= 1.0)) {
    throw InvalidArgument("energy fraction must lie in [0, 1]");
  }
  Vector t(1);
  t[0] = pc.t;
  return from_factors(two_level(spec.p, pc.energy_fraction), t, two_level(spec.n, pc.energy_fraction));
}

Matrix const_split(Index dim) {
  if (dim % 2 != 0) throw InvalidArgument("constant/split signal needs even dimensions");
  Matrix F(dim, 2);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  F.col(0).setConstant(a);
  F.col(1).head(dim / 2).setConstant(a);
  F.col(1).tail(dim / 2).setConstant(-a);
  return F;
}

Signal make(const SignalSpec& spec, const ConstantSplit& cs) {
  if (!(cs.t1 > cs.t2 && cs.t2 > 0.0)) throw InvalidArgument("need t1 > t2 > 0");
  Vector t(2);
  t << cs.t1, cs.t2;
  return from_factors(const_split(spec.p), t, const_split(spec.n));
}

Signal make(const SignalSpec& spec, const BlockImage& bi) {
  if (bi.cells.size() == 0 || !bi.cells.allFinite()) throw InvalidArgument("block image must be nonempty and finite");
  return block_signal(spec.p, spec.n, bi.cells);
}

Signal make(const SignalSpec& spec, const Custom& c) {
  const Index r = c.t.size();
  if (c.U.rows() != spec.p || c.V.rows() != spec.n || c.U.cols() != r || c.V.cols() != r) {
    throw InvalidArgument("custom factors do not match the signal dimensions");
  }
  const double ou = (c.U.transpose() * c.U - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  const double ov = (c.V.transpose() * c.V - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (ou > 1e-8 || ov > 1e-8) throw InvalidArgument("custom factors must have orthonormal columns");
  return from_factors(c.U, c.t, c.V);
}

}  // namespace

Matrix random_orthonormal(Index p, Index r, std::uint64_t seed) {
  if (r < 1 || r > p) throw InvalidArgument("need 1 <= r <= p");
  RandomStream rng(seed);
  Matrix G(p, r);
  for (Index j = 0; j < r; ++j) {
    for (Index i = 0; i < p; ++i) G(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(p, r);
  // fix signs so the factor is a deterministic function of G
  const Matrix R = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (Index k = 0; k < r; ++k) {
    if (R(k, k) < 0.0) Q.col(k) = -Q.col(k);
  }
  return Q;
}

Matrix logo_cells() {
  // Three letter-like strokes on a 15 x 30 grid.
  Matrix K = Matrix::Zero(15, 30);
  auto fill = [&](Index r0, Index r1, Index c0, Index c1, double v) {
    for (Index r = r0; r < r1; ++r) {
      for (Index c = c0; c < c1; ++c) K(r, c) = v;
    }
  };
  fill(2, 13, 2, 4, 1.0);
  fill(2, 13, 6, 8, 1.0);
  fill(5, 13, 10, 12, 1.0);
  fill(2, 4, 6, 12, 1.0);
  fill(2, 10, 14, 16, 0.6);
  fill(2, 4, 18, 28, 1.0);
  fill(4, 13, 22, 24, 1.0);
  fill(7, 9, 18, 21, 0.3);
  return K;
}

Signal gen_signal(const SignalSpec& spec) {
  check_dims(spec);
  return std::visit([&](const auto& k) { return make(spec, k); }, spec.kind);
}

}  // namespace sdn::simlab
