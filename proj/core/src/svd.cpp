#include "sdn/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "sdn/errors.hpp"

namespace sdn {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Fixed pseudo-random vector orthogonal to the first `used` columns of basis.
Vector fresh_direction(Index dim, std::uint64_t salt, const Matrix& basis, Index used) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const std::uint64_t h = mix(salt * 0x100000001B3ULL + static_cast<std::uint64_t>(i));
    v[i] = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
  }
  for (int pass = 0; pass < 2 && used > 0; ++pass) {
    v.noalias() -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
  }
  const double nrm = v.norm();
  if (nrm > 0.0) v /= nrm;
  return v;
}

void reorthogonalize(Vector& v, const Matrix& basis, Index used) {
  if (used == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    v.noalias() -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
  }
}

SingularTriplets dense_triplets(const MatrixRef& Y, Index k) {
  Eigen::BDCSVD<Matrix> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularTriplets out;
  out.values = svd.singularValues().head(k);
  out.U = svd.matrixU().leftCols(k);
  out.V = svd.matrixV().leftCols(k);
  return out;
}

// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization,
// for a tall matrix A (rows >= cols).
SingularTriplets lanczos_tall(const MatrixRef& A, Index k, double tol) {
  const Index p = A.rows();
  const Index n = A.cols();
  const Index mmax = n;
  Matrix P(p, mmax);
  Matrix Q(n, mmax + 1);
  std::vector<double> alpha, beta;
  alpha.reserve(static_cast<std::size_t>(mmax));
  beta.reserve(static_cast<std::size_t>(mmax));

  Q.col(0) = fresh_direction(n, 1, Q, 0);
  const double tiny = std::numeric_limits<double>::epsilon();
  double scale = 0.0;

  Index next_check = std::min(mmax, std::max<Index>(2 * k + 10, 20));
  for (Index j = 0; j < mmax; ++j) {
    Vector u = A * Q.col(j);
    if (j > 0) u -= beta.back() * P.col(j - 1);
    reorthogonalize(u, P, j);
    double a = u.norm();
    scale = std::max(scale, a);
    if (a <= tiny * std::max(scale, 1.0) * 16.0) {
      a = 0.0;
      u = fresh_direction(p, 2 * static_cast<std::uint64_t>(j) + 3, P, j);
    } else {
      u /= a;
    }
    P.col(j) = u;

    Vector w = A.transpose() * P.col(j);
    w -= a * Q.col(j);
    reorthogonalize(w, Q, j + 1);
    double b = w.norm();
    scale = std::max(scale, b);
    if (b <= tiny * std::max(scale, 1.0) * 16.0) {
      b = 0.0;
      if (j + 1 < n) {
        w = fresh_direction(n, 2 * static_cast<std::uint64_t>(j) + 4, Q, j + 1);
      } else {
        w.setZero();
      }
    } else {
      w /= b;
    }
    Q.col(j + 1) = w;
    alpha.push_back(a);
    beta.push_back(b);

    const Index m = j + 1;
    if (m < k || (m < next_check && m < mmax)) continue;

    Matrix B = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      B(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) B(i, i + 1) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Matrix> bsvd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& sv = bsvd.singularValues();
    const double smax = std::max(sv[0], tiny);
    bool done = (m == mmax);
    if (!done) {
      done = true;
      for (Index i = 0; i < k; ++i) {
        const double resid = std::abs(b * bsvd.matrixU()(m - 1, i));
        if (resid > tol * smax) {
          done = false;
          break;
        }
      }
    }
    if (done) {
      SingularTriplets out;
      out.values = sv.head(k);
      out.U = P.leftCols(m) * bsvd.matrixU().leftCols(k);
      out.V = Q.leftCols(m) * bsvd.matrixV().leftCols(k);
      return out;
    }
    next_check = std::min(mmax, m + std::max<Index>(5, m / 8));
  }
  return dense_triplets(A, k);
}

}  // namespace

SingularTriplets leading_triplets(const MatrixRef& Y, Index k, const SvdOptions& opts) {
  const Index dim = std::min(Y.rows(), Y.cols());
  if (dim == 0) throw InvalidArgument("cannot take the SVD of an empty matrix");
  if (k < 0 || k > dim) throw InvalidArgument("requested number of singular triplets out of range");
  if (!Y.allFinite()) throw InvalidArgument("matrix contains non-finite entries");
  if (k == 0) {
    return SingularTriplets{Matrix(Y.rows(), 0), Vector(0), Matrix(Y.cols(), 0)};
  }
  if (dim <= opts.dense_cutoff || 4 * k >= dim) return dense_triplets(Y, k);
  if (Y.rows() >= Y.cols()) return lanczos_tall(Y, k, opts.tolerance);
  const Matrix Yt = Y.transpose();
  SingularTriplets t = lanczos_tall(Yt, k, opts.tolerance);
  std::swap(t.U, t.V);
  return t;
}

SingularTriplets triplets_above(const MatrixRef& Y, double threshold, Index min_count, const SvdOptions& opts) {
  const Index dim = std::min(Y.rows(), Y.cols());
  if (min_count < 0 || min_count > dim) throw InvalidArgument("requested rank out of range");
  Index want = std::min(dim, std::max<Index>(min_count + 1, 4));
  for (;;) {
    SingularTriplets t = leading_triplets(Y, want, opts);
    Index above = 0;
    while (above < want && t.values[above] > threshold) ++above;
    if (above < want || want == dim) {
      const Index keep = std::max(above, min_count);
      t.values.conservativeResize(keep);
      t.U.conservativeResize(Eigen::NoChange, keep);
      t.V.conservativeResize(Eigen::NoChange, keep);
      return t;
    }
    want = std::min(dim, 2 * want);
  }
}

double operator_norm(const MatrixRef& Y, const SvdOptions& opts) {
  return leading_triplets(Y, 1, opts).values[0];
}

}  // namespace sdn
