#include "dra/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dra/errors.hpp"

namespace dra {

void require_finite(const Vector& x) {
  if (!x.allFinite()) {
    throw std::invalid_argument("vector has a non-finite entry");
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw DimensionError("dimension mismatch: " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("orthonormalize: tol must be positive");
  }
  std::vector<Vector> basis;
  if (vectors.empty()) return basis;
  const Eigen::Index n = vectors.front().size();
  for (const Vector& v : vectors) {
    require_same_dim(v.size(), n);
    require_finite(v);
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) r -= q.dot(r) * q;
    }
    const double rn = r.norm();
    if (rn > tol * (1.0 + v.norm())) basis.push_back(r / rn);
  }
  return basis;
}

Matrix orthonormalize_columns(const Matrix& a, double tol) {
  std::vector<Vector> cols;
  cols.reserve(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) cols.push_back(a.col(j));
  const std::vector<Vector> basis = orthonormalize(cols, tol);
  Matrix out(a.rows(), static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    out.col(j) = basis[static_cast<std::size_t>(j)];
  }
  return out;
}

Matrix null_space(const Matrix& a, double rel_tol) {
  if (a.cols() == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

Vector min_norm_solve(const Matrix& a, const Vector& b, double rel_tol) {
  require_same_dim(a.rows(), b.size());
  if (a.cols() == 0) return Vector(0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  const Vector y = svd.matrixU().transpose() * b;
  Vector z = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) z(i) = y(i) / sv(i);
  }
  return svd.matrixV() * z;
}

double spectral_norm_estimate(const Matrix& a, int max_iters, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // Deterministic non-degenerate start vector.
  Vector u(a.cols());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u(i) = 1.0 + static_cast<double>(i) / static_cast<double>(u.size() + 1);
  }
  u.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const Vector w = a.transpose() * (a * u);
    const double next = u.dot(w);  // Rayleigh quotient of a^T a
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    u = w / wn;
    const bool settled = std::abs(next - lambda) <= tol * std::max(1.0, next);
    lambda = next;
    if (settled) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace dra
