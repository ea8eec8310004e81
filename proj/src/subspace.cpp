#include "dra/subspace.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "dra/errors.hpp"

namespace dra {

namespace {

Matrix stack_columns(Eigen::Index n, const std::vector<Vector>& cols) {
  Matrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    out.col(j) = cols[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

AffineSubspace::AffineSubspace(Vector anchor, const std::vector<Vector>& span,
                               double drop_tol)
    : anchor_(std::move(anchor)) {
  require_finite(anchor_);
  for (const Vector& v : span) require_same_dim(v.size(), anchor_.size());
  basis_ = stack_columns(anchor_.size(), orthonormalize(span, drop_tol));
}

AffineSubspace AffineSubspace::point(Vector anchor) {
  require_finite(anchor);
  const Eigen::Index n = anchor.size();
  return AffineSubspace(std::move(anchor), Matrix(n, 0));
}

AffineSubspace AffineSubspace::linear(Eigen::Index ambient_dim,
                                      const std::vector<Vector>& span,
                                      double drop_tol) {
  return AffineSubspace(Vector::Zero(ambient_dim), span, drop_tol);
}

AffineSubspace AffineSubspace::whole_space(Eigen::Index ambient_dim) {
  return AffineSubspace(Vector::Zero(ambient_dim),
                        Matrix::Identity(ambient_dim, ambient_dim));
}

AffineSubspace AffineSubspace::from_orthonormal(Vector anchor, Matrix basis) {
  require_finite(anchor);
  require_same_dim(basis.rows(), anchor.size());
  if (basis.cols() > 0) {
    const Matrix gram = basis.transpose() * basis;
    const double dev =
        (gram - Matrix::Identity(basis.cols(), basis.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (!(dev <= 100.0 * tol::kOrth)) {
      throw std::invalid_argument(
          "from_orthonormal: columns are not orthonormal");
    }
  }
  return AffineSubspace(std::move(anchor), std::move(basis));
}

std::optional<AffineSubspace> AffineSubspace::from_equations(
    const Matrix& m, const Vector& rhs) {
  require_same_dim(m.rows(), rhs.size());
  const Vector particular = min_norm_solve(m, rhs);
  const double residual = (m * particular - rhs).norm();
  if (residual > tol::membership() * (1.0 + rhs.norm())) return std::nullopt;
  return AffineSubspace(particular, null_space(m));
}

AffineSubspace AffineSubspace::parallel() const {
  return AffineSubspace(Vector::Zero(ambient_dim()), basis_);
}

bool AffineSubspace::contains(const Vector& x, double tol) const {
  require_same_dim(x.size(), ambient_dim());
  const Vector r = x - anchor_;
  const Vector residual = r - basis_ * (basis_.transpose() * r);
  return residual.norm() <= tol * (1.0 + x.norm());
}

Vector project(const AffineSubspace& s, const Vector& x) {
  require_same_dim(x.size(), s.ambient_dim());
  require_finite(x);
  const Vector r = x - s.anchor();
  return s.anchor() + s.basis() * (s.basis().transpose() * r);
}

Vector reflect(const AffineSubspace& s, const Vector& x) {
  return 2.0 * project(s, x) - x;
}

AffineSubspace translate(const AffineSubspace& s, const Vector& w) {
  require_same_dim(w.size(), s.ambient_dim());
  require_finite(w);
  return AffineSubspace::from_orthonormal(s.anchor() + w, s.basis());
}

AffineSubspace parallel_sum(const AffineSubspace& a, const AffineSubspace& b) {
  require_same_dim(a.ambient_dim(), b.ambient_dim());
  Matrix joint(a.ambient_dim(), a.dim() + b.dim());
  joint << a.basis(), b.basis();
  return AffineSubspace::from_orthonormal(Vector::Zero(a.ambient_dim()),
                                          orthonormalize_columns(joint));
}

AffineSubspace orth_complement(const AffineSubspace& s) {
  if (!s.is_linear()) {
    throw std::invalid_argument(
        "orth_complement: input must be a linear subspace (zero anchor)");
  }
  const Eigen::Index n = s.ambient_dim();
  const Eigen::Index k = s.dim();
  if (k == 0) return AffineSubspace::whole_space(n);
  if (k == n) return AffineSubspace::point(Vector::Zero(n));
  Eigen::HouseholderQR<Matrix> qr(s.basis());
  const Matrix full = qr.householderQ();
  return AffineSubspace::from_orthonormal(Vector::Zero(n),
                                          full.rightCols(n - k));
}

std::optional<AffineSubspace> intersect(const AffineSubspace& a,
                                        const AffineSubspace& b, double tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim());
  // Parallel part: (A^perp + B^perp)^perp.
  const AffineSubspace parallel = orth_complement(
      parallel_sum(orth_complement(a.parallel()), orth_complement(b.parallel())));
  // Anchor: minimal-norm coefficients of anchor_a + Ba s = anchor_b + Bb t.
  Matrix joint(a.ambient_dim(), a.dim() + b.dim());
  joint << a.basis(), -b.basis();
  const Vector rhs = b.anchor() - a.anchor();
  const Vector coeffs = min_norm_solve(joint, rhs);
  const double residual = (joint * coeffs - rhs).norm();
  if (residual > tol * (1.0 + rhs.norm())) return std::nullopt;
  const Vector anchor = a.anchor() + a.basis() * coeffs.head(a.dim());
  return AffineSubspace::from_orthonormal(anchor, parallel.basis());
}

Vector gap_vector(const AffineSubspace& u, const AffineSubspace& v) {
  require_same_dim(u.ambient_dim(), v.ambient_dim());
  const AffineSubspace sum = parallel_sum(u, v);
  const Vector d = u.anchor() - v.anchor();
  Vector g = d - sum.basis() * (sum.basis().transpose() * d);
  if (g.norm() <= tol::membership()) g.setZero();
  return g;
}

}  // namespace dra
