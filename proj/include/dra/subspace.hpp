#pragma once

#include <optional>
#include <vector>

#include "dra/linalg.hpp"

namespace dra {

/// Closed affine subspace of R^n stored as an anchor point plus an
/// orthonormal basis of the parallel linear space. An empty basis is a
/// singleton, a full basis is the whole space. Immutable after construction.
class AffineSubspace {
 public:
  /// Orthonormalizes `span`; near-dependent vectors are dropped at drop_tol.
  AffineSubspace(Vector anchor, const std::vector<Vector>& span,
                 double drop_tol = tol::kOrth);

  static AffineSubspace point(Vector anchor);
  static AffineSubspace linear(Eigen::Index ambient_dim,
                               const std::vector<Vector>& span,
                               double drop_tol = tol::kOrth);
  static AffineSubspace whole_space(Eigen::Index ambient_dim);

  /// Adopts an already-orthonormal basis (verified).
  static AffineSubspace from_orthonormal(Vector anchor, Matrix basis);

  /// Solution set {x : m x = rhs}; nullopt when the system is infeasible.
  static std::optional<AffineSubspace> from_equations(const Matrix& m,
                                                      const Vector& rhs);

  const Vector& anchor() const { return anchor_; }
  /// ambient_dim x dim matrix with orthonormal columns.
  const Matrix& basis() const { return basis_; }
  Eigen::Index ambient_dim() const { return anchor_.size(); }
  Eigen::Index dim() const { return basis_.cols(); }
  bool is_linear() const { return anchor_.isZero(0.0); }

  /// Same parallel space through the origin.
  AffineSubspace parallel() const;

  /// Residual membership test: ||(x-a) - QQ^T(x-a)|| <= tol * (1 + ||x||).
  bool contains(const Vector& x, double tol = tol::membership()) const;

 private:
  AffineSubspace(Vector anchor, Matrix basis)
      : anchor_(std::move(anchor)), basis_(std::move(basis)) {}

  Vector anchor_;
  Matrix basis_;
};

/// Nearest point of s to x.
Vector project(const AffineSubspace& s, const Vector& x);

/// 2 project(s, x) - x.
Vector reflect(const AffineSubspace& s, const Vector& x);

/// s shifted by w (anchor moves, basis unchanged).
AffineSubspace translate(const AffineSubspace& s, const Vector& w);

/// Linear subspace spanned by the union of both parallel bases.
AffineSubspace parallel_sum(const AffineSubspace& a, const AffineSubspace& b);

/// Orthogonal complement of a linear subspace (anchor must be zero).
AffineSubspace orth_complement(const AffineSubspace& s);

/// Common points of a and b, or nullopt when the sets are disjoint.
std::optional<AffineSubspace> intersect(const AffineSubspace& a,
                                        const AffineSubspace& b,
                                        double tol = tol::membership());

/// Minimal-norm element of U - V, i.e. the projection of
/// anchor_U - anchor_V onto (par U + par V)^perp. Snapped to zero when
/// ||v|| <= the membership tolerance (consistent problem).
Vector gap_vector(const AffineSubspace& u, const AffineSubspace& v);

}  // namespace dra
