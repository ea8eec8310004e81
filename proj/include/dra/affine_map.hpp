#pragma once

#include <optional>

#include "dra/subspace.hpp"

namespace dra {

/// Nonexpansive affine operator x -> L x + b. Construction estimates ||L||
/// by power iteration and rejects ||L|| > 1 + tol::kNonexpansive.
class AffineMap {
 public:
  AffineMap(Matrix linear, Vector offset);

  static AffineMap identity(Eigen::Index n);

  Vector apply(const Vector& x) const;
  const Matrix& linear() const { return linear_; }
  const Vector& offset() const { return offset_; }
  Eigen::Index dim() const { return offset_.size(); }

 private:
  Matrix linear_;
  Vector offset_;
};

using FixedPointSet = std::optional<AffineSubspace>;

/// x -> T(x - w), i.e. (L, b - L w).
AffineMap inner_shift(const AffineMap& t, const Vector& w);

/// x -> -w + T x, i.e. (L, b - w).
AffineMap outer_shift(const AffineMap& t, const Vector& w);

/// Infimal displacement vector of an affine nonexpansive map: the
/// projection of -b onto ker(Id - L).
Vector affine_gap(const AffineMap& t);

/// T^n x by the running-sum form L^n x + sum_k L^k b (no matrix powers).
Vector iterate_closed_form(const AffineMap& t, const Vector& x, long n);

/// n-th iterate of the gap-shifted map; evaluates the inner-shift,
/// outer-shift and drift-corrected expressions and requires pairwise
/// agreement to 1e-10 relative (NumericalError otherwise).
Vector shifted_iterate(const AffineMap& t, const Vector& x, long n);

/// Solution set of T y = y, or nullopt when empty.
FixedPointSet fixed_points(const AffineMap& t);

}  // namespace dra
