#include "dra/affine_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dra/errors.hpp"

namespace dra {

AffineMap::AffineMap(Matrix linear, Vector offset)
    : linear_(std::move(linear)), offset_(std::move(offset)) {
  if (linear_.rows() != linear_.cols()) {
    throw std::invalid_argument("linear part must be square");
  }
  require_same_dim(linear_.rows(), offset_.size());
  if (!linear_.allFinite()) {
    throw std::invalid_argument("linear part has a non-finite entry");
  }
  require_finite(offset_);
  const double norm = spectral_norm_estimate(linear_);
  if (norm > 1.0 + tol::kNonexpansive) {
    throw std::invalid_argument("operator is expansive: ||L|| ~ " +
                                std::to_string(norm));
  }
}

AffineMap AffineMap::identity(Eigen::Index n) {
  return AffineMap(Matrix::Identity(n, n), Vector::Zero(n));
}

Vector AffineMap::apply(const Vector& x) const {
  require_same_dim(x.size(), dim());
  return linear_ * x + offset_;
}

AffineMap inner_shift(const AffineMap& t, const Vector& w) {
  require_same_dim(w.size(), t.dim());
  require_finite(w);
  return AffineMap(t.linear(), t.offset() - t.linear() * w);
}

AffineMap outer_shift(const AffineMap& t, const Vector& w) {
  require_same_dim(w.size(), t.dim());
  require_finite(w);
  return AffineMap(t.linear(), t.offset() - w);
}

Vector affine_gap(const AffineMap& t) {
  const Matrix residual_map =
      Matrix::Identity(t.dim(), t.dim()) - t.linear();
  const Matrix fix_basis = null_space(residual_map);
  return fix_basis * (fix_basis.transpose() * (-t.offset()));
}

Vector iterate_closed_form(const AffineMap& t, const Vector& x, long n) {
  require_same_dim(x.size(), t.dim());
  if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
  Vector power_term = x;           // L^k x
  Vector offset_power = t.offset();  // L^k b
  Vector sum = Vector::Zero(t.dim());
  for (long k = 0; k < n; ++k) {
    power_term = t.linear() * power_term;
    sum += offset_power;
    offset_power = t.linear() * offset_power;
  }
  return power_term + sum;
}

Vector shifted_iterate(const AffineMap& t, const Vector& x, long n) {
  require_same_dim(x.size(), t.dim());
  if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
  const Vector v = affine_gap(t);
  const AffineMap inner = inner_shift(t, -v);
  const AffineMap outer = outer_shift(t, -v);
  Vector inner_it = x;
  Vector outer_it = x;
  for (long k = 0; k < n; ++k) {
    inner_it = inner.apply(inner_it);
    outer_it = outer.apply(outer_it);
  }
  const Vector drift =
      iterate_closed_form(t, x, n) + static_cast<double>(n) * v;
  const double scale =
      1.0 + x.norm() + inner_it.norm() + static_cast<double>(n) * v.norm();
  const double spread = std::max((inner_it - outer_it).norm(),
                                 std::max((inner_it - drift).norm(),
                                          (outer_it - drift).norm()));
  if (spread > 1e-10 * scale) {
    throw NumericalError(
        "shifted iterates disagree; nonexpansiveness invariant broken "
        "(spread " + std::to_string(spread) + ")");
  }
  return inner_it;
}

FixedPointSet fixed_points(const AffineMap& t) {
  const Matrix residual_map =
      Matrix::Identity(t.dim(), t.dim()) - t.linear();
  const Vector particular = min_norm_solve(residual_map, t.offset());
  const double residual = (residual_map * particular - t.offset()).norm();
  if (residual > tol::membership() * (1.0 + particular.norm())) {
    return std::nullopt;
  }
  return AffineSubspace::from_orthonormal(particular,
                                          null_space(residual_map));
}

}  // namespace dra
