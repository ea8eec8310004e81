#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dra/tolerances.hpp"

namespace dra {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

void require_finite(const Vector& x);
void require_same_dim(Eigen::Index a, Eigen::Index b);

/// Orthonormal basis of span(vectors) by modified Gram-Schmidt with
/// reorthogonalization; a vector is dropped when its residual norm is
/// <= tol * (1 + ||input||).
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   double tol = tol::kOrth);

/// Column-matrix form of orthonormalize.
Matrix orthonormalize_columns(const Matrix& a, double tol = tol::kOrth);

/// Orthonormal basis of ker(a); singular values <= rel_tol * sigma_max count
/// as zero.
Matrix null_space(const Matrix& a, double rel_tol = tol::kRank);

/// Minimal-norm least-squares solution of a x = b via truncated SVD.
Vector min_norm_solve(const Matrix& a, const Vector& b,
                      double rel_tol = tol::kRank);

/// Spectral norm by power iteration on a^T a (estimate from below).
double spectral_norm_estimate(const Matrix& a, int max_iters = 200,
                              double tol = 1e-10);

}  // namespace dra
