#pragma once

namespace dra::tol {

// Drop threshold in Gram-Schmidt with reorthogonalization.
inline constexpr double kOrth = 1e-10;

// Relative singular-value cutoff for rank decisions (null spaces, pseudoinverses).
inline constexpr double kRank = 1e-10;

// Slack allowed on the spectral-norm bound of a nonexpansive map.
inline constexpr double kNonexpansive = 1e-8;

// Membership / intersection residual threshold. Process-wide, overridable
// once at startup (DR_AFFINE_TOL in the CLI).
double membership();
void set_membership(double value);

}  // namespace dra::tol
