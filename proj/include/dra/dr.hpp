#pragma once

#include <vector>

#include "dra/affine_map.hpp"

namespace dra {

struct DrProblem {
  AffineSubspace u;
  AffineSubspace v;
  Vector start;
};

/// Per-iteration record of the splitting iteration. Index n runs 0..N.
struct IterationTrace {
  std::vector<Vector> governing;     // T^n x0
  std::vector<Vector> shadow;        // P_U T^n x0
  std::vector<Vector> displacement;  // T^n x0 - T^{n+1} x0
  std::vector<double> shadow_error;  // ||shadow_n - shadow limit||
};

struct NormalSolutionData {
  Vector gap;                     // minimal-norm element of U - V
  AffineSubspace solutions;       // U cap (gap + V), never empty
  AffineSubspace dual_solutions;  // (par U)^perp cap (par V)^perp
  AffineSubspace fix_shifted;     // fixed points of the shifted operator
  double friedrichs_cos;          // rate constant, in [0, 1)
};

/// Splitting operator Id - P_U + P_V R_U materialized as an (L, b) pair.
/// Assembled through both composition orders; disagreement beyond 1e-12
/// is a NumericalError.
AffineMap dr_map(const AffineSubspace& u, const AffineSubspace& v);

/// Splitting operator of the shifted pair (U, gap + V); verified to equal
/// both shifts of dr_map(u, v) by -gap.
AffineMap normal_dr_map(const AffineSubspace& u, const AffineSubspace& v);

/// Cosine of the angle between two linear subspaces modulo their
/// intersection: largest singular value of the reduced cross-Gram matrix,
/// 0 when either reduced space is trivial.
double friedrichs_cosine(const AffineSubspace& p, const AffineSubspace& q);

NormalSolutionData normal_solutions(const AffineSubspace& u,
                                    const AffineSubspace& v);

/// Direct (non-iterative) limit of the shadow sequence started at x:
/// the projection of x onto normal_solutions(u, v).solutions.
Vector best_approximation(const AffineSubspace& u, const AffineSubspace& v,
                          const Vector& x);

/// Iterates the splitting operator n_iters times, recording governing and
/// shadow sequences. The three shadow expressions (direct, drift-corrected,
/// shifted-map) are evaluated each step and must agree to
/// 1e-9 * (1 + ||x0||).
IterationTrace run(const DrProblem& problem, int n_iters);

/// Least-squares slope of log(shadow error) over the tail half of the
/// above-floor steps, exponentiated; 0 when fewer than 10 usable steps.
double rate_estimate(const IterationTrace& trace, const Vector& limit);

/// Max of ||displacement_n - v|| over the final 10% of steps.
double displacement_check(const IterationTrace& trace, const Vector& v);

/// (Id - P_U) T^n x0 for n = 0..n_iters.
std::vector<Vector> dual_shadow(const DrProblem& problem, int n_iters);

}  // namespace dra
