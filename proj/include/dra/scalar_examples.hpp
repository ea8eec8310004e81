#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dra::scalar {

// One-dimensional firmly nonexpansive / nonexpansive operators with empty
// fixed-point sets, with exact closed forms for their shifted iterations.
// These serve as test oracles for the drift behaviour that the affine
// machinery exhibits only in trivialized form.

/// x - P_[a,b] x (firmly nonexpansive; infimal displacement = P_[a,b] 0).
double interval_residual(double a, double b, double x);

/// Leaky shift: x - b for x <= b, a (x - b) above (0 < a < 1, b > 0).
/// Nonexpansive with empty fixed-point set; infimal displacement = b.
double leaky_shift(double a, double b, double x);

/// Single step of the gap-shifted leaky map T(x + b).
double leaky_shift_inner(double a, double b, double x);

/// Single step of b + T(x).
double leaky_shift_outer(double a, double b, double x);

// --- closed forms for T = Id - P_[a,b] with 0 < a < b (gap = a) ---

/// T^n x + n a. Descends in steps of (b - a) from above b, then settles.
double interval_residual_drift(double a, double b, double x, long n);

/// Limit of the drift sequence; exceeds a whenever x > b.
double interval_residual_drift_limit(double a, double b, double x);

// --- closed forms for the leaky shift map (gap = b) ---

struct ShiftTriple {
  double inner;  // n-th iterate of the inner-shifted map
  double outer;  // n-th iterate of the outer-shifted map
  double drift;  // T^n x + n b
};

ShiftTriple leaky_shift_sequences(double a, double b, double x, long n);
ShiftTriple leaky_shift_limits(double a, double b, double x);

/// Number of steps q(x) until the orbit of x > b drops below b.
long leaky_shift_settle_steps(double a, double b, double x);

/// A pair (x, n) where the outer-shifted iterate and the drift-corrected
/// iterate differ, proving no single operator generates the drift sequence.
struct Witness {
  double x;
  long n;
  double mismatch;
};

/// Deterministic grid scan (x in {2b, 3b, ..., 10b}, n in {2..50}, margin
/// > 1e-6), first hit returned.
Witness leaky_shift_witness(double a, double b);

// --- planar rotation pair (skew linear operators, not normal cones) ---

/// Infimal displacement (Id + S) b / 2 of the induced splitting operator
/// x -> x - (Id + S) b / 2, where S is the quarter-turn rotation.
Eigen::Vector2d rotation_gap(const Eigen::Vector2d& b);

/// Resolvent of the quarter-turn rotation: (Id - S) x / 2.
Eigen::Vector2d rotation_resolvent(const Eigen::Vector2d& x);

/// Norms of the resolvent shadows along the orbit, n = 0..n_iters. They
/// grow without bound, with increments tending to ||b|| / 2.
std::vector<double> rotation_dr_trace(const Eigen::Vector2d& b,
                                      const Eigen::Vector2d& x, int n_iters);

// --- fixed-point sets of the shifted interval-residual operator ---

/// Closed interval, possibly unbounded on either side.
struct Interval {
  double lo;
  double hi;
};

struct FixPair {
  Interval outer;  // {x : P_[a,b] x = gap}
  Interval inner;  // {x : P_[a,b] (x + gap) = gap} = outer - gap
};

FixPair interval_residual_fix_sets(double a, double b);

}  // namespace dra::scalar
