#include "dra/scalar_examples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dra/errors.hpp"

namespace dra::scalar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interval(double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("interval requires a <= b");
}

void require_gap_params(double a, double b) {
  if (!(0.0 < a && a < b)) {
    throw std::invalid_argument("parameters require 0 < a < b");
  }
}

void require_leaky_params(double a, double b) {
  if (!(0.0 < a && a < 1.0 && b > 0.0)) {
    throw std::invalid_argument("parameters require 0 < a < 1 and b > 0");
  }
}

// Integer-valued floor with snapping: floating-point quotients that sit
// within 1e-12 of an integer are taken as that integer.
double snapped_floor(double t) {
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-12 * std::max(1.0, std::abs(t))) return r;
  return std::floor(t);
}

double snapped_ceil(double t) {
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-12 * std::max(1.0, std::abs(t))) return r;
  return std::ceil(t);
}

}  // namespace

double interval_residual(double a, double b, double x) {
  require_interval(a, b);
  return x - std::clamp(x, a, b);
}

double leaky_shift(double a, double b, double x) {
  require_leaky_params(a, b);
  return x <= b ? x - b : a * (x - b);
}

double leaky_shift_inner(double a, double b, double x) {
  require_leaky_params(a, b);
  // T(x + b): piecewise around 0.
  return x <= 0.0 ? x : a * x;
}

double leaky_shift_outer(double a, double b, double x) {
  require_leaky_params(a, b);
  return x <= b ? x : a * (x - b) + b;
}

double interval_residual_drift(double a, double b, double x, long n) {
  require_gap_params(a, b);
  if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
  if (n == 0) return x;
  if (x <= a) return x;
  if (x <= b) return a;
  const double big_k = snapped_floor(x / b);
  if (static_cast<double>(n) <= big_k) {
    return x - static_cast<double>(n) * (b - a);
  }
  return std::min(a, x - big_k * b) + big_k * a;
}

double interval_residual_drift_limit(double a, double b, double x) {
  require_gap_params(a, b);
  if (x <= a) return x;
  if (x <= b) return a;
  const double big_k = snapped_floor(x / b);
  return std::min(a, x - big_k * b) + big_k * a;
}

long leaky_shift_settle_steps(double a, double b, double x) {
  require_leaky_params(a, b);
  if (x <= b) return 0;
  const double t = std::log(b / (a * b + (1.0 - a) * x)) / std::log(a);
  return std::max<long>(1, static_cast<long>(snapped_ceil(t)));
}

ShiftTriple leaky_shift_sequences(double a, double b, double x, long n) {
  require_leaky_params(a, b);
  if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
  ShiftTriple out;
  const double an = std::pow(a, static_cast<double>(n));
  out.inner = an * std::max(x, 0.0) + std::min(x, 0.0);
  out.outer = an * std::max(x - b, 0.0) + std::min(x, b);
  if (x <= b) {
    out.drift = x;
  } else {
    const long q = leaky_shift_settle_steps(a, b, x);
    const long m = std::min(n, q);
    const double am = std::pow(a, static_cast<double>(m));
    out.drift = am * x - (a * (1.0 - am) / (1.0 - a)) * b +
                static_cast<double>(m) * b;
  }
  return out;
}

ShiftTriple leaky_shift_limits(double a, double b, double x) {
  require_leaky_params(a, b);
  ShiftTriple out;
  out.inner = std::min(x, 0.0);
  out.outer = std::min(x, b);
  if (x <= b) {
    out.drift = x;
  } else {
    const long q = leaky_shift_settle_steps(a, b, x);
    const double aq = std::pow(a, static_cast<double>(q));
    out.drift = aq * x - (a * (1.0 - aq) / (1.0 - a)) * b +
                static_cast<double>(q) * b;
  }
  return out;
}

Witness leaky_shift_witness(double a, double b) {
  require_leaky_params(a, b);
  constexpr double kMargin = 1e-6;
  for (int k = 2; k <= 10; ++k) {
    const double x = static_cast<double>(k) * b;
    for (long n = 2; n <= 50; ++n) {
      const ShiftTriple seq = leaky_shift_sequences(a, b, x, n);
      const double mismatch = std::abs(seq.outer - seq.drift);
      if (mismatch > kMargin) return Witness{x, n, mismatch};
    }
  }
  throw NumericalError("no drift/outer mismatch found on the scan grid");
}

Eigen::Vector2d rotation_gap(const Eigen::Vector2d& b) {
  const Eigen::Vector2d sb(-b(1), b(0));  // quarter turn
  return 0.5 * (b + sb);
}

Eigen::Vector2d rotation_resolvent(const Eigen::Vector2d& x) {
  const Eigen::Vector2d sx(-x(1), x(0));
  return 0.5 * (x - sx);
}

std::vector<double> rotation_dr_trace(const Eigen::Vector2d& b,
                                      const Eigen::Vector2d& x, int n_iters) {
  if (b.isZero(0.0)) {
    throw std::invalid_argument("rotation pair requires b != 0");
  }
  if (n_iters < 1) throw std::invalid_argument("n_iters must be >= 1");
  const Eigen::Vector2d gap = rotation_gap(b);
  std::vector<double> norms;
  norms.reserve(n_iters + 1);
  for (int n = 0; n <= n_iters; ++n) {
    // The splitting operator is the pure translation x -> x - gap.
    const Eigen::Vector2d orbit = x - static_cast<double>(n) * gap;
    norms.push_back(rotation_resolvent(orbit).norm());
  }
  return norms;
}

FixPair interval_residual_fix_sets(double a, double b) {
  require_interval(a, b);
  const double gap = std::clamp(0.0, a, b);
  Interval outer{};
  if (a == b) {
    outer = {-kInf, kInf};  // projection is constant
  } else if (gap == a) {
    outer = {-kInf, a};
  } else if (gap == b) {
    outer = {b, kInf};
  } else {
    outer = {gap, gap};  // 0 interior: only the origin projects to it
  }
  const Interval inner{outer.lo - gap, outer.hi - gap};
  return FixPair{outer, inner};
}

}  // namespace dra::scalar
