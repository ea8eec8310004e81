#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dra/dr.hpp"

namespace dra {

/// A problem file: dimension, the two subspaces, a start point and an
/// iteration budget. Subspaces come in anchor+span form or as solution
/// sets of linear equations.
struct ProblemSpec {
  int dimension;
  AffineSubspace u;
  AffineSubspace v;
  Vector start;
  int iters;
  std::optional<std::uint64_t> seed;
  // Set when orthonormalization dropped dependent span vectors.
  bool u_span_reduced = false;
  bool v_span_reduced = false;
};

/// Parses the JSON problem document. Throws ParseError with the offending
/// field named, DimensionError on inconsistent sizes, InfeasibleError when
/// an equation-form set is empty.
ProblemSpec parse_problem(const std::string& json_text);
ProblemSpec load_problem(const std::string& path);

/// Serializes in anchor+span form; re-parsing yields membership-equivalent
/// subspaces.
std::string problem_to_json(const ProblemSpec& spec);

DrProblem to_problem(const ProblemSpec& spec);

/// Results echoed in the trace summary line.
struct RunSummary {
  Vector gap;
  double gap_norm;
  double friedrichs_cos;
  double fitted_rate;
  Vector limit;
};

/// CSV with header n,governing_*,shadow_*,shadow_error,displacement_error,
/// one row per iterate, full 17-significant-digit floats, and a trailing
/// '#' summary line.
void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     const RunSummary& summary);

/// "%.17g" rendering used for all CSV output.
std::string format_double(double x);
std::string format_vector(const Vector& x);  // semicolon-separated

/// Seeded random instance: U a linear subspace with du-dimensional random
/// orthonormal basis, V dv-dimensional with anchor placed so that
/// ||gap_vector(U, V)|| equals `gap` exactly, start point Gaussian.
/// Deterministic per seed. Retries up to 20 consecutive seeds when the
/// parallel sum fills the space (gap > 0 infeasible), then throws
/// InfeasibleError.
DrProblem random_problem(int n, int du, int dv, double gap,
                         std::uint64_t seed);

}  // namespace dra
