#include "dra/dr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dra/errors.hpp"

namespace dra {

namespace {

struct LinearParts {
  Matrix l;
  Vector b;
};

// The affine projector onto s as an (L, b) pair.
LinearParts projector_parts(const AffineSubspace& s) {
  Matrix l = s.basis() * s.basis().transpose();
  Vector b = s.anchor() - l * s.anchor();
  return {std::move(l), std::move(b)};
}

double parts_gap(const LinearParts& a, const LinearParts& b) {
  const double lgap = (a.l - b.l).cwiseAbs().maxCoeff();
  const double bgap = (a.b - b.b).cwiseAbs().maxCoeff();
  return std::max(lgap, bgap);
}

constexpr double kAssemblyTol = 1e-12;

}  // namespace

AffineMap dr_map(const AffineSubspace& u, const AffineSubspace& v) {
  require_same_dim(u.ambient_dim(), v.ambient_dim());
  const Eigen::Index n = u.ambient_dim();
  const Matrix id = Matrix::Identity(n, n);
  const LinearParts pu = projector_parts(u);
  const LinearParts pv = projector_parts(v);

  // Id - P_U + P_V R_U with R_U = 2 P_U - Id.
  LinearParts direct;
  direct.l = id - pu.l + pv.l * (2.0 * pu.l - id);
  direct.b = -pu.b + pv.l * (2.0 * pu.b) + pv.b;

  // Regrouped: Id - P_U - P_V + 2 P_V P_U.
  LinearParts grouped;
  grouped.l = id - pu.l - pv.l + 2.0 * (pv.l * pu.l);
  grouped.b = -pu.b + pv.b + 2.0 * (pv.l * pu.b);

  const double scale = 1.0 + u.anchor().norm() + v.anchor().norm();
  if (parts_gap(direct, grouped) > kAssemblyTol * scale) {
    throw NumericalError("splitting operator assembly routes disagree");
  }
  return AffineMap(std::move(direct.l), std::move(direct.b));
}

AffineMap normal_dr_map(const AffineSubspace& u, const AffineSubspace& v) {
  const Vector gap = gap_vector(u, v);
  AffineMap shifted_pair = dr_map(u, translate(v, gap));
  const AffineMap base = dr_map(u, v);
  const AffineMap inner = inner_shift(base, -gap);
  const AffineMap outer = outer_shift(base, -gap);

  const double scale = 1.0 + u.anchor().norm() + v.anchor().norm() + gap.norm();
  const auto offset_gap = [](const AffineMap& a, const AffineMap& b) {
    return std::max((a.linear() - b.linear()).cwiseAbs().maxCoeff(),
                    (a.offset() - b.offset()).cwiseAbs().maxCoeff());
  };
  const double spread = std::max(offset_gap(shifted_pair, inner),
                                 offset_gap(shifted_pair, outer));
  if (spread > kAssemblyTol * scale) {
    throw NumericalError(
        "shifted splitting operator disagrees with the shifted pair "
        "(spread " + std::to_string(spread) + ")");
  }
  return shifted_pair;
}

double friedrichs_cosine(const AffineSubspace& p, const AffineSubspace& q) {
  if (!p.is_linear() || !q.is_linear()) {
    throw std::invalid_argument(
        "friedrichs_cosine: inputs must be linear subspaces");
  }
  const auto meet = intersect(p, q);
  if (!meet) {
    throw NumericalError("linear subspaces reported disjoint");
  }
  const Matrix& w = meet->basis();
  // Reduce modulo the intersection: project each basis onto W^perp and
  // re-orthonormalize.
  const Matrix pr =
      orthonormalize_columns(p.basis() - w * (w.transpose() * p.basis()));
  const Matrix qr =
      orthonormalize_columns(q.basis() - w * (w.transpose() * q.basis()));
  if (pr.cols() == 0 || qr.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(pr.transpose() * qr);
  const double top = svd.singularValues()(0);
  return std::min(std::max(top, 0.0), 1.0);
}

NormalSolutionData normal_solutions(const AffineSubspace& u,
                                    const AffineSubspace& v) {
  require_same_dim(u.ambient_dim(), v.ambient_dim());
  Vector gap = gap_vector(u, v);
  auto solutions = intersect(u, translate(v, gap));
  if (!solutions) {
    throw NumericalError(
        "normal problem reported inconsistent; tolerance breach");
  }
  AffineSubspace dual =
      orth_complement(parallel_sum(u.parallel(), v.parallel()));
  FixedPointSet fix = fixed_points(normal_dr_map(u, v));
  if (!fix) {
    throw NumericalError(
        "shifted operator reported fixed-point free; tolerance breach");
  }
  const double cf = friedrichs_cosine(u.parallel(), v.parallel());
  return NormalSolutionData{std::move(gap), std::move(*solutions),
                            std::move(dual), std::move(*fix), cf};
}

Vector best_approximation(const AffineSubspace& u, const AffineSubspace& v,
                          const Vector& x) {
  return project(normal_solutions(u, v).solutions, x);
}

IterationTrace run(const DrProblem& problem, int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("n_iters must be >= 1");
  require_same_dim(problem.start.size(), problem.u.ambient_dim());
  const AffineMap t = dr_map(problem.u, problem.v);
  const AffineMap shifted = normal_dr_map(problem.u, problem.v);
  const NormalSolutionData data = normal_solutions(problem.u, problem.v);
  const Vector limit = project(data.solutions, problem.start);

  IterationTrace trace;
  trace.governing.reserve(n_iters + 1);
  trace.shadow.reserve(n_iters + 1);
  trace.displacement.reserve(n_iters + 1);
  trace.shadow_error.reserve(n_iters + 1);

  const double agree_tol = 1e-9 * (1.0 + problem.start.norm());
  Vector g = problem.start;
  Vector z = problem.start;  // orbit of the shifted operator
  for (int n = 0; n <= n_iters; ++n) {
    const Vector sh = project(problem.u, g);
    const Vector sh_drift =
        project(problem.u, g + static_cast<double>(n) * data.gap);
    const Vector sh_shift = project(problem.u, z);
    const double spread = std::max((sh - sh_drift).norm(),
                                   std::max((sh - sh_shift).norm(),
                                            (sh_drift - sh_shift).norm()));
    if (spread > agree_tol) {
      throw NumericalError("shadow expressions diverge at step " +
                           std::to_string(n) + " (spread " +
                           std::to_string(spread) + ")");
    }
    const Vector next = t.apply(g);
    trace.governing.push_back(g);
    trace.shadow.push_back(sh);
    trace.displacement.push_back(g - next);
    trace.shadow_error.push_back((sh - limit).norm());
    if (n < n_iters) {
      g = next;
      z = shifted.apply(z);
    }
  }
  return trace;
}

double rate_estimate(const IterationTrace& trace, const Vector& limit) {
  constexpr double kFloor = 1e-13;
  std::vector<Eigen::Index> usable;
  for (std::size_t n = 0; n < trace.shadow.size(); ++n) {
    if ((trace.shadow[n] - limit).norm() > kFloor) {
      usable.push_back(static_cast<Eigen::Index>(n));
    }
  }
  if (usable.size() < 10) return 0.0;
  // Fit the tail half: transient-free, still above machine noise.
  const std::size_t first = usable.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double count = 0;
  for (std::size_t i = first; i < usable.size(); ++i) {
    const double xn = static_cast<double>(usable[i]);
    const double yn =
        std::log((trace.shadow[static_cast<std::size_t>(usable[i])] - limit)
                     .norm());
    sx += xn;
    sy += yn;
    sxx += xn * xn;
    sxy += xn * yn;
    count += 1.0;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  const double slope = (count * sxy - sx * sy) / denom;
  return std::exp(slope);
}

double displacement_check(const IterationTrace& trace, const Vector& v) {
  const std::size_t total = trace.displacement.size();
  if (total == 0) return 0.0;
  const std::size_t window = std::max<std::size_t>(1, total / 10);
  double worst = 0.0;
  for (std::size_t n = total - window; n < total; ++n) {
    worst = std::max(worst, (trace.displacement[n] - v).norm());
  }
  return worst;
}

std::vector<Vector> dual_shadow(const DrProblem& problem, int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("n_iters must be >= 1");
  const AffineMap t = dr_map(problem.u, problem.v);
  std::vector<Vector> out;
  out.reserve(n_iters + 1);
  Vector g = problem.start;
  for (int n = 0; n <= n_iters; ++n) {
    out.push_back(g - project(problem.u, g));
    if (n < n_iters) g = t.apply(g);
  }
  return out;
}

}  // namespace dra
