#include "dra/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dra/errors.hpp"

namespace dra {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ParseError(name + ": missing field");
  return j.at(name);
}

int require_positive_int(const json& j, const std::string& field) {
  const json& node = require_field(j, field);
  if (!node.is_number_integer() || node.get<long long>() <= 0) {
    throw ParseError(field + ": expected a positive integer");
  }
  return node.get<int>();
}

Vector parse_vector(const json& node, const std::string& field,
                    Eigen::Index expected) {
  if (!node.is_array()) {
    throw ParseError(field + ": expected an array of numbers");
  }
  Vector out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ParseError(field + "[" + std::to_string(i) + "]: expected a number");
    }
    out(static_cast<Eigen::Index>(i)) = node[i].get<double>();
  }
  if (expected >= 0 && out.size() != expected) {
    throw ParseError(field + ": expected " + std::to_string(expected) +
                     " entries, got " + std::to_string(out.size()));
  }
  return out;
}

struct ParsedSet {
  AffineSubspace set;
  bool span_reduced;
};

ParsedSet parse_set(const json& j, const std::string& name,
                    Eigen::Index dim) {
  const json& node = require_field(j, name);
  if (!node.is_object()) throw ParseError(name + ": expected an object");
  if (node.contains("span")) {
    const Vector anchor = node.contains("anchor")
                              ? parse_vector(node.at("anchor"),
                                             name + ".anchor", dim)
                              : Vector::Zero(dim);
    const json& span_node = node.at("span");
    if (!span_node.is_array()) {
      throw ParseError(name + ".span: expected an array of vectors");
    }
    std::vector<Vector> span;
    span.reserve(span_node.size());
    for (std::size_t i = 0; i < span_node.size(); ++i) {
      span.push_back(parse_vector(span_node[i],
                                  name + ".span[" + std::to_string(i) + "]",
                                  dim));
    }
    AffineSubspace set(anchor, span);
    const bool reduced =
        set.dim() < static_cast<Eigen::Index>(span.size());
    return ParsedSet{std::move(set), reduced};
  }
  if (node.contains("matrix")) {
    const json& rows_node = node.at("matrix");
    if (!rows_node.is_array() || rows_node.empty()) {
      throw ParseError(name + ".matrix: expected a non-empty array of rows");
    }
    Matrix m(static_cast<Eigen::Index>(rows_node.size()), dim);
    for (std::size_t i = 0; i < rows_node.size(); ++i) {
      m.row(static_cast<Eigen::Index>(i)) =
          parse_vector(rows_node[i],
                       name + ".matrix[" + std::to_string(i) + "]", dim)
              .transpose();
    }
    const Vector rhs = node.contains("rhs")
                           ? parse_vector(node.at("rhs"), name + ".rhs",
                                          m.rows())
                           : Vector::Zero(m.rows());
    auto set = AffineSubspace::from_equations(m, rhs);
    if (!set) throw InfeasibleError(name + ": equation system is infeasible");
    return ParsedSet{std::move(*set), false};
  }
  throw ParseError(name + ": expected either 'span' or 'matrix' form");
}

json vector_to_json(const Vector& x) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) arr.push_back(x(i));
  return arr;
}

json set_to_json(const AffineSubspace& s) {
  json node;
  node["anchor"] = vector_to_json(s.anchor());
  json span = json::array();
  for (Eigen::Index j = 0; j < s.dim(); ++j) {
    span.push_back(vector_to_json(s.basis().col(j)));
  }
  node["span"] = span;
  return node;
}

}  // namespace

ProblemSpec parse_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");
  const int dimension = require_positive_int(j, "dimension");
  ParsedSet u = parse_set(j, "U", dimension);
  ParsedSet v = parse_set(j, "V", dimension);
  Vector start = parse_vector(require_field(j, "x0"), "x0", dimension);
  const int iters = require_positive_int(j, "iters");
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) {
    const json& node = j.at("seed");
    if (!node.is_number_integer() || node.get<long long>() < 0) {
      throw ParseError("seed: expected a non-negative integer");
    }
    seed = node.get<std::uint64_t>();
  }
  return ProblemSpec{dimension,
                     std::move(u.set),
                     std::move(v.set),
                     std::move(start),
                     iters,
                     seed,
                     u.span_reduced,
                     v.span_reduced};
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::string problem_to_json(const ProblemSpec& spec) {
  json j;
  j["dimension"] = spec.dimension;
  j["U"] = set_to_json(spec.u);
  j["V"] = set_to_json(spec.v);
  j["x0"] = vector_to_json(spec.start);
  j["iters"] = spec.iters;
  if (spec.seed) j["seed"] = *spec.seed;
  return j.dump(2) + "\n";
}

DrProblem to_problem(const ProblemSpec& spec) {
  return DrProblem{spec.u, spec.v, spec.start};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_vector(const Vector& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double(x(i));
  }
  return out;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     const RunSummary& summary) {
  const Eigen::Index dim =
      trace.governing.empty() ? 0 : trace.governing.front().size();
  out << "n";
  for (Eigen::Index i = 0; i < dim; ++i) out << ",governing_" << i;
  for (Eigen::Index i = 0; i < dim; ++i) out << ",shadow_" << i;
  out << ",shadow_error,displacement_error\n";
  for (std::size_t n = 0; n < trace.governing.size(); ++n) {
    out << n;
    for (Eigen::Index i = 0; i < dim; ++i) {
      out << ',' << format_double(trace.governing[n](i));
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      out << ',' << format_double(trace.shadow[n](i));
    }
    out << ',' << format_double(trace.shadow_error[n]);
    out << ','
        << format_double((trace.displacement[n] - summary.gap).norm());
    out << '\n';
  }
  out << "# v=" << format_vector(summary.gap)
      << " norm_v=" << format_double(summary.gap_norm)
      << " cF=" << format_double(summary.friedrichs_cos)
      << " rate=" << format_double(summary.fitted_rate)
      << " limit=" << format_vector(summary.limit) << '\n';
}

DrProblem random_problem(int n, int du, int dv, double gap,
                         std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("ambient dimension must be >= 1");
  if (du < 0 || dv < 0 || du > n || dv > n) {
    throw std::invalid_argument("subspace dimensions must lie in [0, n]");
  }
  if (!(gap >= 0.0) || !std::isfinite(gap)) {
    throw std::invalid_argument("gap must be a non-negative number");
  }
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto draw = [&rng, &gauss, n] {
      Vector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = gauss(rng);
      return x;
    };
    std::vector<Vector> u_span;
    for (int j = 0; j < du; ++j) u_span.push_back(draw());
    AffineSubspace u_par = AffineSubspace::linear(n, u_span);
    if (u_par.dim() != du) continue;  // degenerate draw
    std::vector<Vector> v_span;
    for (int j = 0; j < dv; ++j) v_span.push_back(draw());
    const AffineSubspace v_par = AffineSubspace::linear(n, v_span);
    if (v_par.dim() != dv) continue;

    const AffineSubspace comp = orth_complement(parallel_sum(u_par, v_par));
    Vector direction = Vector::Zero(n);
    if (comp.dim() == 0) {
      if (gap > 0.0) continue;  // no room for a nonzero gap
    } else {
      const Vector g = comp.basis() * (comp.basis().transpose() * draw());
      if (g.norm() <= 1e-12) continue;
      direction = g / g.norm();
    }
    Vector coeffs(v_par.dim());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = gauss(rng);
    const Vector v_anchor = gap * direction + v_par.basis() * coeffs;
    Vector start = draw();
    return DrProblem{std::move(u_par),
                     AffineSubspace::from_orthonormal(v_anchor,
                                                      v_par.basis()),
                     std::move(start)};
  }
  throw InfeasibleError(
      "random instance generation failed after 20 seeds "
      "(requested gap infeasible or degenerate draws)");
}

}  // namespace dra
