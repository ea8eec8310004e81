#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dra/dr.hpp"
#include "dra/errors.hpp"
#include "dra/io.hpp"
#include "dra/scalar_examples.hpp"

namespace {

using dra::format_double;
using dra::format_vector;

// Exit codes: 0 ok, 2 parse/parameter error, 3 infeasible or dimension
// mismatch, 4 numerical invariant breach.
int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const dra::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const dra::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const dra::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const dra::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw dra::ParseError("cannot open output file: " + path);
  writer(file);
}

void run_pipeline(const dra::ProblemSpec& spec, const std::string& out_path) {
  if (spec.u_span_reduced) {
    std::cerr << "note: U.span was linearly dependent; basis reduced\n";
  }
  if (spec.v_span_reduced) {
    std::cerr << "note: V.span was linearly dependent; basis reduced\n";
  }
  const dra::DrProblem problem = dra::to_problem(spec);
  const dra::IterationTrace trace = dra::run(problem, spec.iters);
  const dra::NormalSolutionData data =
      dra::normal_solutions(problem.u, problem.v);
  const dra::Vector limit = dra::project(data.solutions, problem.start);
  const dra::RunSummary summary{data.gap, data.gap.norm(),
                                data.friedrichs_cos,
                                dra::rate_estimate(trace, limit), limit};
  with_output(out_path, [&](std::ostream& out) {
    dra::write_trace_csv(out, trace, summary);
  });
  if (!out_path.empty() && out_path != "-") {
    std::cout << "v=" << format_vector(summary.gap)
              << " norm_v=" << format_double(summary.gap_norm)
              << " cF=" << format_double(summary.friedrichs_cos)
              << " rate=" << format_double(summary.fitted_rate)
              << " limit=" << format_vector(summary.limit) << '\n';
  }
}

struct OracleArgs {
  std::optional<double> alpha, beta, x, a, b;
  std::optional<double> bx, by, x0x, x0y;
  long n = 60;
  std::string out;
};

double need(const std::optional<double>& opt, const std::string& flag) {
  if (!opt) throw dra::ParseError("missing required option " + flag);
  return *opt;
}

void oracle_interval_residual(const OracleArgs& args) {
  const double alpha = need(args.alpha, "--alpha");
  const double beta = need(args.beta, "--beta");
  const double x = need(args.x, "--x");
  const double limit =
      dra::scalar::interval_residual_drift_limit(alpha, beta, x);
  const dra::scalar::FixPair fix =
      dra::scalar::interval_residual_fix_sets(alpha, beta);
  with_output(args.out, [&](std::ostream& out) {
    out << "n,drift_closed,drift_naive\n";
    double orbit = x;
    for (long n = 0; n <= args.n; ++n) {
      const double closed =
          dra::scalar::interval_residual_drift(alpha, beta, x, n);
      const double naive = orbit + static_cast<double>(n) * alpha;
      out << n << ',' << format_double(closed) << ','
          << format_double(naive) << '\n';
      orbit = dra::scalar::interval_residual(alpha, beta, orbit);
    }
    const bool outside = limit > fix.outer.hi;
    out << "# limit=" << format_double(limit)
        << " gap=" << format_double(alpha) << " fix_outer=(-inf,"
        << format_double(fix.outer.hi) << "]"
        << " status=" << (outside ? "outside" : "inside") << " Fix(v+T)\n";
  });
}

void oracle_leaky_shift(const OracleArgs& args) {
  const double alpha = args.alpha.value_or(0.5);
  const double beta = args.beta.value_or(1.0);
  if (args.x) {
    const double x = *args.x;
    const dra::scalar::ShiftTriple limits =
        dra::scalar::leaky_shift_limits(alpha, beta, x);
    const dra::scalar::Witness witness =
        dra::scalar::leaky_shift_witness(alpha, beta);
    with_output(args.out, [&](std::ostream& out) {
      out << "n,inner_closed,inner_naive,outer_closed,outer_naive,"
             "drift_closed,drift_naive\n";
      double inner_orbit = x, outer_orbit = x, plain_orbit = x;
      for (long n = 0; n <= args.n; ++n) {
        const dra::scalar::ShiftTriple seq =
            dra::scalar::leaky_shift_sequences(alpha, beta, x, n);
        const double drift_naive =
            plain_orbit + static_cast<double>(n) * beta;
        out << n << ',' << format_double(seq.inner) << ','
            << format_double(inner_orbit) << ',' << format_double(seq.outer)
            << ',' << format_double(outer_orbit) << ','
            << format_double(seq.drift) << ',' << format_double(drift_naive)
            << '\n';
        inner_orbit = dra::scalar::leaky_shift_inner(alpha, beta, inner_orbit);
        outer_orbit = dra::scalar::leaky_shift_outer(alpha, beta, outer_orbit);
        plain_orbit = dra::scalar::leaky_shift(alpha, beta, plain_orbit);
      }
      out << "# limits inner=" << format_double(limits.inner)
          << " outer=" << format_double(limits.outer)
          << " drift=" << format_double(limits.drift) << '\n';
      out << "# witness x=" << format_double(witness.x) << " n=" << witness.n
          << " mismatch=" << format_double(witness.mismatch) << '\n';
    });
    return;
  }
  // Without --x: the three limit functions over a grid.
  with_output(args.out, [&](std::ostream& out) {
    out << "x,inner_limit,outer_limit,drift_limit\n";
    const double step = beta / 20.0;
    for (int i = -20; i <= 80; ++i) {
      const double x = static_cast<double>(i) * step;
      const dra::scalar::ShiftTriple limits =
          dra::scalar::leaky_shift_limits(alpha, beta, x);
      out << format_double(x) << ',' << format_double(limits.inner) << ','
          << format_double(limits.outer) << ',' << format_double(limits.drift)
          << '\n';
    }
  });
}

void oracle_rotation(const OracleArgs& args) {
  const Eigen::Vector2d b(need(args.bx, "--bx"), need(args.by, "--by"));
  const Eigen::Vector2d x0(args.x0x.value_or(0.0), args.x0y.value_or(0.0));
  const int iters = static_cast<int>(args.n);
  const std::vector<double> norms =
      dra::scalar::rotation_dr_trace(b, x0, iters);
  const Eigen::Vector2d gap = dra::scalar::rotation_gap(b);
  const Eigen::Vector2d jgap = dra::scalar::rotation_resolvent(gap);
  with_output(args.out, [&](std::ostream& out) {
    out << "n,dual_norm,increment\n";
    for (std::size_t n = 0; n < norms.size(); ++n) {
      const double inc = n == 0 ? 0.0 : norms[n] - norms[n - 1];
      out << n << ',' << format_double(norms[n]) << ',' << format_double(inc)
          << '\n';
    }
    out << "# gap=" << format_double(gap(0)) << ';' << format_double(gap(1))
        << " resolvent_gap=" << format_double(jgap(0)) << ';'
        << format_double(jgap(1))
        << " resolvent_gap_norm=" << format_double(jgap.norm()) << '\n';
  });
}

void oracle_fix_sets(const OracleArgs& args) {
  const double a = need(args.a, "--a");
  const double b = need(args.b, "--b");
  const dra::scalar::FixPair fix =
      dra::scalar::interval_residual_fix_sets(a, b);
  with_output(args.out, [&](std::ostream& out) {
    out << "set,lo,hi\n";
    out << "fix_outer," << format_double(fix.outer.lo) << ','
        << format_double(fix.outer.hi) << '\n';
    out << "fix_inner," << format_double(fix.inner.lo) << ','
        << format_double(fix.inner.hi) << '\n';
    out << "# gap=" << format_double(std::clamp(0.0, a, b)) << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("DR_AFFINE_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) ||
        !std::isfinite(value)) {
      std::cerr << "DR_AFFINE_TOL: expected a positive number\n";
      return 2;
    }
    dra::tol::set_membership(value);
  }

  CLI::App app{"Douglas-Rachford splitting for two affine subspaces"};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  CLI::App* cmd_run = app.add_subcommand("run", "iterate a problem file");
  cmd_run->add_option("spec", spec_path, "problem JSON file")->required();
  cmd_run->add_option("--out", out_path, "trace CSV path ('-' = stdout)");

  OracleArgs oracle;
  std::string oracle_name;
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "closed-form example tables");
  cmd_oracle->add_option("name", oracle_name,
                         "one of ex27, ex33, ex45|rotation, ex-short")
      ->required();
  cmd_oracle->add_option("--alpha", oracle.alpha, "first parameter");
  cmd_oracle->add_option("--beta", oracle.beta, "second parameter");
  cmd_oracle->add_option("--x", oracle.x, "start point");
  cmd_oracle->add_option("--n", oracle.n, "iterations (default 60)");
  cmd_oracle->add_option("--a", oracle.a, "interval lower end");
  cmd_oracle->add_option("--b", oracle.b, "interval upper end");
  cmd_oracle->add_option("--bx", oracle.bx, "offset vector, first entry");
  cmd_oracle->add_option("--by", oracle.by, "offset vector, second entry");
  cmd_oracle->add_option("--x0x", oracle.x0x, "start point, first entry");
  cmd_oracle->add_option("--x0y", oracle.x0y, "start point, second entry");
  cmd_oracle->add_option("--out", oracle.out, "output CSV path");

  int rn = 0, rdu = 0, rdv = 0, riters = 200;
  double rgap = 0.0;
  std::uint64_t rseed = 0;
  std::string rout, rspec_out;
  CLI::App* cmd_random =
      app.add_subcommand("random", "generate and iterate a seeded instance");
  cmd_random->add_option("--n", rn, "ambient dimension")->required();
  cmd_random->add_option("--du", rdu, "dim of U")->required();
  cmd_random->add_option("--dv", rdv, "dim of V")->required();
  cmd_random->add_option("--gap", rgap, "distance between the sets");
  cmd_random->add_option("--seed", rseed, "RNG seed");
  cmd_random->add_option("--iters", riters, "iterations (default 200)");
  cmd_random->add_option("--out", rout, "trace CSV path ('-' = stdout)");
  cmd_random->add_option("--spec-out", rspec_out,
                         "also write the generated problem JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_run->parsed()) {
    return guarded([&] { run_pipeline(dra::load_problem(spec_path), out_path); });
  }
  if (cmd_oracle->parsed()) {
    return guarded([&] {
      if (oracle_name == "ex27") {
        oracle_interval_residual(oracle);
      } else if (oracle_name == "ex33") {
        oracle_leaky_shift(oracle);
      } else if (oracle_name == "ex45" || oracle_name == "rotation") {
        oracle_rotation(oracle);
      } else if (oracle_name == "ex-short") {
        oracle_fix_sets(oracle);
      } else {
        throw dra::ParseError("unknown oracle name: " + oracle_name);
      }
    });
  }
  if (cmd_random->parsed()) {
    return guarded([&] {
      if (riters < 1) throw dra::ParseError("iters: expected >= 1");
      const dra::DrProblem problem =
          dra::random_problem(rn, rdu, rdv, rgap, rseed);
      const dra::ProblemSpec spec{rn,     problem.u, problem.v,
                                  problem.start, riters,    rseed};
      if (!rspec_out.empty()) {
        with_output(rspec_out, [&](std::ostream& out) {
          out << dra::problem_to_json(spec);
        });
      }
      run_pipeline(spec, rout);
    });
  }
  return 2;
}
