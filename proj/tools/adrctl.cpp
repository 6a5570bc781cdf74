// Command-line front end: optimal control runs, grid checks, and the
// exponential-reaction instability demo.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adrctl/cg_optimizer.hpp"
#include "adrctl/discretization.hpp"
#include "adrctl/errors.hpp"
#include "adrctl/harness.hpp"
#include "adrctl/instability.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kBlowUp = 2, kIoError = 3 };

struct RunOptions {
  std::string ic = "sine";
  double amplitude = 10.0;
  int frequency = 1;
  std::vector<double> support;
  adrctl::PhysicalConfig phys;
  std::size_t N = 0;
  std::size_t H = 100;
  std::vector<std::size_t> M{2, 4, 10};
  double tol = 1e-6;
  std::size_t max_iter = 0;
  std::string adjoint = "transpose";
  std::string out = "out";
};

void add_problem_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--L", o.phys.L, "Domain length")->capture_default_str();
  cmd->add_option("--T", o.phys.T, "Time horizon")->capture_default_str();
  cmd->add_option("--mu", o.phys.mu, "Diffusion coefficient")->capture_default_str();
  cmd->add_option("--eps", o.phys.eps, "Advection coefficient")->capture_default_str();
  cmd->add_option("--k0", o.phys.k0, "Control cost weight")->capture_default_str();
  cmd->add_option("--k1", o.phys.k1, "Running state cost weight")->capture_default_str();
  cmd->add_option("--k2", o.phys.k2, "Terminal state cost weight")->capture_default_str();
  cmd->add_option("--N", o.N, "Time steps (0: smallest with cfl <= 0.5)")->capture_default_str();
  cmd->add_option("--H", o.H, "Space intervals")->capture_default_str();
  cmd->add_option("--M", o.M, "Control intervals; repeat to sweep")->capture_default_str();
}

adrctl::ExperimentSpec make_spec(const RunOptions& o) {
  adrctl::ExperimentSpec spec;
  spec.phys = o.phys;
  spec.N = o.N;
  spec.H = o.H;
  spec.ic.kind = adrctl::parse_ic_kind(o.ic);
  spec.ic.amplitude = o.amplitude;
  spec.ic.frequency = o.frequency;
  if (o.support.empty()) {
    spec.ic.support_a = 0.4 * o.phys.L;
    spec.ic.support_b = 0.6 * o.phys.L;
  } else if (o.support.size() == 2) {
    spec.ic.support_a = o.support[0];
    spec.ic.support_b = o.support[1];
  } else {
    throw adrctl::ConfigError("--support expects a,b");
  }
  spec.cg.tol = o.tol;
  spec.cg.max_iter = o.max_iter;
  if (o.adjoint == "transpose") {
    spec.cg.adjoint = adrctl::AdjointScheme::transpose;
  } else if (o.adjoint == "printed") {
    spec.cg.adjoint = adrctl::AdjointScheme::as_printed;
  } else {
    throw adrctl::ConfigError("--adjoint must be transpose or printed");
  }
  spec.control_counts = o.M;
  spec.output_dir = o.out;
  return spec;
}

int run_command(const RunOptions& o) {
  const auto spec = make_spec(o);
  const auto summary = adrctl::run_experiment(spec);
  for (const auto& r : summary.rows) {
    std::printf("M=%zu controls=%zu status=%s iterations=%zu J=%.6g terminal_norm=%.6g "
                "uncontrolled=%.6g cfl=%.3g\n",
                r.M, r.M + 1, r.status.c_str(), r.iterations, r.final_cost.total, r.terminal_norm,
                r.uncontrolled_terminal_norm, r.cfl);
    if (r.failed()) std::fprintf(stderr, "error: M=%zu: %s\n", r.M, r.error.c_str());
  }
  std::vector<adrctl::ExperimentRow> ok;
  for (const auto& r : summary.rows) {
    if (!r.failed()) ok.push_back(r);
  }
  if (ok.size() >= 2) std::cout << adrctl::format_comparison(adrctl::compare_controls(ok));
  return summary.any_failed() ? kBlowUp : kOk;
}

int check_command(const RunOptions& o) {
  adrctl::ExperimentSpec spec;
  spec.phys = o.phys;
  spec.N = o.N;
  spec.H = o.H;
  int code = kOk;
  for (std::size_t M : o.M) {
    const auto p = adrctl::experiment_problem(spec, M);
    const double r = adrctl::cfl_ratio(p);
    const char* verdict = r > adrctl::kRefuseCfl ? "refused"
                          : r > adrctl::kWarnCfl ? "warning"
                                                 : "ok";
    std::printf("M=%zu N=%zu H=%zu dt=%.6g h=%.6g cfl=%.6g %s\n", M, p.grid.N, p.grid.H,
                p.grid.dt, p.grid.h, r, verdict);
    if (r > adrctl::kRefuseCfl) code = kInvalidConfig;
  }
  return code;
}

int demo_command(const adrctl::ReactionParams& params) {
  std::printf("phi_s=%.17g\n", adrctl::steady_state(params.C, params.lambda));
  std::printf("n,phi,log10_magnitude\n");
  const int digits = params.significant_digits > 0 ? params.significant_digits : 17;
  for (const auto& e : adrctl::euler_iterate(params)) {
    if (e.phi) {
      std::printf("%zu,%.*g,\n", e.n, digits, *e.phi);
    } else {
      std::printf("%zu,overflow,%.17g\n", e.n, *e.log10_magnitude);
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal multi-point control of a 1D advection-diffusion-reaction equation"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Solve the control problem for each M and write CSVs");
  run->add_option("--ic", run_opts.ic, "Initial condition")
      ->check(CLI::IsMember({"pulse", "sine"}))
      ->capture_default_str();
  run->add_option("--amplitude", run_opts.amplitude, "Initial condition amplitude")
      ->capture_default_str();
  run->add_option("--frequency", run_opts.frequency, "Sine half-waves over [0, L]")
      ->capture_default_str();
  run->add_option("--support", run_opts.support, "Pulse support a,b (default 0.4L,0.6L)")
      ->delimiter(',')
      ->expected(2);
  add_problem_flags(run, run_opts);
  run->add_option("--tol", run_opts.tol, "CG relative gradient tolerance")->capture_default_str();
  run->add_option("--max-iter", run_opts.max_iter, "CG iteration cap (0: 3 (M+1)(N+1))")
      ->capture_default_str();
  run->add_option("--adjoint", run_opts.adjoint, "Adjoint scheme: transpose or printed")
      ->check(CLI::IsMember({"transpose", "printed"}))
      ->capture_default_str();
  run->add_option("--out", run_opts.out, "Output directory")->capture_default_str();

  RunOptions check_opts;
  auto* check = app.add_subcommand("check", "Validate the grid and report the cfl ratio");
  add_problem_flags(check, check_opts);

  adrctl::ReactionParams demo_params;
  auto* demo = app.add_subcommand("demo-instability",
                                  "Explicit Euler on dphi/dt = lambda e^phi - C near steady state");
  demo->add_option("--dphi", demo_params.dphi, "Perturbation of the steady state")
      ->capture_default_str();
  demo->add_option("--C", demo_params.C, "Constant C")->capture_default_str();
  demo->add_option("--lambda", demo_params.lambda, "Constant lambda")->capture_default_str();
  demo->add_option("--dt", demo_params.dt, "Euler step")->capture_default_str();
  demo->add_option("--steps", demo_params.steps, "Number of steps")->capture_default_str();
  demo->add_option("--digits", demo_params.significant_digits,
                   "Round each iterate to this many significant digits (0: full precision)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*run) return run_command(run_opts);
    if (*check) return check_command(check_opts);
    if (*demo) return demo_command(demo_params);
  } catch (const adrctl::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const adrctl::ShapeError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const adrctl::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const adrctl::BlowUpError& e) {
    std::cerr << "solver blow-up: " << e.what() << '\n';
    return kBlowUp;
  } catch (const adrctl::NotPositiveDefiniteError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kBlowUp;
  }
  return kOk;
}
