#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "adrctl/cg_optimizer.hpp"
#include "adrctl/discretization.hpp"
#include "adrctl/fields.hpp"
#include "adrctl/objective.hpp"

namespace adrctl {

enum class IcKind { pulse, sine };

std::string to_string(IcKind k);
IcKind parse_ic_kind(const std::string& s);

/// Initial state. A pulse is `amplitude` on the closed interval
/// [support_a, support_b] and zero elsewhere; a sine is
/// amplitude * sin(frequency * pi * x / L).
struct InitialCondition {
  IcKind kind = IcKind::sine;
  double amplitude = 10.0;
  int frequency = 1;
  double support_a = 0.4;
  double support_b = 0.6;

  /// Short description used to tell experiment bases apart.
  std::string label() const;
};

void validate(const InitialCondition& ic, double L);

/// Samples the initial condition at x_j = L j / H, j = 0..H.
std::vector<double> make_initial_condition(const InitialCondition& ic, const GridConfig& grid,
                                           double L);

/// Cfl ratios above this are refused by the harness.
inline constexpr double kRefuseCfl = 2.0;
/// Cfl ratios above this only produce a warning.
inline constexpr double kWarnCfl = 1.0;

struct ExperimentSpec {
  PhysicalConfig phys;
  std::size_t N = 0;  // 0 selects smallest_stable_steps(phys, H)
  std::size_t H = 100;
  InitialCondition ic;
  CGConfig cg;
  std::vector<std::size_t> control_counts{2, 4, 10};
  std::filesystem::path output_dir = "out";
};

/// Result of one control count within an experiment.
struct ExperimentRow {
  std::string basis;  // InitialCondition::label() of the experiment
  std::size_t M = 0;
  std::size_t iterations = 0;
  std::string status;  // CGStatus name, or "blow_up" / "not_positive_definite"
  std::string error;   // empty unless the run failed
  CostBreakdown final_cost;
  double control_energy = 0.0;  // k0-weighted control term of J
  double terminal_norm = 0.0;   // h-weighted l2 norm of y^{N+1} under u*
  double uncontrolled_terminal_norm = 0.0;
  double cfl = 0.0;

  bool failed() const { return !error.empty(); }
};

struct ExperimentSummary {
  std::vector<ExperimentRow> rows;

  bool any_failed() const;
};

/// Output directory of one run: <out>/<ic>_<M>.
std::filesystem::path run_directory(const ExperimentSpec& spec, std::size_t M);

/// Runs cg_solve for each control count and writes state.csv, controls.csv,
/// convergence.csv and summary.txt per run, plus comparison.txt for the
/// whole sweep when at least two runs succeed. Solver failures are recorded
/// in the row and do not stop the other runs. Throws ConfigError for invalid
/// specs and IoError when files cannot be written.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

/// Builds the problem for one control count, applying the N default.
DiscreteProblem experiment_problem(const ExperimentSpec& spec, std::size_t M);

// CSV writers. Doubles are printed with 17 significant digits.
void write_state_csv(const std::filesystem::path& path, const DiscreteProblem& p,
                     const StateField& y);
void write_controls_csv(const std::filesystem::path& path, const DiscreteProblem& p,
                        const ControlField& v);
void write_convergence_csv(const std::filesystem::path& path, const CGReport& report);
void write_summary(const std::filesystem::path& path, const ExperimentRow& row);

/// Reads the interior values of a state.csv written for grid p. Ghost
/// columns are left zero.
StateField read_state_csv(const std::filesystem::path& path, const DiscreteProblem& p);

struct ComparisonEntry {
  std::size_t control_count = 0;  // M + 1
  double total_cost = 0.0;
  double control_energy = 0.0;
  double terminal_norm = 0.0;
  bool smallest_terminal_norm = false;
};

struct ComparisonTable {
  std::string basis;
  std::vector<ComparisonEntry> entries;  // sorted by control count
  bool tie = false;                      // more than one entry holds the minimum
};

/// Compares runs over control counts. Needs at least two successful rows on
/// the same basis; throws ConfigError otherwise.
ComparisonTable compare_controls(std::span<const ExperimentRow> rows);

std::string format_comparison(const ComparisonTable& table);

}  // namespace adrctl
