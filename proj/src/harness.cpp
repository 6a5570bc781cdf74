#include "adrctl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "adrctl/errors.hpp"
#include "adrctl/pde_solvers.hpp"

namespace adrctl {

namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace

std::string to_string(IcKind k) { return k == IcKind::pulse ? "pulse" : "sine"; }

IcKind parse_ic_kind(const std::string& s) {
  if (s == "pulse") return IcKind::pulse;
  if (s == "sine") return IcKind::sine;
  throw ConfigError("unknown initial condition '" + s + "'");
}

std::string InitialCondition::label() const {
  std::ostringstream os;
  if (kind == IcKind::pulse) {
    os << "pulse(amplitude=" << num(amplitude) << ",support=[" << num(support_a) << ","
       << num(support_b) << "])";
  } else {
    os << "sine(amplitude=" << num(amplitude) << ",frequency=" << frequency << ")";
  }
  return os.str();
}

void validate(const InitialCondition& ic, double L) {
  if (!std::isfinite(ic.amplitude)) throw ConfigError("amplitude must be finite");
  if (ic.kind == IcKind::sine) {
    if (ic.frequency < 1) throw ConfigError("sine frequency must be at least 1");
  } else if (!(ic.support_a >= 0.0 && ic.support_a < ic.support_b && ic.support_b <= L)) {
    throw ConfigError("pulse support must satisfy 0 <= a < b <= L");
  }
}

std::vector<double> make_initial_condition(const InitialCondition& ic, const GridConfig& grid,
                                           double L) {
  validate(ic, L);
  const double slack = 1e-12 * L;
  std::vector<double> y0(grid.H + 1);
  for (std::size_t j = 0; j <= grid.H; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(grid.H);
    if (ic.kind == IcKind::sine) {
      y0[j] = ic.amplitude * std::sin(ic.frequency * std::numbers::pi * s);
    } else {
      const double x = L * s;
      y0[j] = (x >= ic.support_a - slack && x <= ic.support_b + slack) ? ic.amplitude : 0.0;
    }
  }
  return y0;
}

bool ExperimentSummary::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.failed(); });
}

fs::path run_directory(const ExperimentSpec& spec, std::size_t M) {
  return spec.output_dir / (to_string(spec.ic.kind) + "_" + std::to_string(M));
}

DiscreteProblem experiment_problem(const ExperimentSpec& spec, std::size_t M) {
  validate(spec.phys);
  const std::size_t N = spec.N > 0 ? spec.N : smallest_stable_steps(spec.phys, spec.H);
  return make_problem(spec.phys, make_grid(spec.phys.L, spec.phys.T, N, spec.H, M));
}

void write_state_csv(const fs::path& path, const DiscreteProblem& p, const StateField& y) {
  auto out = open_out(path);
  out << "n,t,j,x,y\n";
  for (std::size_t n = 0; n < y.levels(); ++n) {
    const auto level = y.interior(n);
    const std::string t = num(static_cast<double>(n) * p.grid.dt);
    for (std::size_t j = 0; j < level.size(); ++j) {
      out << n << ',' << t << ',' << j << ',' << num(static_cast<double>(j) * p.grid.h) << ','
          << num(level[j]) << '\n';
    }
  }
  finish(out, path);
}

void write_controls_csv(const fs::path& path, const DiscreteProblem& p, const ControlField& v) {
  const auto nodes = control_indices(p.grid);
  auto out = open_out(path);
  out << "n,t,k,x_k,v\n";
  for (std::size_t n = 0; n < v.samples(); ++n) {
    const std::string t = num(static_cast<double>(n) * p.grid.dt);
    for (std::size_t k = 0; k < v.controls(); ++k) {
      out << n << ',' << t << ',' << k << ',' << num(static_cast<double>(nodes[k]) * p.grid.h)
          << ',' << num(v(k, n)) << '\n';
    }
  }
  finish(out, path);
}

void write_convergence_csv(const fs::path& path, const CGReport& report) {
  auto out = open_out(path);
  out << "m,J,J_control,J_running,J_terminal,grad_ratio\n";
  for (std::size_t m = 0; m < report.cost_history.size(); ++m) {
    const auto& c = report.cost_history[m];
    out << m << ',' << num(c.total) << ',' << num(c.control_term) << ',' << num(c.running_term)
        << ',' << num(c.terminal_term) << ',' << num(report.grad_ratio_history[m]) << '\n';
  }
  finish(out, path);
}

void write_summary(const fs::path& path, const ExperimentRow& row) {
  auto out = open_out(path);
  out << "M=" << row.M << '\n'
      << "iterations=" << row.iterations << '\n'
      << "status=" << row.status << '\n'
      << "J_total=" << num(row.final_cost.total) << '\n'
      << "control_energy=" << num(row.control_energy) << '\n'
      << "terminal_norm=" << num(row.terminal_norm) << '\n'
      << "uncontrolled_terminal_norm=" << num(row.uncontrolled_terminal_norm) << '\n'
      << "cfl_ratio=" << num(row.cfl) << '\n';
  finish(out, path);
}

StateField read_state_csv(const fs::path& path, const DiscreteProblem& p) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "n,t,j,x,y") {
    throw IoError(path.string() + ": unexpected header");
  }
  StateField y(p.grid);
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string n_s, t_s, j_s, x_s, y_s;
    if (!std::getline(row, n_s, ',') || !std::getline(row, t_s, ',') ||
        !std::getline(row, j_s, ',') || !std::getline(row, x_s, ',') || !std::getline(row, y_s)) {
      throw IoError(path.string() + ": malformed row '" + line + "'");
    }
    const auto n = std::stoul(n_s);
    const auto j = std::stol(j_s);
    if (n >= y.levels() || j < 0 || static_cast<std::size_t>(j) > p.grid.H) {
      throw IoError(path.string() + ": index out of range in '" + line + "'");
    }
    y.at(n, j) = std::strtod(y_s.c_str(), nullptr);
    ++count;
  }
  if (count != y.levels() * (p.grid.H + 1)) throw IoError(path.string() + ": missing rows");
  return y;
}

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  if (spec.control_counts.empty()) throw ConfigError("no control counts given");
  validate(spec.cg);
  validate(spec.ic, spec.phys.L);

  // Validate every run before touching the filesystem.
  std::vector<DiscreteProblem> problems;
  for (std::size_t M : spec.control_counts) {
    problems.push_back(experiment_problem(spec, M));
    const double r = cfl_ratio(problems.back());
    if (r > kRefuseCfl) {
      throw ConfigError("cfl ratio " + num(r) + " exceeds " + num(kRefuseCfl) +
                        "; increase N or decrease H");
    }
    if (r > kWarnCfl) {
      std::cerr << "warning: cfl ratio " << r << " > 1, the explicit scheme may be unstable\n";
    }
  }

  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec) throw IoError("cannot create " + spec.output_dir.string() + ": " + ec.message());

  ExperimentSummary summary;
  for (const auto& p : problems) {
    ExperimentRow row;
    row.basis = spec.ic.label();
    row.M = p.grid.M;
    row.cfl = cfl_ratio(p);

    const auto dir = run_directory(spec, p.grid.M);
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    const auto y0 = make_initial_condition(spec.ic, p.grid, p.phys.L);
    try {
      const StateField free = solve_state(p, y0, ControlField::zeros(p.grid));
      row.uncontrolled_terminal_norm = level_norm(p, free, p.grid.N + 1);

      const CGResult res = cg_solve(p, y0, spec.cg);
      const StateField y = solve_state(p, y0, res.control);
      row.iterations = res.report.iterations;
      row.status = to_string(res.report.status);
      row.final_cost = cost(p, res.control, y);
      row.control_energy = row.final_cost.control_term;
      row.terminal_norm = level_norm(p, y, p.grid.N + 1);

      write_state_csv(dir / "state.csv", p, y);
      write_controls_csv(dir / "controls.csv", p, res.control);
      write_convergence_csv(dir / "convergence.csv", res.report);

      if (res.report.status == CGStatus::converged &&
          !(row.terminal_norm < row.uncontrolled_terminal_norm)) {
        std::cerr << "warning: M=" << row.M
                  << ": controlled terminal norm is not below the uncontrolled one\n";
      }
    } catch (const BlowUpError& e) {
      row.status = "blow_up";
      row.error = e.what();
    } catch (const NotPositiveDefiniteError& e) {
      row.status = "not_positive_definite";
      row.error = e.what();
    }
    write_summary(dir / "summary.txt", row);
    summary.rows.push_back(row);
  }

  std::vector<ExperimentRow> ok;
  std::copy_if(summary.rows.begin(), summary.rows.end(), std::back_inserter(ok),
               [](const auto& r) { return !r.failed(); });
  if (ok.size() >= 2) {
    write_text(spec.output_dir / "comparison.txt", format_comparison(compare_controls(ok)));
  }
  return summary;
}

ComparisonTable compare_controls(std::span<const ExperimentRow> rows) {
  if (rows.size() < 2) throw ConfigError("comparison needs at least two runs");
  ComparisonTable table;
  table.basis = rows.front().basis;
  for (const auto& r : rows) {
    if (r.basis != table.basis) throw ConfigError("runs come from different initial conditions");
    if (r.failed()) throw ConfigError("cannot compare a failed run (M=" + std::to_string(r.M) + ")");
    table.entries.push_back({r.M + 1, r.final_cost.total, r.control_energy, r.terminal_norm, false});
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const auto& a, const auto& b) { return a.control_count < b.control_count; });

  double best = table.entries.front().terminal_norm;
  for (const auto& e : table.entries) best = std::min(best, e.terminal_norm);
  std::size_t winners = 0;
  for (auto& e : table.entries) {
    e.smallest_terminal_norm = (e.terminal_norm == best);
    winners += e.smallest_terminal_norm ? 1 : 0;
  }
  table.tie = winners > 1;
  return table;
}

std::string format_comparison(const ComparisonTable& table) {
  std::ostringstream os;
  os << "# " << table.basis << '\n';
  os << "controls,J_total,control_energy,terminal_norm,smallest_terminal_norm\n";
  for (const auto& e : table.entries) {
    os << e.control_count << ',' << num(e.total_cost) << ',' << num(e.control_energy) << ','
       << num(e.terminal_norm) << ',' << (e.smallest_terminal_norm ? (table.tie ? "tie" : "yes") : "no")
       << '\n';
  }
  return os.str();
}

}  // namespace adrctl
