#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qss/bell.hpp"
#include "qss/protocol.hpp"
#include "qss/rng.hpp"
#include "qss/states.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(const Table& table, const std::string& out_path, const std::string& format) {
  std::string text;
  if (format == "csv") {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) text += ',';
      text += table.columns[i];
    }
    text += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += format_value(row[i]);
      }
      text += '\n';
    }
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
      rows.push_back(obj);
    }
    text = rows.dump(2) + "\n";
  }

  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << text;
  }
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (hi < lo) throw std::invalid_argument("range maximum is below its minimum");
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < steps; ++i) grid.push_back(lo + (hi - lo) * i / (steps - 1));
  return grid;
}

qss::Scenario scenario_for(int partners, int honest) {
  const int charlies = partners - 1 - honest;
  if (charlies < 0) throw std::invalid_argument("honest partner count exceeds N-1");
  return charlies == 0 ? qss::Scenario::external() : qss::Scenario::dishonest(charlies);
}

struct CommonOpts {
  int restarts = 50;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "output file (default: stdout)");
  cmd->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_optimizer_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--restarts", opts.restarts, "optimizer restarts");
  cmd->add_option("--seed", opts.seed, "deterministic seed");
  cmd->add_option("--tol", opts.tol, "optimizer convergence tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-inequality security analysis for GHZ-based secret sharing"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  int partners = 2;
  int honest = -1;  // default: everyone honest, external attack
  double phi_min = 0.0, phi_max = kPi / 2.0;
  double alpha_min = 0.955, alpha_max = 0.955;
  int steps = 9;
  int alpha_steps = 1;
  int trials = 1000;
  double threshold_tol = 1e-6;
  std::string state_spec;
  CommonOpts scan_opts, threshold_opts, monogamy_opts, counter_opts, bellmax_opts;

  CLI::App* scan = app.add_subcommand("scan", "information and Bell values over a phi grid");
  scan->set_help_flag("--help", "print help and exit");
  scan->add_option("--n", partners, "partner count N");
  scan->add_option("--h", honest, "honest partner count (default N-1)");
  scan->add_option("--phi-min", phi_min, "grid start");
  scan->add_option("--phi-max", phi_max, "grid end");
  scan->add_option("--steps", steps, "grid size");
  add_optimizer_flags(scan, scan_opts);
  add_output_flags(scan, scan_opts);

  CLI::App* threshold = app.add_subcommand("threshold", "attack strength where the two sides tie");
  threshold->set_help_flag("--help", "print help and exit");
  threshold->add_option("--n", partners, "partner count N");
  threshold->add_option("--h", honest, "honest partner count (default N-1)");
  threshold->add_option("--tol", threshold_tol, "bisection tolerance");
  add_output_flags(threshold, threshold_opts);

  CLI::App* monogamy = app.add_subcommand("monogamy", "pair Bell values of random 3-qubit states");
  monogamy->set_help_flag("--help", "print help and exit");
  monogamy->add_option("--trials", trials, "number of random states");
  monogamy->add_option("--seed", monogamy_opts.seed, "deterministic seed");
  add_output_flags(monogamy, monogamy_opts);

  CLI::App* counter = app.add_subcommand("counterexample", "two overlapping triple Bell maxima");
  counter->set_help_flag("--help", "print help and exit");
  counter->add_option("--alpha-min", alpha_min, "grid start");
  counter->add_option("--alpha-max", alpha_max, "grid end");
  counter->add_option("--steps", alpha_steps, "grid size");
  add_optimizer_flags(counter, counter_opts);
  add_output_flags(counter, counter_opts);

  CLI::App* bellmax = app.add_subcommand("bellmax", "see-saw Bell maximum of a state");
  bellmax->set_help_flag("--help", "print help and exit");
  bellmax->add_option("--state", state_spec, "state spec, e.g. ghz:3 or attack:N=2,h=1,phi=0.3")
      ->required();
  add_optimizer_flags(bellmax, bellmax_opts);
  add_output_flags(bellmax, bellmax_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scan->parsed()) {
      const int h = honest < 0 ? partners - 1 : honest;
      const qss::Scenario scenario = scenario_for(partners, h);
      const qss::MaximizeOptions opts{scan_opts.restarts, 500, scan_opts.tol, scan_opts.seed};
      const auto rows = qss::security_bell_table(partners, scenario,
                                                 linear_grid(phi_min, phi_max, steps), opts);
      Table table;
      table.columns = {"phi",    "I_a",          "I_u",         "S_auth",
                       "S_unauth", "sift_p",     "genuine_auth", "genuine_unauth"};
      for (const auto& r : rows)
        table.rows.push_back({r.phi, r.i_a, r.i_u, r.s_auth, r.s_unauth, r.sift_probability,
                              r.genuine_auth ? 1.0 : 0.0, r.genuine_unauth ? 1.0 : 0.0});
      write_table(table, scan_opts.out, scan_opts.format);
      return 0;
    }

    if (threshold->parsed()) {
      const int h = honest < 0 ? partners - 1 : honest;
      const double phi_star =
          qss::find_threshold(partners, scenario_for(partners, h), threshold_tol);
      write_table({{"phi_star"}, {{phi_star}}}, threshold_opts.out, threshold_opts.format);
      return 0;
    }

    if (monogamy->parsed()) {
      if (trials < 1) throw std::invalid_argument("trials must be at least 1");
      qss::Rng rng(monogamy_opts.seed);
      double max_sum = 0.0;
      for (int t = 0; t < trials; ++t) {
        const qss::DensityMatrix rho = t % 2 == 0
                                           ? qss::DensityMatrix::from_state(qss::random_pure_state(3, rng))
                                           : qss::random_mixed_state(3, rng);
        const auto [s01, s02] = qss::monogamy_pair(rho);
        max_sum = std::max(max_sum, s01 + s02);
      }
      write_table({{"trials", "max_sum"}, {{static_cast<double>(trials), max_sum}}},
                  monogamy_opts.out, monogamy_opts.format);
      return 0;
    }

    if (counter->parsed()) {
      const qss::MaximizeOptions opts{counter_opts.restarts, 500, counter_opts.tol,
                                      counter_opts.seed};
      const auto rows =
          qss::counterexample_scan(linear_grid(alpha_min, alpha_max, alpha_steps), opts);
      Table table;
      table.columns = {"alpha", "S_ABC", "S_BCD"};
      for (const auto& r : rows) table.rows.push_back({r.alpha, r.s_abc, r.s_bcd});
      write_table(table, counter_opts.out, counter_opts.format);
      return 0;
    }

    if (bellmax->parsed()) {
      const qss::StateVector psi = qss::parse_state(state_spec);
      const qss::MaximizeOptions opts{bellmax_opts.restarts, 500, bellmax_opts.tol,
                                      bellmax_opts.seed};
      const qss::BellResult result =
          qss::mk_maximize(qss::DensityMatrix::from_state(psi), opts);
      write_table({{"value", "m", "converged", "restarts_used", "iterations"},
                   {{result.value, static_cast<double>(psi.num_qubits()),
                     result.converged ? 1.0 : 0.0, static_cast<double>(result.restarts_used),
                     static_cast<double>(result.iterations)}}},
                  bellmax_opts.out, bellmax_opts.format);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  }
  return 2;
}
