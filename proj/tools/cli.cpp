#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ionet/dynamics.hpp"
#include "ionet/economy.hpp"
#include "ionet/error.hpp"
#include "ionet/matrix_ops.hpp"
#include "ionet/network_io.hpp"
#include "ionet/text_format.hpp"
#include "ionet/trace_io.hpp"

namespace ionet::cli {
namespace {

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string agent_list(const VertexSet& agents) {
  if (agents.empty()) return "(none)";
  std::string s;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(agents[k] + 1);
  }
  return s;
}

std::vector<std::size_t> one_based(const VertexSet& agents) {
  std::vector<std::size_t> out;
  for (auto a : agents) out.push_back(a + 1);
  return out;
}

void print_state_human(std::ostream& out, const Vector& x, std::size_t n, std::size_t d) {
  for (Agent i = 0; i < n; ++i)
    for (Industry p = 0; p < d; ++p)
      out << "  " << state_column_name(i + 1, p + 1) << " = " << human(x[i * d + p]) << '\n';
}

void print_report(std::ostream& out, const ValidationReport& r, bool json) {
  if (json) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model_class").value(to_string(r.model_class));
    w.key("out_roots").inline_array(std::span<const std::size_t>(one_based(r.root_set)));
    w.key("w_column_stochastic").value(r.w_column_stochastic);
    w.key("has_out_root").value(r.has_out_root);
    w.key("root_subgraph_strongly_connected").value(r.root_subgraph_strongly_connected);
    w.key("root_subgraph_aperiodic").value(r.root_subgraph_aperiodic);
    w.key("all_edge_matrices_primitive").value(r.all_edge_matrices_primitive);
    w.key("all_edge_column_sums_at_most_one").value(r.all_edge_column_sums_at_most_one);
    w.key("all_edge_matrices_column_stochastic").value(r.all_edge_matrices_column_stochastic);
    w.key("demand_nonzero").value(r.demand_nonzero);
    w.key("substochastic_edge_in_root_subgraph").value(r.substochastic_edge_in_root_subgraph);
    w.key("per_agent_substochastic_supplier").value(r.per_agent_substochastic_supplier);
    w.end_object();
    return;
  }
  out << "model class: " << to_string(r.model_class) << '\n'
      << "out-roots: " << agent_list(r.root_set) << '\n'
      << "weights column-stochastic: " << yes_no(r.w_column_stochastic) << '\n'
      << "has out-root: " << yes_no(r.has_out_root) << '\n'
      << "root subgraph strongly connected: " << yes_no(r.root_subgraph_strongly_connected) << '\n'
      << "root subgraph aperiodic: " << yes_no(r.root_subgraph_aperiodic) << '\n'
      << "edge matrices primitive: " << yes_no(r.all_edge_matrices_primitive) << '\n'
      << "edge column sums at most one: " << yes_no(r.all_edge_column_sums_at_most_one) << '\n'
      << "edge matrices column-stochastic: " << yes_no(r.all_edge_matrices_column_stochastic)
      << '\n'
      << "demand nonzero: " << yes_no(r.demand_nonzero) << '\n'
      << "substochastic edge in root subgraph: " << yes_no(r.substochastic_edge_in_root_subgraph)
      << '\n'
      << "every agent has a substochastic supplier: "
      << yes_no(r.per_agent_substochastic_supplier) << '\n';
}

void print_spectrum(std::ostream& out, const LiftedSystem& sys, bool json) {
  const SpectralResult s = power_iteration(sys.a_bar);
  if (json) {
    JsonWriter w(out);
    w.begin_object();
    w.key("eigenvalue").value(s.eigenvalue);
    w.key("iterations").value(s.iterations);
    w.key("residual").value(s.residual);
    w.key("eigenvector").inline_array(s.eigenvector);
    w.end_object();
    return;
  }
  out << "dominant eigenvalue: " << human(s.eigenvalue) << '\n'
      << "iterations: " << s.iterations << '\n'
      << "residual: " << human(s.residual) << '\n'
      << "perron vector:\n";
  print_state_human(out, s.eigenvector, sys.agents, sys.industries);
}

struct Settings {
  std::string file;
  bool json = false;
  double tol = kStochasticTolerance;
  int steps = SimulationOptions{}.max_steps;
  double conv_tol = SimulationOptions{}.convergence_tol;
  int record_every = 1;
  std::string trace_out;
  std::string method = "direct";
  double damping = 0.15;
  std::size_t agent = 1;
  std::string out_file;
};

int cmd_validate(const Settings& s, std::ostream& out) {
  const auto net = load_network(s.file);
  const auto report = validate(net, s.tol);
  print_report(out, report, s.json);
  return report.model_class == ModelClass::Invalid ? 1 : 0;
}

int cmd_simulate(const Settings& s, std::ostream& out) {
  const auto net = load_network(s.file);
  require_assumptions(validate(net, s.tol));
  const auto sys = build_lifted(net);
  const SimulationOptions opts{s.steps, s.conv_tol, s.record_every};
  const auto trace = simulate(sys, net.initial_state(), opts);
  if (!s.trace_out.empty()) {
    std::ofstream f(s.trace_out);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + s.trace_out);
    write_trace(f, trace, net.agents(), net.industries());
  }
  const Vector& last = trace.states.back();
  if (s.json) {
    JsonWriter w(out);
    w.begin_object();
    w.key("converged").value(trace.converged);
    w.key("final_step").value(trace.final_step);
    w.key("final_delta").value(trace.final_delta);
    w.key("recorded_states").value(trace.states.size());
    w.key("final_state").inline_array(last);
    w.end_object();
  } else {
    out << "converged: " << yes_no(trace.converged) << '\n'
        << "final step: " << trace.final_step << '\n'
        << "final delta: " << human(trace.final_delta) << '\n'
        << "final state:\n";
    print_state_human(out, last, net.agents(), net.industries());
  }
  return 0;
}

int cmd_equilibrium(const Settings& s, std::ostream& out) {
  const auto net = load_network(s.file);
  require_assumptions(validate(net, s.tol));
  const auto sys = build_lifted(net);
  const SolveMethod method = s.method == "direct" ? SolveMethod::Direct : SolveMethod::Iterative;
  const SimulationOptions opts{s.steps, s.conv_tol, 1};
  const auto res = open_equilibrium(sys, method, opts);
  if (s.json) {
    JsonWriter w(out);
    w.begin_object();
    w.key("method").value(to_string(res.method));
    w.key("spectral_radius_estimate").value(res.spectral_radius_estimate);
    w.key("residual").value(res.residual);
    w.key("nonnegative").value(res.nonnegative);
    w.key("x_star").inline_array(res.x_star);
    w.end_object();
  } else {
    out << "method: " << to_string(res.method) << '\n'
        << "spectral radius estimate: " << human(res.spectral_radius_estimate) << '\n'
        << "residual: " << human(res.residual) << '\n'
        << "nonnegative: " << yes_no(res.nonnegative) << '\n'
        << "equilibrium:\n";
    print_state_human(out, res.x_star, net.agents(), net.industries());
  }
  return 0;
}

int cmd_spectrum(const Settings& s, std::ostream& out) {
  print_spectrum(out, build_lifted(load_network(s.file)), s.json);
  return 0;
}

int cmd_pagerank(const Settings& s, std::ostream& out) {
  const auto net = regularize_pagerank(load_network(s.file), s.damping);
  print_spectrum(out, build_lifted(net), s.json);
  return 0;
}

int cmd_plot_data(const Settings& s, std::ostream& out) {
  std::ifstream f(s.file);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + s.file);
  const auto table = read_trace(f);
  if (s.out_file.empty()) {
    write_agent_series(out, table, s.agent);
  } else {
    std::ofstream o(s.out_file);
    if (!o) throw Error(ErrorCode::IoError, "cannot write " + s.out_file);
    write_agent_series(o, table, s.agent);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Networked input-output economies: validation, simulation, equilibria", "ionet"};
  app.require_subcommand(1);
  Settings s;

  auto* validate_cmd = app.add_subcommand("validate", "Check the modelling assumptions");
  validate_cmd->add_option("file", s.file, "Network file")->required();
  validate_cmd->add_flag("--json", s.json, "Machine-readable output");
  validate_cmd->add_option("--tol", s.tol, "Stochasticity tolerance")->check(CLI::PositiveNumber);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the update law");
  simulate_cmd->add_option("file", s.file, "Network file")->required();
  simulate_cmd->add_option("--steps", s.steps, "Maximum number of steps")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--tol", s.conv_tol, "Convergence tolerance on successive states")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--trace", s.trace_out, "Write the trace CSV here");
  simulate_cmd->add_option("--record-every", s.record_every, "Record every k-th state")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--json", s.json, "Machine-readable output");

  auto* equilibrium_cmd = app.add_subcommand("equilibrium", "Solve x = A_bar x + y");
  equilibrium_cmd->add_option("file", s.file, "Network file")->required();
  equilibrium_cmd->add_option("--method", s.method, "direct or iterate")
      ->check(CLI::IsMember({"direct", "iterate"}));
  equilibrium_cmd->add_option("--steps", s.steps, "Iteration budget for --method iterate")
      ->check(CLI::PositiveNumber);
  equilibrium_cmd->add_option("--tol", s.conv_tol, "Convergence tolerance for --method iterate")
      ->check(CLI::PositiveNumber);
  equilibrium_cmd->add_flag("--json", s.json, "Machine-readable output");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dominant eigenpair of the lifted matrix");
  spectrum_cmd->add_option("file", s.file, "Network file")->required();
  spectrum_cmd->add_flag("--json", s.json, "Machine-readable output");

  auto* pagerank_cmd =
      app.add_subcommand("pagerank", "Blend edge matrices with the uniform matrix, then spectrum");
  pagerank_cmd->add_option("file", s.file, "Network file")->required();
  pagerank_cmd->add_option("--damping", s.damping, "Blend factor m in (0,1)");
  pagerank_cmd->add_flag("--json", s.json, "Machine-readable output");

  auto* plot_cmd = app.add_subcommand("plot-data", "Per-industry series of one agent from a trace");
  plot_cmd->add_option("trace", s.file, "Trace CSV written by simulate")->required();
  plot_cmd->add_option("--agent", s.agent, "Agent index (1-based)")->required()
      ->check(CLI::PositiveNumber);
  plot_cmd->add_option("--out", s.out_file, "Write to this file instead of stdout");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(s, out);
    if (*simulate_cmd) return cmd_simulate(s, out);
    if (*equilibrium_cmd) return cmd_equilibrium(s, out);
    if (*spectrum_cmd) return cmd_spectrum(s, out);
    if (*pagerank_cmd) return cmd_pagerank(s, out);
    if (*plot_cmd) return cmd_plot_data(s, out);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ionet::cli
