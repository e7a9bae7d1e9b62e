// tnsc: transport slice feasibility evaluation, disjoint-path queries and
// scenario simulation.
//
// Exit codes: 0 success (per-row diagnostics included), 1 parse or
// validation failure, 2 internal error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tnsc/error.hpp"
#include "tnsc/feasibility.hpp"
#include "tnsc/io.hpp"
#include "tnsc/pathfind.hpp"
#include "tnsc/scenario.hpp"

namespace {

struct TableArgs {
  std::string topology;
  std::string requests;
  std::string bounds;
  std::string weights;
  std::string format = "json";
  std::string out;
  std::string mode = "link-disjoint";
};

void add_table_options(CLI::App& cmd, TableArgs& args) {
  cmd.add_option("--topology", args.topology, "Topology JSON (needed for derived bounds)");
  cmd.add_option("--requests", args.requests, "Slice requests JSON")->required();
  cmd.add_option("--bounds", args.bounds, "Trait bounds JSON")->required();
  cmd.add_option("--weights", args.weights, "Per-dimension weights JSON");
  cmd.add_option("--format", args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--out", args.out, "Output file (default: stdout)");
  cmd.add_option("--mode", args.mode, "Disjointness mode for derived bounds")
      ->check(CLI::IsMember({"link-disjoint", "node-disjoint", "srlg-disjoint",
                             "link_disjoint", "node_disjoint", "srlg_disjoint"}));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw tnsc::Error(tnsc::ErrorCode::ValidationError, out, "cannot write output");
  file << text;
}

std::vector<tnsc::EvaluationRow> evaluate_table(const TableArgs& args) {
  std::optional<tnsc::NetworkTopology> topology;
  if (!args.topology.empty())
    topology = tnsc::validate_topology(tnsc::topology_from_json(tnsc::read_json_file(args.topology)));
  const auto requests = tnsc::requests_from_json(tnsc::read_json_file(args.requests));

  tnsc::EvaluationContext context;
  context.bounds = tnsc::bounds_from_json(tnsc::read_json_file(args.bounds));
  context.topology = topology ? &*topology : nullptr;
  context.mode = tnsc::parse_mode(args.mode);
  if (!args.weights.empty()) context.weights = tnsc::weights_from_json(tnsc::read_json_file(args.weights));
  if (context.bounds.mode == tnsc::BoundsMode::Derived && !topology)
    throw tnsc::Error(tnsc::ErrorCode::ValidationError, "--topology", "derived bounds need a topology");
  return tnsc::evaluate_rows(requests, context);
}

tnsc::TableFormat table_format(const std::string& text) {
  return text == "csv" ? tnsc::TableFormat::Csv : tnsc::TableFormat::Json;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transport network slice controller simulator"};
  app.require_subcommand(1);

  TableArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Feasibility vectors and indices per request");
  add_table_options(*evaluate, evaluate_args);

  TableArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Requests sorted by feasibility index");
  add_table_options(*rank, rank_args);

  std::string paths_topology, src, dst, paths_mode = "link-disjoint";
  int k = 2;
  std::size_t budget = 1000;
  auto* paths = app.add_subcommand("paths", "k disjoint paths between two nodes");
  paths->add_option("--topology", paths_topology, "Topology JSON")->required();
  paths->add_option("--src", src, "Source node")->required();
  paths->add_option("--dst", dst, "Destination node")->required();
  paths->add_option("--k", k, "Number of disjoint paths")->check(CLI::PositiveNumber);
  paths->add_option("--mode", paths_mode, "link-disjoint | node-disjoint | srlg-disjoint")
      ->check(CLI::IsMember({"link-disjoint", "node-disjoint", "srlg-disjoint",
                             "link_disjoint", "node_disjoint", "srlg_disjoint"}));
  paths->add_option("--srlg-budget", budget, "Candidate-path budget for SRLG search");

  std::string scenario_path, report_path;
  auto* simulate = app.add_subcommand("simulate", "Replay a scenario and write its decision report");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--out", report_path, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (evaluate->parsed()) {
      const auto rows = evaluate_table(evaluate_args);
      emit(tnsc::format_evaluation(rows, table_format(evaluate_args.format)), evaluate_args.out);
    } else if (rank->parsed()) {
      const auto rows = tnsc::rank_rows(evaluate_table(rank_args));
      emit(tnsc::format_ranking(rows, table_format(rank_args.format)), rank_args.out);
    } else if (paths->parsed()) {
      const auto topology =
          tnsc::validate_topology(tnsc::topology_from_json(tnsc::read_json_file(paths_topology)));
      tnsc::PathOptions options;
      options.srlg_budget = budget;
      const auto found =
          tnsc::k_disjoint_paths(topology, src, dst, k, tnsc::parse_mode(paths_mode), options);
      for (const auto& path : found) {
        std::string line;
        for (const auto& node : path.nodes) line += (line.empty() ? "" : ",") + node;
        std::cout << line << "\n";
      }
    } else if (simulate->parsed()) {
      const auto scenario = tnsc::load_scenario(scenario_path);
      const auto report = tnsc::run_scenario(scenario);
      emit(tnsc::dump_json(tnsc::report_to_json(report)) + "\n", report_path);
    }
  } catch (const tnsc::Error& e) {
    std::cerr << "tnsc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tnsc: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
