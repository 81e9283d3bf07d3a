// Command-line front end: kernel analysis, one-off simulations, and the full
// experiment harness. Exit codes: 0 success, 1 config error, 2 precondition
// refusal.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "irg/irg.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "path to JSON config")->required();
  cmd->add_option("--seed", opts.seed, "override master seed");
  cmd->add_option("--out", opts.out_dir, "override output directory");
  cmd->add_option("--threads", opts.threads, "worker thread count");
}

void print_analysis(const irg::Kernel& kernel, const irg::ExperimentConfig& cfg) {
  const irg::RKappaEstimate rk = irg::r_kappa(kernel, cfg.iter, cfg.bis_tol);
  const nlohmann::ordered_json j = irg::detail::analysis_json(kernel, cfg, rk);
  std::cout << j.dump(2) << '\n';
}

irg::ExperimentConfig config_from(const nlohmann::ordered_json& doc, const CommonOpts& opts,
                                  bool needs_mode) {
  nlohmann::ordered_json d = doc;
  if (needs_mode && !d.contains("mode")) d["mode"] = "branching-validation";
  if (!d.contains("mode")) d["mode"] = "branching-validation";  // analysis-only paths
  irg::ExperimentConfig cfg = irg::ExperimentConfig::from_json(d);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  if (opts.threads) cfg.threads = *opts.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for inhomogeneous random-graph kernels"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, check_opts, graph_opts, branch_opts, exp_opts;
  auto* analyze = app.add_subcommand(
      "analyze", "norms, radius bracket, survival, conditions, negative-solution probe");
  add_common(analyze, analyze_opts);

  auto* check = app.add_subcommand("check", "condition report only");
  add_common(check, check_opts);

  auto* sim_graph = app.add_subcommand("simulate-graph", "sample one graph, report components");
  add_common(sim_graph, graph_opts);
  std::uint64_t graph_n = 1000;
  std::string dump_path;
  sim_graph->add_option("--n", graph_n, "vertex count");
  sim_graph->add_option("--dump", dump_path, "write edge list to this path");

  auto* sim_branch =
      app.add_subcommand("simulate-branching", "sample total-progeny batch, summarize");
  add_common(sim_branch, branch_opts);
  std::string batch_csv;
  sim_branch->add_option("--csv", batch_csv, "write batch CSV to this path");

  auto* experiment = app.add_subcommand("experiment", "run the configured experiment mode");
  add_common(experiment, exp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      const auto doc = irg::load_json_file(analyze_opts.config_path)
                           .get<nlohmann::ordered_json>();
      const irg::Kernel kernel = irg::parse_kernel_doc(doc);
      print_analysis(kernel, config_from(doc, analyze_opts, false));
    } else if (check->parsed()) {
      const auto doc =
          irg::load_json_file(check_opts.config_path).get<nlohmann::ordered_json>();
      const irg::Kernel kernel = irg::parse_kernel_doc(doc);
      std::cout << irg::detail::conditions_json(irg::check_conditions(kernel)).dump(2) << '\n';
    } else if (sim_graph->parsed()) {
      const auto doc =
          irg::load_json_file(graph_opts.config_path).get<nlohmann::ordered_json>();
      const irg::Kernel kernel = irg::parse_kernel_doc(doc);
      const irg::ExperimentConfig cfg = config_from(doc, graph_opts, false);
      irg::Rng assign_rng = irg::make_stream(cfg.master_seed, 0xA551);
      const irg::TypeAssignment assignment =
          irg::assign_types(kernel.space(), graph_n, cfg.assignment, assign_rng);
      const irg::GraphSample g = irg::generate_graph(assignment, kernel, cfg.master_seed);
      const irg::ComponentStats stats = irg::largest_component(g);
      nlohmann::ordered_json out{{"n", graph_n},
                                 {"edges", g.edges.size()},
                                 {"c1", stats.c1},
                                 {"c2", stats.c2},
                                 {"components", stats.histogram.size()}};
      std::cout << out.dump(2) << '\n';
      if (!dump_path.empty()) {
        std::ofstream os(dump_path);
        if (!os) throw irg::ConfigError("cannot write " + dump_path);
        irg::write_edge_list(g, os);
      }
    } else if (sim_branch->parsed()) {
      const auto doc =
          irg::load_json_file(branch_opts.config_path).get<nlohmann::ordered_json>();
      const irg::Kernel kernel = irg::parse_kernel_doc(doc);
      const irg::ExperimentConfig cfg = config_from(doc, branch_opts, false);
      const int root = cfg.branching.root.value_or(kernel.space().label(0));
      const irg::SampleBatch batch = irg::sample_batch(
          kernel, root, cfg.branching.samples, cfg.branching.cap, cfg.master_seed);
      double mean = 0.0;
      for (const auto& o : batch.outcomes) mean += static_cast<double>(o.size);
      mean /= static_cast<double>(batch.outcomes.size());
      nlohmann::ordered_json out{{"root", root},
                                 {"samples", batch.outcomes.size()},
                                 {"cap", batch.cap},
                                 {"mean_size", mean},
                                 {"censored_count", batch.censored_count()}};
      std::cout << out.dump(2) << '\n';
      if (!batch_csv.empty()) {
        std::ofstream os(batch_csv);
        if (!os) throw irg::ConfigError("cannot write " + batch_csv);
        irg::write_batch_csv(batch, os);
      }
    } else if (experiment->parsed()) {
      const auto doc =
          irg::load_json_file(exp_opts.config_path).get<nlohmann::ordered_json>();
      const irg::Kernel kernel = irg::parse_kernel_doc(doc);
      const irg::ExperimentConfig cfg = config_from(doc, exp_opts, true);
      const irg::ExperimentReport rep = irg::run_experiment(cfg, kernel);
      irg::emit_report(rep, cfg.out_dir);
      std::cout << "report written to " << cfg.out_dir << '\n';
    }
  } catch (const irg::PreconditionError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const irg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
