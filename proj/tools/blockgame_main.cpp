#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "blockgame/presets.hpp"
#include "blockgame/runner.hpp"

namespace {

using namespace blockgame;

std::string default_out_dir() {
  const char* env = std::getenv("BLOCKGAME_OUT");
  return env ? env : ".";
}

struct CommonFlags {
  std::string scheme;
  std::string model;
  std::string config_path;
  std::string out_dir = default_out_dir();
  std::string format = "both";  // csv, json, both
};

void add_common(CLI::App* cmd, CommonFlags& flags, RunConfig& config) {
  cmd->add_option("--config", flags.config_path, "Configuration file");
  cmd->add_option("--scheme", flags.scheme,
                  "Reward scheme: universal, reward_for_work, penalty");
  cmd->add_option("--model", flags.model, "Fitness model: matching, quorum");
  cmd->add_option("--x0", config.x0_honest, "Initial honest fraction");
  cmd->add_option("--expense", config.econ.expense, "Operating expense e");
  cmd->add_option("--saved-expense", config.econ.saved_expense,
                  "Cost of malicious behaviour e'");
  cmd->add_option("--reward", config.econ.reward, "Effective reward r");
  cmd->add_option("--benefit", config.econ.byzantine_benefit,
                  "Byzantine benefit b");
  cmd->add_option("--penalty", config.econ.penalty, "Slashing penalty p");
  cmd->add_option("--quorum", config.econ.quorum_threshold,
                  "Quorum threshold q (>= 2/3)");
  cmd->add_option("--rounds", config.rounds, "Maximum block rounds");
  cmd->add_option("--seed", config.seed, "Random seed");
  cmd->add_option("--beta", config.background_fitness, "Background fitness");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--format", flags.format, "Output files: csv, json, both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

// --config is applied first; explicit flags override it.
void resolve(const CLI::App* cmd, const CommonFlags& flags, RunConfig& config) {
  if (!flags.config_path.empty()) {
    RunConfig from_file = parse_config_file(flags.config_path);
    // Re-apply any flags given on the command line on top of the file.
    const RunConfig cli_values = config;
    config = from_file;
    if (cmd->count("--x0")) config.x0_honest = cli_values.x0_honest;
    if (cmd->count("--expense")) config.econ.expense = cli_values.econ.expense;
    if (cmd->count("--saved-expense")) {
      config.econ.saved_expense = cli_values.econ.saved_expense;
    }
    if (cmd->count("--reward")) config.econ.reward = cli_values.econ.reward;
    if (cmd->count("--benefit")) {
      config.econ.byzantine_benefit = cli_values.econ.byzantine_benefit;
    }
    if (cmd->count("--penalty")) config.econ.penalty = cli_values.econ.penalty;
    if (cmd->count("--quorum")) {
      config.econ.quorum_threshold = cli_values.econ.quorum_threshold;
    }
    if (cmd->count("--rounds")) config.rounds = cli_values.rounds;
    if (cmd->count("--seed")) config.seed = cli_values.seed;
    if (cmd->count("--beta")) {
      config.background_fitness = cli_values.background_fitness;
    }
  }
  if (!flags.scheme.empty()) config.scheme = parse_scheme(flags.scheme);
  if (!flags.model.empty()) config.model = parse_model(flags.model);
}

void emit(const CommonFlags& flags, const RunArtifacts& artifacts) {
  if (flags.format != "json") {
    write_file(flags.out_dir + "/trajectory.csv", artifacts.trajectory_csv);
  }
  if (flags.format != "csv") {
    write_file(flags.out_dir + "/summary.json", artifacts.summary_json);
  }
  std::cout << artifacts.summary_json;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block validation game: reward matrices, replicator dynamics, "
               "ESS analysis and agent-based simulation"};
  app.require_subcommand(1);

  CommonFlags flags;
  RunConfig config;

  auto* replicate =
      app.add_subcommand("replicate", "Mean-field replicator trajectory");
  add_common(replicate, flags, config);

  auto* simulate =
      app.add_subcommand("simulate", "Agent-based block-round simulation");
  add_common(simulate, flags, config);
  simulate->add_option("--n", config.n_validators, "Number of validators");
  simulate->add_option("--mu", config.imitation_rate, "Imitation rate");
  simulate->add_option("--mutation", config.mutation_rate, "Mutation rate");
  simulate->add_option("--stake", config.baseline_stake, "Baseline stake");

  std::string preset_name;
  bool scenario_agents = false;
  auto* scenario = app.add_subcommand("scenario", "Run a named preset");
  scenario->add_option("name", preset_name, "Preset name (fig2a..fig2f, fig3)")
      ->required();
  scenario->add_flag("--agents", scenario_agents,
                     "Run the agent-based simulation instead of mean-field");
  add_common(scenario, flags, config);
  scenario->add_option("--n", config.n_validators, "Number of validators");
  scenario->add_option("--mu", config.imitation_rate, "Imitation rate");
  scenario->add_option("--mutation", config.mutation_rate, "Mutation rate");

  auto* ess = app.add_subcommand(
      "ess", "ESS verdicts for every scheme and incumbent");
  add_common(ess, flags, config);

  std::string sweep_param = "x0";
  double sweep_from = 0.0;
  double sweep_to = 1.0;
  int sweep_steps = 11;
  auto* sweep = app.add_subcommand(
      "sweep", "Grid sweep over x0 or penalty, reporting basin boundaries");
  add_common(sweep, flags, config);
  sweep->add_option("--param", sweep_param, "Swept parameter: x0 or penalty")
      ->check(CLI::IsMember({"x0", "penalty"}));
  sweep->add_option("--from", sweep_from, "Grid start")->required();
  sweep->add_option("--to", sweep_to, "Grid end")->required();
  sweep->add_option("--steps", sweep_steps, "Grid size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (replicate->parsed()) {
      resolve(replicate, flags, config);
      emit(flags, run_replicate(config));
    } else if (simulate->parsed()) {
      resolve(simulate, flags, config);
      emit(flags, run_simulate(config));
    } else if (scenario->parsed()) {
      const RunConfig preset = find_preset(preset_name).config;
      // Preset supplies everything; explicit flags still override.
      RunConfig merged = preset;
      if (scenario->count("--x0")) merged.x0_honest = config.x0_honest;
      if (scenario->count("--expense")) merged.econ.expense = config.econ.expense;
      if (scenario->count("--saved-expense")) {
        merged.econ.saved_expense = config.econ.saved_expense;
      }
      if (scenario->count("--reward")) merged.econ.reward = config.econ.reward;
      if (scenario->count("--benefit")) {
        merged.econ.byzantine_benefit = config.econ.byzantine_benefit;
      }
      if (scenario->count("--penalty")) merged.econ.penalty = config.econ.penalty;
      if (scenario->count("--quorum")) {
        merged.econ.quorum_threshold = config.econ.quorum_threshold;
      }
      if (scenario->count("--rounds")) merged.rounds = config.rounds;
      if (scenario->count("--seed")) merged.seed = config.seed;
      if (scenario->count("--beta")) {
        merged.background_fitness = config.background_fitness;
      }
      if (scenario->count("--n")) merged.n_validators = config.n_validators;
      if (scenario->count("--mu")) merged.imitation_rate = config.imitation_rate;
      if (scenario->count("--mutation")) {
        merged.mutation_rate = config.mutation_rate;
      }
      if (!flags.model.empty()) merged.model = parse_model(flags.model);
      emit(flags, scenario_agents ? run_simulate(merged)
                                  : run_replicate(merged));
    } else if (ess->parsed()) {
      resolve(ess, flags, config);
      const std::string table = ess_table_json(config.econ);
      if (flags.format != "csv") {
        write_file(flags.out_dir + "/summary.json", table);
      }
      std::cout << table;
    } else if (sweep->parsed()) {
      resolve(sweep, flags, config);
      const SweepParam param = sweep_param == "x0" ? SweepParam::InitialHonest
                                                   : SweepParam::Penalty;
      const SweepResult result =
          run_sweep(config, param, sweep_from, sweep_to, sweep_steps);
      if (flags.format != "json") {
        write_file(flags.out_dir + "/sweep.csv", result.csv);
      }
      if (flags.format != "csv") {
        write_file(flags.out_dir + "/summary.json", result.summary_json);
      }
      std::cout << result.summary_json;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
