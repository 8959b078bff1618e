#include "blockgame/runner.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace blockgame {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::json params_json(const RunConfig& c) {
  return {
      {"scheme", to_string(c.scheme)},
      {"model", to_string(c.model)},
      {"x0", c.x0_honest},
      {"rounds", c.rounds},
      {"seed", c.seed},
      {"background_fitness", c.background_fitness},
      {"convergence_tol", c.convergence_tol},
      {"expense", c.econ.expense},
      {"saved_expense", c.econ.saved_expense},
      {"reward", c.econ.reward},
      {"benefit", c.econ.byzantine_benefit},
      {"penalty", c.econ.penalty},
      {"quorum", c.econ.quorum_threshold},
      {"validators", c.n_validators},
      {"imitation_rate", c.imitation_rate},
      {"mutation_rate", c.mutation_rate},
      {"baseline_stake", c.baseline_stake},
  };
}

constexpr const char* kCsvHeader = "round,x_h,x_m,F_h,F_m,outcome\n";

void append_row(std::ostringstream& out, std::size_t round, double xh,
                double xm, const FitnessPair& f, QuorumOutcome outcome) {
  out << round << ',' << fmt(xh) << ',' << fmt(xm) << ',' << fmt(f.honest)
      << ',' << fmt(f.malicious) << ',' << to_string(outcome) << '\n';
}

}  // namespace

RunArtifacts run_replicate(const RunConfig& config) {
  const RewardMatrix matrix = build_reward_matrix(config.scheme, config.econ);
  const Trajectory traj = run_trajectory(
      matrix, PopulationState::from_honest(config.x0_honest), config.model,
      config.econ, config.rounds, config.convergence_tol,
      {config.background_fitness});

  std::ostringstream csv;
  csv << kCsvHeader;
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    const PopulationState& x = traj.states[t];
    append_row(csv, t, x.honest(), x.malicious(), traj.fitness_trace[t],
               quorum_outcome(x, config.econ.quorum_threshold));
  }

  nlohmann::json summary = {
      {"mode", "replicate"},
      {"verdict", to_string(traj.verdict)},
      {"rounds_to_converge", traj.rounds_to_converge},
      {"final_honest_fraction", traj.states.back().honest()},
      {"parameters", params_json(config)},
      {"config", serialize_config(config)},
  };
  if (const auto x_star = interior_fixed_point(matrix)) {
    summary["interior_fixed_point"] = *x_star;
  } else {
    summary["interior_fixed_point"] = nullptr;
  }
  return {csv.str(), summary.dump(2) + "\n"};
}

RunArtifacts run_simulate(const RunConfig& config) {
  const SimTrajectory traj = run_simulation(config.to_sim_config());

  std::ostringstream csv;
  csv << kCsvHeader;
  for (std::size_t t = 0; t < traj.honest_fraction.size(); ++t) {
    const double xh = traj.honest_fraction[t];
    const QuorumOutcome outcome =
        t < traj.outcomes.size()
            ? traj.outcomes[t]
            : quorum_outcome(PopulationState::from_honest(xh),
                             config.econ.quorum_threshold);
    append_row(csv, t, xh, 1.0 - xh, traj.fitness_trace[t], outcome);
  }

  const nlohmann::json summary = {
      {"mode", "simulate"},
      {"verdict", to_string(traj.verdict)},
      {"rounds_to_converge", traj.rounds_to_converge},
      {"final_honest_fraction", traj.honest_fraction.back()},
      {"final_honest_stake", traj.honest_stake.back()},
      {"final_malicious_stake", traj.malicious_stake.back()},
      {"nil_rounds", traj.nil_rounds},
      {"parameters", params_json(config)},
      {"config", serialize_config(config)},
  };
  return {csv.str(), summary.dump(2) + "\n"};
}

std::string ess_table_json(const EconomicParams& params) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RewardScheme scheme :
       {RewardScheme::UniversalReward, RewardScheme::RewardForWork,
        RewardScheme::Penalty}) {
    for (const Strategy incumbent : {Strategy::Honest, Strategy::Malicious}) {
      const ESSVerdict verdict = classify_ess(
          incumbent, scheme, params, FitnessModel::QuorumDeterministic);
      rows.push_back({
          {"scheme", to_string(scheme)},
          {"incumbent", to_string(incumbent)},
          {"classification", to_string(verdict.classification)},
          {"incumbent_fitness", verdict.incumbent_fitness},
          {"mutant_fitness", verdict.mutant_fitness},
          {"note", verdict.note},
      });
    }
  }
  const nlohmann::json summary = {{"mode", "ess"}, {"table", rows}};
  return summary.dump(2) + "\n";
}

SweepResult run_sweep(RunConfig base, SweepParam param, double from, double to,
                      int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!(to > from)) throw ConfigError("sweep needs to > from");

  SweepResult result;
  std::ostringstream csv;
  csv << "value,verdict,rounds_to_converge\n";
  for (int k = 0; k < steps; ++k) {
    const double value =
        from + (to - from) * static_cast<double>(k) / (steps - 1);
    RunConfig config = base;
    if (param == SweepParam::InitialHonest) {
      config.x0_honest = value;
    } else {
      config.econ.penalty = value;
    }
    const RewardMatrix matrix = build_reward_matrix(config.scheme, config.econ);
    const Trajectory traj = run_trajectory(
        matrix, PopulationState::from_honest(config.x0_honest), config.model,
        config.econ, config.rounds, config.convergence_tol,
        {config.background_fitness});
    result.points.push_back({value, traj.verdict, traj.rounds_to_converge});
    csv << fmt(value) << ',' << to_string(traj.verdict) << ','
        << traj.rounds_to_converge << '\n';
  }
  for (std::size_t k = 0; k + 1 < result.points.size(); ++k) {
    const Verdict a = result.points[k].verdict;
    const Verdict b = result.points[k + 1].verdict;
    if ((a == Verdict::ConvergedMalicious && b == Verdict::ConvergedHonest) ||
        (a == Verdict::ConvergedHonest && b == Verdict::ConvergedMalicious)) {
      result.boundary = {result.points[k].value, result.points[k + 1].value};
      break;
    }
  }
  result.csv = csv.str();

  nlohmann::json summary = {
      {"mode", "sweep"},
      {"parameter", param == SweepParam::InitialHonest ? "x0" : "penalty"},
      {"from", from},
      {"to", to},
      {"steps", steps},
      {"parameters", params_json(base)},
      {"config", serialize_config(base)},
  };
  if (result.boundary) {
    summary["boundary"] = {result.boundary->first, result.boundary->second};
  } else {
    summary["boundary"] = nullptr;
  }
  result.summary_json = summary.dump(2) + "\n";
  return result;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace blockgame
