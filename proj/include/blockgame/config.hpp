#ifndef BLOCKGAME_CONFIG_HPP
#define BLOCKGAME_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "blockgame/agent_sim.hpp"
#include "blockgame/dynamics.hpp"
#include "blockgame/game_core.hpp"

namespace blockgame {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One fully resolved run, shared by the mean-field and agent-based modes.
// Serializes to a sectioned key/value text format and back.
struct RunConfig {
  RewardScheme scheme = RewardScheme::Penalty;
  FitnessModel model = FitnessModel::PairwiseMatching;
  double x0_honest = 0.667;
  std::size_t rounds = kDefaultMaxRounds;
  std::uint64_t seed = 1;
  double background_fitness = 1.0;
  double convergence_tol = kDefaultConvergenceTol;
  EconomicParams econ{};
  // Agent-simulation section.
  std::size_t n_validators = 1000;
  double imitation_rate = 1.0;
  double mutation_rate = 0.0;
  double baseline_stake = 1000.0;

  SimConfig to_sim_config() const;
  bool operator==(const RunConfig&) const = default;
};

RewardScheme parse_scheme(const std::string& name);
FitnessModel parse_model(const std::string& name);

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace blockgame

#endif  // BLOCKGAME_CONFIG_HPP
