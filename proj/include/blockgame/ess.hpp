#ifndef BLOCKGAME_ESS_HPP
#define BLOCKGAME_ESS_HPP

#include <array>
#include <span>
#include <string>

#include "blockgame/dynamics.hpp"
#include "blockgame/game_core.hpp"

namespace blockgame {

// Largest tolerated mutant fraction; beyond this the incumbent quorum is no
// longer guaranteed under the deterministic model.
inline constexpr double kMaxMutantFraction = 1.0 / 3.0;

inline constexpr std::array<double, 5> kDefaultEpsilonGrid = {0.01, 0.05, 0.10,
                                                             0.20, 0.33};

struct InvasionSetup {
  Strategy incumbent = Strategy::Honest;
  double mutant_fraction = 0.1;  // epsilon in (0, 1/3]
  RewardScheme scheme = RewardScheme::Penalty;
  EconomicParams params{};
  FitnessModel model = FitnessModel::QuorumDeterministic;
};

struct InvasionFitness {
  double incumbent;
  double mutant;
};

enum class ESSClass { StrictESS, MixedOrNeutral, NotESS };

const char* to_string(ESSClass c);

struct ESSVerdict {
  ESSClass classification;
  double incumbent_fitness;  // at the smallest tested epsilon
  double mutant_fitness;
  std::string note;
};

// Fitness of incumbent and mutant at x = (1 - eps, eps) (incumbent first).
InvasionFitness invasion_fitness(const InvasionSetup& setup);

ESSVerdict classify_ess(Strategy incumbent, RewardScheme scheme,
                        const EconomicParams& params, FitnessModel model,
                        std::span<const double> epsilon_grid = kDefaultEpsilonGrid);

enum class GenesisOutcome { HonestDominates, MaliciousDominates, Boundary };

const char* to_string(GenesisOutcome o);

// Which strategy the population converges to from the genesis state x0,
// determined by the pairwise-matching basin structure.
GenesisOutcome genesis_outcome(const PopulationState& x0, RewardScheme scheme,
                               const EconomicParams& params);

}  // namespace blockgame

#endif  // BLOCKGAME_ESS_HPP
