#ifndef BLOCKGAME_DYNAMICS_HPP
#define BLOCKGAME_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "blockgame/game_core.hpp"

namespace blockgame {

// How the per-round fitness of each strategy is evaluated.
//  - PairwiseMatching: expected payoff against the population mixture.
//  - QuorumDeterministic: the matrix column selected by the realized quorum;
//    a nil round falls back to the nil-block payoffs.
enum class FitnessModel { PairwiseMatching, QuorumDeterministic };

const char* to_string(FitnessModel m);

struct FitnessPair {
  double honest;
  double malicious;
};

// Affine shift applied before the proportional update so that negative
// payoffs keep the update well defined: sigma = max(0, -min F) + beta.
struct ShiftPolicy {
  double background_fitness = 1.0;  // beta > 0
};

enum class Verdict {
  ConvergedHonest,
  ConvergedMalicious,
  InteriorRest,
  MaxRoundsReached
};

const char* to_string(Verdict v);

inline constexpr double kDefaultConvergenceTol = 1e-6;
inline constexpr std::size_t kDefaultMaxRounds = 500;

struct Trajectory {
  std::vector<PopulationState> states;   // states[0] == x0
  std::vector<FitnessPair> fitness_trace;  // one entry per state
  Verdict verdict = Verdict::MaxRoundsReached;
  std::size_t rounds_to_converge = 0;
};

FitnessPair fitness(const RewardMatrix& matrix, const PopulationState& x,
                    FitnessModel model, const EconomicParams& params);

// One generation of discrete payoff-proportional replicator dynamics:
//   x'_h = x_h (F_h + sigma) / (x_h (F_h + sigma) + x_m (F_m + sigma)).
PopulationState replicator_step(const PopulationState& x, FitnessPair f,
                                ShiftPolicy shift = {});

Trajectory run_trajectory(const RewardMatrix& matrix, PopulationState x0,
                          FitnessModel model, const EconomicParams& params,
                          std::size_t max_rounds = kDefaultMaxRounds,
                          double convergence_tol = kDefaultConvergenceTol,
                          ShiftPolicy shift = {});

// Interior rest point of the pairwise-matching dynamics, if one exists in
// (0, 1): solves F_h(x*) = F_m(x*).
std::optional<double> interior_fixed_point(const RewardMatrix& matrix);

}  // namespace blockgame

#endif  // BLOCKGAME_DYNAMICS_HPP
