#ifndef BLOCKGAME_AGENT_SIM_HPP
#define BLOCKGAME_AGENT_SIM_HPP

#include <cstdint>
#include <vector>

#include "blockgame/dynamics.hpp"
#include "blockgame/game_core.hpp"

namespace blockgame {

// SplitMix64 (Steele, Lea, Flood 2014). Used both directly and to derive
// independent per-validator streams from the master seed, so results do not
// depend on iteration order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Stream seed for validator `id` at round `round`.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t round,
                                 std::uint64_t id);

struct ValidatorAccount {
  std::uint32_t id = 0;
  Strategy strategy = Strategy::Honest;
  double stake = 0.0;
  bool participated_last_round = false;
  double cumulative_payoff = 0.0;

  // Zero-stake validators stay in the set but never join a quorum.
  bool active() const { return stake > 0.0; }
};

using ValidatorSet = std::vector<ValidatorAccount>;

struct SimConfig {
  std::size_t n_validators = 1000;
  double initial_honest_fraction = 0.9;
  RewardScheme scheme = RewardScheme::Penalty;
  EconomicParams params{};
  double baseline_stake = 1000.0;
  double imitation_rate = 1.0;   // mu
  double mutation_rate = 0.0;
  std::size_t rounds = kDefaultMaxRounds;
  std::uint64_t seed = 1;
  // How revising validators estimate strategy performance; PairwiseMatching
  // gives the mean-field replicator limit.
  FitnessModel revision_model = FitnessModel::PairwiseMatching;
  ShiftPolicy shift{};
  double convergence_tol = kDefaultConvergenceTol;

  void validate() const;  // throws std::invalid_argument
};

struct RoundResult {
  std::size_t round_index = 0;
  std::vector<Strategy> votes;
  QuorumOutcome outcome = QuorumOutcome::NilBlock;
  std::vector<double> payoffs;
  double minted = 0.0;    // incentives paid out plus extracted benefits
  double slashed = 0.0;   // stake burned by penalties
  double expenses = 0.0;  // operating costs incurred
};

ValidatorSet init_validators(const SimConfig& config);

// One block round: every active validator votes its strategy; payoffs and
// stakes are settled per the reward scheme.
RoundResult run_round(ValidatorSet& validators, RewardScheme scheme,
                      const EconomicParams& params, std::size_t round_index);

// Proportional-imitation strategy revision followed by mutation.
void update_strategies(ValidatorSet& validators, const RoundResult& last_round,
                       const RewardMatrix& matrix, const SimConfig& config,
                       std::size_t round_index);

struct SimTrajectory {
  std::vector<double> honest_fraction;  // entry 0 is the initial state
  std::vector<FitnessPair> fitness_trace;
  std::vector<QuorumOutcome> outcomes;
  std::vector<double> honest_stake;
  std::vector<double> malicious_stake;
  std::size_t nil_rounds = 0;
  Verdict verdict = Verdict::MaxRoundsReached;
  std::size_t rounds_to_converge = 0;
};

SimTrajectory run_simulation(const SimConfig& config);

struct ForkReport {
  bool both_forks_finalized = false;
  std::size_t slashed_count = 0;
};

// Nothing-at-stake scenario: a malicious proposer emits two conflicting
// children of the same parent; approve-everything validators sign both.
ForkReport fork_scenario(std::size_t n_validators, double rational_fraction,
                         bool penalty_enabled,
                         const EconomicParams& params = {});

}  // namespace blockgame

#endif  // BLOCKGAME_AGENT_SIM_HPP
