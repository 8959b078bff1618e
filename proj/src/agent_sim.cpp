#include "blockgame/agent_sim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace blockgame {

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t round,
                                 std::uint64_t id) {
  SplitMix64 mixer(master_seed ^ (round * 0x9e3779b97f4a7c15ULL) ^
                   (id * 0xd1b54a32d192ed03ULL));
  return mixer.next();
}

void SimConfig::validate() const {
  if (n_validators < 4) {
    throw std::invalid_argument("sim config: need at least 4 validators");
  }
  if (initial_honest_fraction < 0.0 || initial_honest_fraction > 1.0) {
    throw std::invalid_argument("sim config: initial_honest_fraction out of [0,1]");
  }
  if (imitation_rate < 0.0 || imitation_rate > 1.0) {
    throw std::invalid_argument("sim config: imitation_rate out of [0,1]");
  }
  if (mutation_rate < 0.0 || mutation_rate > 1.0) {
    throw std::invalid_argument("sim config: mutation_rate out of [0,1]");
  }
  if (baseline_stake < 0.0) {
    throw std::invalid_argument("sim config: baseline_stake must be >= 0");
  }
  if (rounds < 1) {
    throw std::invalid_argument("sim config: rounds must be >= 1");
  }
  params.validate(scheme);
}

ValidatorSet init_validators(const SimConfig& config) {
  config.validate();
  const std::size_t n = config.n_validators;
  const auto honest_count = static_cast<std::size_t>(
      std::llround(config.initial_honest_fraction * static_cast<double>(n)));
  if (config.initial_honest_fraction > 0.0 &&
      config.initial_honest_fraction < 1.0 &&
      (honest_count == 0 || honest_count == n)) {
    std::cerr << "warning: requested minority rounds away at n="
              << n << ", fraction=" << config.initial_honest_fraction << "\n";
  }

  ValidatorSet validators(n);
  for (std::size_t i = 0; i < n; ++i) {
    validators[i].id = static_cast<std::uint32_t>(i);
    validators[i].strategy =
        i < honest_count ? Strategy::Honest : Strategy::Malicious;
    validators[i].stake = config.baseline_stake;
  }
  // Deterministic Fisher-Yates under the master seed.
  SplitMix64 rng(derive_stream_seed(config.seed, 0, UINT64_MAX));
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.next_below(i + 1);
    std::swap(validators[i].strategy, validators[j].strategy);
  }
  return validators;
}

RoundResult run_round(ValidatorSet& validators, RewardScheme scheme,
                      const EconomicParams& params, std::size_t round_index) {
  if (validators.empty()) {
    throw std::invalid_argument("run_round: empty validator set");
  }
  const std::size_t n = validators.size();
  RoundResult result;
  result.round_index = round_index;
  result.votes.resize(n);
  result.payoffs.assign(n, 0.0);

  std::size_t honest_active = 0;
  std::size_t malicious_active = 0;
  for (std::size_t i = 0; i < n; ++i) {
    result.votes[i] = validators[i].strategy;
    if (!validators[i].active()) continue;
    (validators[i].strategy == Strategy::Honest ? honest_active
                                                : malicious_active)++;
  }
  const double quorum_size = params.quorum_threshold * static_cast<double>(n);
  if (static_cast<double>(honest_active) >= quorum_size) {
    result.outcome = QuorumOutcome::HonestQuorum;
  } else if (static_cast<double>(malicious_active) >= quorum_size) {
    result.outcome = QuorumOutcome::MaliciousQuorum;
  } else {
    result.outcome = QuorumOutcome::NilBlock;
  }

  const Strategy quorum_side = result.outcome == QuorumOutcome::HonestQuorum
                                   ? Strategy::Honest
                                   : Strategy::Malicious;
  // Incentive scaled so a quorum member's share is exactly r + e.
  const double share = params.reward + params.expense;

  for (std::size_t i = 0; i < n; ++i) {
    ValidatorAccount& v = validators[i];
    if (!v.active()) {
      v.participated_last_round = false;
      continue;
    }
    double minted = 0.0;
    double slashed = 0.0;
    double expense = 0.0;
    const bool in_quorum = result.outcome != QuorumOutcome::NilBlock &&
                           v.strategy == quorum_side;
    if (result.outcome == QuorumOutcome::NilBlock) {
      expense = v.strategy == Strategy::Honest ? params.expense
                                               : params.saved_expense;
    } else {
      switch (scheme) {
        case RewardScheme::UniversalReward:
          // Everyone in the set is paid, workers and free riders alike.
          minted = share;
          expense = v.strategy == Strategy::Honest
                        ? params.expense
                        : params.expense - params.saved_expense;
          break;
        case RewardScheme::RewardForWork:
          if (in_quorum) {
            minted = share;
            expense = params.expense;
          } else {
            expense = v.strategy == Strategy::Honest ? params.expense
                                                     : params.saved_expense;
          }
          break;
        case RewardScheme::Penalty:
          if (in_quorum) {
            minted = share;
            expense = params.expense;
          } else {
            slashed = params.penalty;
          }
          break;
      }
      if (v.strategy == Strategy::Malicious &&
          result.outcome == QuorumOutcome::MaliciousQuorum) {
        minted += params.byzantine_benefit;
      }
    }
    const double payoff = minted - slashed - expense;
    result.payoffs[i] = payoff;
    result.minted += minted;
    result.slashed += slashed;
    result.expenses += expense;
    v.stake = std::max(0.0, v.stake + payoff);
    v.cumulative_payoff += payoff;
    v.participated_last_round = in_quorum;
  }
  return result;
}

void update_strategies(ValidatorSet& validators, const RoundResult& last_round,
                       const RewardMatrix& matrix, const SimConfig& config,
                       std::size_t round_index) {
  const std::size_t n = validators.size();
  if (n == 0) return;
  const double mu = config.imitation_rate;

  std::size_t honest_count = 0;
  for (const Strategy s : last_round.votes) {
    if (s == Strategy::Honest) ++honest_count;
  }
  const double xh = static_cast<double>(honest_count) / static_cast<double>(n);
  const PopulationState x = PopulationState::from_honest(xh);

  // Switch probabilities for the mixture-fitness revision rule. Folding the
  // peer-sampling factor x_other into the probability keeps the expected
  // one-round flow equal to the replicator increment without clipping.
  double switch_from_honest = 0.0;
  double switch_from_malicious = 0.0;
  if (config.revision_model == FitnessModel::PairwiseMatching) {
    const FitnessPair f =
        fitness(matrix, x, FitnessModel::PairwiseMatching, config.params);
    const double sigma = std::max(0.0, -std::min(f.honest, f.malicious)) +
                         config.shift.background_fitness;
    const double mean_shifted = x.honest() * (f.honest + sigma) +
                                x.malicious() * (f.malicious + sigma);
    if (mean_shifted > 0.0) {
      switch_from_honest = std::clamp(
          x.malicious() * (f.malicious - f.honest) / mean_shifted, 0.0, 1.0);
      switch_from_malicious = std::clamp(
          x.honest() * (f.honest - f.malicious) / mean_shifted, 0.0, 1.0);
    }
  }
  // Largest possible realized payoff gap for the scheme, nil rounds included.
  const double gap_max =
      matrix.max_entry() -
      std::min({matrix.min_entry(), -config.params.expense,
                -config.params.saved_expense});

  std::vector<Strategy> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng(derive_stream_seed(config.seed, round_index + 1, i));
    Strategy s = validators[i].strategy;
    if (mu > 0.0 && rng.next_double() < mu) {
      if (config.revision_model == FitnessModel::PairwiseMatching) {
        const double p = s == Strategy::Honest ? switch_from_honest
                                               : switch_from_malicious;
        if (p > 0.0 && rng.next_double() < p) {
          s = s == Strategy::Honest ? Strategy::Malicious : Strategy::Honest;
        }
      } else {
        // Literal pairwise imitation on realized payoffs.
        std::size_t peer = rng.next_below(n - 1);
        if (peer >= i) ++peer;
        const double gain = last_round.payoffs[peer] - last_round.payoffs[i];
        if (gain > 0.0 && gap_max > 0.0 &&
            rng.next_double() < gain / gap_max) {
          s = last_round.votes[peer];
        }
      }
    }
    if (config.mutation_rate > 0.0 &&
        rng.next_double() < config.mutation_rate) {
      s = s == Strategy::Honest ? Strategy::Malicious : Strategy::Honest;
    }
    next[i] = s;
  }
  for (std::size_t i = 0; i < n; ++i) {
    validators[i].strategy = next[i];
  }
}

SimTrajectory run_simulation(const SimConfig& config) {
  config.validate();
  ValidatorSet validators = init_validators(config);
  const RewardMatrix matrix = build_reward_matrix(config.scheme, config.params);
  const auto n = static_cast<double>(validators.size());

  SimTrajectory traj;
  auto record = [&] {
    std::size_t honest = 0;
    double honest_stake = 0.0;
    double malicious_stake = 0.0;
    for (const ValidatorAccount& v : validators) {
      if (v.strategy == Strategy::Honest) {
        ++honest;
        honest_stake += v.stake;
      } else {
        malicious_stake += v.stake;
      }
    }
    const double xh = static_cast<double>(honest) / n;
    traj.honest_fraction.push_back(xh);
    traj.fitness_trace.push_back(fitness(matrix,
                                         PopulationState::from_honest(xh),
                                         config.revision_model, config.params));
    traj.honest_stake.push_back(honest_stake);
    traj.malicious_stake.push_back(malicious_stake);
    return xh;
  };
  record();

  traj.verdict = Verdict::MaxRoundsReached;
  traj.rounds_to_converge = config.rounds;
  for (std::size_t round = 0; round < config.rounds; ++round) {
    const RoundResult rr =
        run_round(validators, config.scheme, config.params, round);
    traj.outcomes.push_back(rr.outcome);
    if (rr.outcome == QuorumOutcome::NilBlock) ++traj.nil_rounds;
    update_strategies(validators, rr, matrix, config, round);
    const double xh = record();
    if (xh >= 1.0 - config.convergence_tol) {
      traj.verdict = Verdict::ConvergedHonest;
      traj.rounds_to_converge = round + 1;
      break;
    }
    if (1.0 - xh >= 1.0 - config.convergence_tol) {
      traj.verdict = Verdict::ConvergedMalicious;
      traj.rounds_to_converge = round + 1;
      break;
    }
  }
  return traj;
}

ForkReport fork_scenario(std::size_t n_validators, double rational_fraction,
                         bool penalty_enabled, const EconomicParams& params) {
  if (n_validators < 4) {
    throw std::invalid_argument("fork_scenario: need at least 4 validators");
  }
  if (rational_fraction < 0.0 || rational_fraction > 1.0) {
    throw std::invalid_argument("fork_scenario: rational_fraction out of [0,1]");
  }
  const auto double_signers = static_cast<std::size_t>(std::llround(
      rational_fraction * static_cast<double>(n_validators)));
  const double quorum_size =
      params.quorum_threshold * static_cast<double>(n_validators);

  // Fork A carries every signature; fork B only the approve-everything ones.
  // With slashing active the conflicting signatures are discarded and the
  // signers lose stake, so the second fork never finalizes.
  ForkReport report;
  if (penalty_enabled) {
    report.both_forks_finalized = false;
    report.slashed_count = double_signers;
  } else {
    report.both_forks_finalized =
        static_cast<double>(double_signers) >= quorum_size;
    report.slashed_count = 0;
  }
  return report;
}

}  // namespace blockgame
