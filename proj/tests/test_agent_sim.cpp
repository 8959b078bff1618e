#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "blockgame/agent_sim.hpp"

using namespace blockgame;
using doctest::Approx;

namespace {

SimConfig penalty_config(std::size_t n, double honest_fraction) {
  SimConfig config;
  config.n_validators = n;
  config.initial_honest_fraction = honest_fraction;
  config.scheme = RewardScheme::Penalty;
  return config;
}

std::size_t honest_count(const ValidatorSet& validators) {
  return std::ranges::count_if(validators, [](const ValidatorAccount& v) {
    return v.strategy == Strategy::Honest;
  });
}

void check_conservation(const RoundResult& rr) {
  double total = 0.0;
  for (const double p : rr.payoffs) total += p;
  CHECK(total == rr.minted - rr.slashed - rr.expenses);
}

}  // namespace

TEST_CASE("init_validators splits the population and funds the stakes") {
  const SimConfig config = penalty_config(100, 0.9);
  const ValidatorSet validators = init_validators(config);
  CHECK(validators.size() == 100);
  CHECK(honest_count(validators) == 90);
  for (const ValidatorAccount& v : validators) {
    CHECK(v.stake == 1000.0);
    CHECK(v.cumulative_payoff == 0.0);
  }
  // Deterministic under the seed.
  const ValidatorSet again = init_validators(config);
  for (std::size_t i = 0; i < validators.size(); ++i) {
    CHECK(validators[i].strategy == again[i].strategy);
  }
}

TEST_CASE("init_validators edge cases") {
  CHECK_THROWS_AS(init_validators(penalty_config(3, 0.5)),
                  std::invalid_argument);
  const ValidatorSet all_honest = init_validators(penalty_config(100, 1.0));
  CHECK(honest_count(all_honest) == 100);
}

TEST_CASE("run_round settles quorum payoffs per scheme") {
  SUBCASE("penalty, 70/30 of 100") {
    ValidatorSet validators = init_validators(penalty_config(100, 0.7));
    const RoundResult rr =
        run_round(validators, RewardScheme::Penalty, EconomicParams{}, 0);
    CHECK(rr.outcome == QuorumOutcome::HonestQuorum);
    for (std::size_t i = 0; i < validators.size(); ++i) {
      if (rr.votes[i] == Strategy::Honest) {
        CHECK(rr.payoffs[i] == 10.0);  // i/N' - e with i = (r+e) N'
      } else {
        CHECK(rr.payoffs[i] == -100.0);
      }
    }
    check_conservation(rr);
  }
  SUBCASE("50/50 of 100 produces a nil block") {
    ValidatorSet validators = init_validators(penalty_config(100, 0.5));
    EconomicParams params;
    params.saved_expense = 0.5;
    const RoundResult rr =
        run_round(validators, RewardScheme::Penalty, params, 0);
    CHECK(rr.outcome == QuorumOutcome::NilBlock);
    for (std::size_t i = 0; i < validators.size(); ++i) {
      CHECK(rr.payoffs[i] ==
            (rr.votes[i] == Strategy::Honest ? -1.0 : -0.5));
    }
    CHECK(rr.minted == 0.0);
    CHECK(rr.slashed == 0.0);
    check_conservation(rr);
  }
  SUBCASE("homogeneous reward-for-work quorum pays r to everyone") {
    SimConfig config = penalty_config(100, 1.0);
    config.scheme = RewardScheme::RewardForWork;
    ValidatorSet validators = init_validators(config);
    const RoundResult rr =
        run_round(validators, RewardScheme::RewardForWork, config.params, 0);
    CHECK(rr.outcome == QuorumOutcome::HonestQuorum);
    for (const double p : rr.payoffs) CHECK(p == 10.0);
    check_conservation(rr);
  }
  SUBCASE("malicious quorum pays the byzantine benefit") {
    ValidatorSet validators = init_validators(penalty_config(100, 0.2));
    const RoundResult rr =
        run_round(validators, RewardScheme::Penalty, EconomicParams{}, 0);
    CHECK(rr.outcome == QuorumOutcome::MaliciousQuorum);
    for (std::size_t i = 0; i < validators.size(); ++i) {
      CHECK(rr.payoffs[i] ==
            (rr.votes[i] == Strategy::Malicious ? 110.0 : -100.0));
    }
    check_conservation(rr);
  }
}

TEST_CASE("stakes never go negative and zero-stake validators go inactive") {
  SimConfig config = penalty_config(100, 0.2);
  config.baseline_stake = 150.0;  // two slashes would overdraw
  ValidatorSet validators = init_validators(config);
  for (std::size_t round = 0; round < 5; ++round) {
    run_round(validators, RewardScheme::Penalty, config.params, round);
    for (const ValidatorAccount& v : validators) CHECK(v.stake >= 0.0);
  }
  const auto broke = std::ranges::count_if(
      validators, [](const ValidatorAccount& v) { return !v.active(); });
  CHECK(broke > 0);
}

TEST_CASE("update_strategies honours the imitation and mutation rates") {
  SUBCASE("mu = 0 freezes strategies") {
    SimConfig config = penalty_config(50, 0.6);
    config.imitation_rate = 0.0;
    ValidatorSet validators = init_validators(config);
    const auto before = validators;
    const RewardMatrix matrix =
        build_reward_matrix(config.scheme, config.params);
    const RoundResult rr =
        run_round(validators, config.scheme, config.params, 0);
    update_strategies(validators, rr, matrix, config, 0);
    for (std::size_t i = 0; i < validators.size(); ++i) {
      CHECK(validators[i].strategy == before[i].strategy);
    }
  }
  SUBCASE("homogeneous population without mutation is unchanged") {
    SimConfig config = penalty_config(50, 1.0);
    ValidatorSet validators = init_validators(config);
    const RewardMatrix matrix =
        build_reward_matrix(config.scheme, config.params);
    for (std::size_t round = 0; round < 10; ++round) {
      const RoundResult rr =
          run_round(validators, config.scheme, config.params, round);
      update_strategies(validators, rr, matrix, config, round);
    }
    CHECK(honest_count(validators) == 50);
  }
  SUBCASE("mutation flips strategies even in a homogeneous population") {
    SimConfig config = penalty_config(200, 1.0);
    config.mutation_rate = 0.2;
    ValidatorSet validators = init_validators(config);
    const RewardMatrix matrix =
        build_reward_matrix(config.scheme, config.params);
    const RoundResult rr =
        run_round(validators, config.scheme, config.params, 0);
    update_strategies(validators, rr, matrix, config, 0);
    CHECK(honest_count(validators) < 200);
  }
}

TEST_CASE("penalty 67/33 with full imitation converges honest") {
  SimConfig config = penalty_config(300, 0.67);
  config.rounds = 200;
  const SimTrajectory traj = run_simulation(config);
  CHECK(traj.verdict == Verdict::ConvergedHonest);
}

TEST_CASE("universal 90/10 collapses to malicious") {
  SimConfig config = penalty_config(1000, 0.9);
  config.scheme = RewardScheme::UniversalReward;
  config.rounds = 300;
  const SimTrajectory traj = run_simulation(config);
  CHECK(traj.verdict == Verdict::ConvergedMalicious);
}

TEST_CASE("higher penalties do not slow convergence") {
  std::size_t previous = SIZE_MAX;
  for (const double p : {100.0, 500.0, 1000.0}) {
    SimConfig config = penalty_config(1000, 0.667);
    config.params.penalty = p;
    config.rounds = 300;
    const SimTrajectory traj = run_simulation(config);
    REQUIRE(traj.verdict == Verdict::ConvergedHonest);
    CHECK(traj.rounds_to_converge <= previous);
    previous = traj.rounds_to_converge;
  }
}

TEST_CASE("simulation is deterministic under the seed") {
  SimConfig config = penalty_config(200, 0.67);
  config.mutation_rate = 0.01;
  config.rounds = 100;
  const SimTrajectory a = run_simulation(config);
  const SimTrajectory b = run_simulation(config);
  REQUIRE(a.honest_fraction.size() == b.honest_fraction.size());
  for (std::size_t t = 0; t < a.honest_fraction.size(); ++t) {
    CHECK(a.honest_fraction[t] == b.honest_fraction[t]);
    CHECK(a.honest_stake[t] == b.honest_stake[t]);
    CHECK(a.malicious_stake[t] == b.malicious_stake[t]);
  }
  config.seed = 2;
  const SimTrajectory c = run_simulation(config);
  bool differs = false;
  for (std::size_t t = 0;
       t < std::min(a.honest_fraction.size(), c.honest_fraction.size()); ++t) {
    if (a.honest_fraction[t] != c.honest_fraction[t]) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("token conservation holds every round") {
  for (const auto scheme :
       {RewardScheme::UniversalReward, RewardScheme::RewardForWork,
        RewardScheme::Penalty}) {
    SimConfig config = penalty_config(100, 0.7);
    config.scheme = scheme;
    config.mutation_rate = 0.05;
    ValidatorSet validators = init_validators(config);
    const RewardMatrix matrix = build_reward_matrix(scheme, config.params);
    for (std::size_t round = 0; round < 200; ++round) {
      const RoundResult rr = run_round(validators, scheme, config.params, round);
      check_conservation(rr);
      update_strategies(validators, rr, matrix, config, round);
    }
  }
}

TEST_CASE("fork scenario dichotomy") {
  CHECK(fork_scenario(100, 0.7, false).both_forks_finalized);
  CHECK(fork_scenario(100, 0.7, false).slashed_count == 0);
  CHECK(!fork_scenario(100, 0.5, false).both_forks_finalized);
  const ForkReport slashed = fork_scenario(100, 0.7, true);
  CHECK(!slashed.both_forks_finalized);
  CHECK(slashed.slashed_count == 70);
  CHECK_THROWS_AS(fork_scenario(3, 0.7, false), std::invalid_argument);
}
