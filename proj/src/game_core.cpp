#include "blockgame/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blockgame {

const char* to_string(Strategy s) {
  return s == Strategy::Honest ? "honest" : "malicious";
}

const char* to_string(RewardScheme s) {
  switch (s) {
    case RewardScheme::UniversalReward: return "universal";
    case RewardScheme::RewardForWork: return "reward_for_work";
    case RewardScheme::Penalty: return "penalty";
  }
  return "?";
}

const char* to_string(QuorumOutcome o) {
  switch (o) {
    case QuorumOutcome::HonestQuorum: return "honest_quorum";
    case QuorumOutcome::MaliciousQuorum: return "malicious_quorum";
    case QuorumOutcome::NilBlock: return "nil_block";
  }
  return "?";
}

PopulationState::PopulationState(double honest, double malicious)
    : honest_(honest), malicious_(malicious) {
  if (honest < 0.0 || malicious < 0.0) {
    throw std::invalid_argument("population state: negative component");
  }
  if (std::abs(honest + malicious - 1.0) > kSimplexTol) {
    throw std::invalid_argument("population state: components must sum to 1");
  }
}

PopulationState PopulationState::from_honest(double honest_fraction) {
  return PopulationState(honest_fraction, 1.0 - honest_fraction);
}

void EconomicParams::validate(RewardScheme scheme) const {
  if (expense < 0.0) throw std::invalid_argument("expense must be >= 0");
  if (saved_expense < 0.0 || saved_expense > expense) {
    throw std::invalid_argument("saved_expense must lie in [0, expense]");
  }
  if (reward < 0.0) throw std::invalid_argument("reward must be >= 0");
  if (block_reward < 0.0) throw std::invalid_argument("block_reward must be >= 0");
  for (double f : per_tx_fees) {
    if (f < 0.0) throw std::invalid_argument("transaction fees must be >= 0");
  }
  if (byzantine_benefit < 0.0 || byzantine_benefit > max_benefit) {
    throw std::invalid_argument("byzantine_benefit must lie in [0, max_benefit]");
  }
  if (quorum_threshold < kDefaultQuorumThreshold - kSimplexTol) {
    throw std::invalid_argument("quorum_threshold must be >= 2/3");
  }
  if (scheme == RewardScheme::Penalty && penalty <= 0.0) {
    throw std::invalid_argument("penalty scheme requires p > 0");
  }
}

double RewardMatrix::at(Strategy row, QuorumOutcome column) const {
  if (column == QuorumOutcome::NilBlock) {
    throw std::invalid_argument("nil block has no matrix column");
  }
  const int r = row == Strategy::Honest ? 0 : 1;
  const int c = column == QuorumOutcome::HonestQuorum ? 0 : 1;
  return u[r][c];
}

double RewardMatrix::max_entry() const {
  return std::max({u[0][0], u[0][1], u[1][0], u[1][1]});
}

double RewardMatrix::min_entry() const {
  return std::min({u[0][0], u[0][1], u[1][0], u[1][1]});
}

double incentive(std::span<const double> fees, double block_reward) {
  if (block_reward < 0.0) {
    throw std::domain_error("incentive: negative block reward");
  }
  double sum = 0.0;
  for (double f : fees) {
    if (f < 0.0) throw std::domain_error("incentive: negative transaction fee");
    sum += f;
  }
  return sum + block_reward;
}

double effective_reward(RewardScheme scheme, const EconomicParams& params,
                        double incentive, bool in_quorum,
                        std::size_t denominator) {
  if (denominator == 0) {
    throw std::domain_error("effective_reward: zero denominator");
  }
  const double share = incentive / static_cast<double>(denominator);
  switch (scheme) {
    case RewardScheme::UniversalReward:
      return share - params.expense;
    case RewardScheme::RewardForWork:
      return in_quorum ? share - params.expense : 0.0;
    case RewardScheme::Penalty:
      if (params.penalty <= 0.0) {
        throw std::invalid_argument("effective_reward: penalty scheme requires p > 0");
      }
      return in_quorum ? share - params.expense : -params.penalty;
  }
  throw std::logic_error("effective_reward: unknown scheme");
}

SecurityReport check_security_condition(double effective_reward) {
  if (effective_reward >= 0.0) {
    return {SecurityVerdict::Secure, "reward is non-negative"};
  }
  return {SecurityVerdict::Insecure,
          "reward is negative: rational validators would abstain from "
          "consensus, compromising liveness"};
}

RewardMatrix build_reward_matrix(RewardScheme scheme,
                                 const EconomicParams& params) {
  params.validate(scheme);
  const double r = params.reward;
  const double e = params.expense;
  const double es = params.saved_expense;
  const double b = params.byzantine_benefit;
  const double p = params.penalty;
  switch (scheme) {
    case RewardScheme::UniversalReward:
      return {{{r, r}, {r + es, r + b}}};
    case RewardScheme::RewardForWork:
      return {{{r, -e}, {-es, r + b}}};
    case RewardScheme::Penalty:
      return {{{r, -p}, {-p, r + b}}};
  }
  throw std::logic_error("build_reward_matrix: unknown scheme");
}

QuorumOutcome quorum_outcome(const PopulationState& x,
                             double quorum_threshold) {
  if (quorum_threshold < kDefaultQuorumThreshold - kSimplexTol) {
    throw std::invalid_argument("quorum_outcome: threshold must be >= 2/3");
  }
  if (x.honest() >= quorum_threshold) return QuorumOutcome::HonestQuorum;
  if (x.malicious() >= quorum_threshold) return QuorumOutcome::MaliciousQuorum;
  return QuorumOutcome::NilBlock;
}

bool validate_block(const Block& block) {
  return std::ranges::all_of(block.transactions,
                             [](const Transaction& tx) { return tx.correct; });
}

double round_payoff(const RewardMatrix& matrix, Strategy s,
                    QuorumOutcome outcome, const EconomicParams& params) {
  if (outcome == QuorumOutcome::NilBlock) {
    // No incentive, no slash; the operating expense is still incurred.
    return s == Strategy::Honest ? -params.expense : -params.saved_expense;
  }
  return matrix.at(s, outcome);
}

}  // namespace blockgame
