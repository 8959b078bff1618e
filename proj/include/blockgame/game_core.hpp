#ifndef BLOCKGAME_GAME_CORE_HPP
#define BLOCKGAME_GAME_CORE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace blockgame {

enum class Strategy { Honest, Malicious };

enum class RewardScheme { UniversalReward, RewardForWork, Penalty };

// Column index of the reward matrix; NilBlock has no column and is
// handled separately in round_payoff.
enum class QuorumOutcome { HonestQuorum, MaliciousQuorum, NilBlock };

const char* to_string(Strategy s);
const char* to_string(RewardScheme s);
const char* to_string(QuorumOutcome o);

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kDefaultQuorumThreshold = 2.0 / 3.0;

// Point on the 1-simplex over {honest, malicious}.
class PopulationState {
 public:
  PopulationState(double honest, double malicious);
  static PopulationState from_honest(double honest_fraction);

  double honest() const { return honest_; }
  double malicious() const { return malicious_; }

  bool operator==(const PopulationState&) const = default;

 private:
  double honest_;
  double malicious_;
};

// The scalar economy of the validation game. Token amounts are in
// multiples of the scale unit x (expense = 1x by default).
struct EconomicParams {
  double expense = 1.0;        // e, cost of running a validator per round
  double saved_expense = 1.0;  // e', cost of malicious behaviour, 0 <= e' <= e
  double reward = 10.0;        // r, effective per-validator reward
  double block_reward = 0.0;   // R, protocol issuance per block
  std::vector<double> per_tx_fees{};
  double byzantine_benefit = 100.0;  // b
  double max_benefit = std::numeric_limits<double>::infinity();  // B, bound on b
  double penalty = 100.0;  // p, slash for deviating from the quorum
  double quorum_threshold = kDefaultQuorumThreshold;  // q

  // Throws std::invalid_argument on violated bounds.
  void validate(RewardScheme scheme) const;

  bool operator==(const EconomicParams&) const = default;
};

struct Transaction {
  std::string id;
  bool correct = true;
};

struct Block {
  std::vector<Transaction> transactions;
};

// 2x2 payoff table, rows (Honest, Malicious) x columns (HonestQuorum,
// MaliciousQuorum).
struct RewardMatrix {
  double u[2][2];

  double at(Strategy row, QuorumOutcome column) const;
  double max_entry() const;
  double min_entry() const;
};

enum class SecurityVerdict { Secure, Insecure };

struct SecurityReport {
  SecurityVerdict verdict;
  std::string note;
};

// Sum of transaction fees plus the block reward (per-block incentive i).
double incentive(std::span<const double> fees, double block_reward);

// Per-validator reward for one block round. For UniversalReward the
// denominator is the validator-set size N; otherwise the quorum size N'.
double effective_reward(RewardScheme scheme, const EconomicParams& params,
                        double incentive, bool in_quorum,
                        std::size_t denominator);

// Rational validators abstain when the reward is negative.
SecurityReport check_security_condition(double effective_reward);

RewardMatrix build_reward_matrix(RewardScheme scheme,
                                 const EconomicParams& params);

QuorumOutcome quorum_outcome(const PopulationState& x, double quorum_threshold);

// A block is valid iff every transaction is correct; vacuously true when empty.
bool validate_block(const Block& block);

// Payoff for one validator in one decided round. A nil round pays no
// incentive and no slash; only the operating expense is incurred.
double round_payoff(const RewardMatrix& matrix, Strategy s,
                    QuorumOutcome outcome, const EconomicParams& params);

}  // namespace blockgame

#endif  // BLOCKGAME_GAME_CORE_HPP
