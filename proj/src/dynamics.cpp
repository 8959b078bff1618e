#include "blockgame/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace blockgame {

const char* to_string(FitnessModel m) {
  return m == FitnessModel::PairwiseMatching ? "matching" : "quorum";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ConvergedHonest: return "ConvergedHonest";
    case Verdict::ConvergedMalicious: return "ConvergedMalicious";
    case Verdict::InteriorRest: return "InteriorRest";
    case Verdict::MaxRoundsReached: return "MaxRoundsReached";
  }
  return "?";
}

FitnessPair fitness(const RewardMatrix& matrix, const PopulationState& x,
                    FitnessModel model, const EconomicParams& params) {
  switch (model) {
    case FitnessModel::PairwiseMatching:
      return {x.honest() * matrix.u[0][0] + x.malicious() * matrix.u[0][1],
              x.honest() * matrix.u[1][0] + x.malicious() * matrix.u[1][1]};
    case FitnessModel::QuorumDeterministic: {
      const QuorumOutcome outcome = quorum_outcome(x, params.quorum_threshold);
      return {round_payoff(matrix, Strategy::Honest, outcome, params),
              round_payoff(matrix, Strategy::Malicious, outcome, params)};
    }
  }
  throw std::logic_error("fitness: unknown model");
}

PopulationState replicator_step(const PopulationState& x, FitnessPair f,
                                ShiftPolicy shift) {
  if (shift.background_fitness <= 0.0) {
    throw std::invalid_argument("replicator_step: background fitness must be > 0");
  }
  const double sigma =
      std::max(0.0, -std::min(f.honest, f.malicious)) + shift.background_fitness;
  const double wh = x.honest() * (f.honest + sigma);
  const double wm = x.malicious() * (f.malicious + sigma);
  const double total = wh + wm;
  if (total <= 0.0) {
    throw std::domain_error("replicator_step: degenerate step, zero total fitness");
  }
  const double xh = wh / total;
  return PopulationState(xh, 1.0 - xh);
}

Trajectory run_trajectory(const RewardMatrix& matrix, PopulationState x0,
                          FitnessModel model, const EconomicParams& params,
                          std::size_t max_rounds, double convergence_tol,
                          ShiftPolicy shift) {
  if (max_rounds < 1) {
    throw std::invalid_argument("run_trajectory: max_rounds must be >= 1");
  }
  Trajectory traj;
  traj.states.push_back(x0);
  traj.fitness_trace.push_back(fitness(matrix, x0, model, params));

  auto classify = [&](const PopulationState& x) -> std::optional<Verdict> {
    if (x.honest() >= 1.0 - convergence_tol) return Verdict::ConvergedHonest;
    if (x.malicious() >= 1.0 - convergence_tol) return Verdict::ConvergedMalicious;
    return std::nullopt;
  };

  if (auto v = classify(x0)) {
    traj.verdict = *v;
    traj.rounds_to_converge = 0;
    return traj;
  }

  for (std::size_t round = 1; round <= max_rounds; ++round) {
    const PopulationState& x = traj.states.back();
    const FitnessPair f = traj.fitness_trace.back();
    const PopulationState next = replicator_step(x, f, shift);
    const bool at_rest = std::abs(next.honest() - x.honest()) <= 1e-15;
    traj.states.push_back(next);
    traj.fitness_trace.push_back(fitness(matrix, next, model, params));
    if (auto v = classify(next)) {
      traj.verdict = *v;
      traj.rounds_to_converge = round;
      return traj;
    }
    if (at_rest) {
      traj.verdict = Verdict::InteriorRest;
      traj.rounds_to_converge = round;
      return traj;
    }
  }
  traj.verdict = Verdict::MaxRoundsReached;
  traj.rounds_to_converge = max_rounds;
  return traj;
}

std::optional<double> interior_fixed_point(const RewardMatrix& matrix) {
  const double denom =
      matrix.u[0][0] - matrix.u[0][1] - matrix.u[1][0] + matrix.u[1][1];
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double x_star = (matrix.u[1][1] - matrix.u[0][1]) / denom;
  if (x_star <= kSimplexTol || x_star >= 1.0 - kSimplexTol) return std::nullopt;
  return x_star;
}

}  // namespace blockgame
