#include "blockgame/ess.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blockgame {

namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kEqualityTol = 1e-12;

}  // namespace

const char* to_string(ESSClass c) {
  switch (c) {
    case ESSClass::StrictESS: return "StrictESS";
    case ESSClass::MixedOrNeutral: return "MixedOrNeutral";
    case ESSClass::NotESS: return "NotESS";
  }
  return "?";
}

const char* to_string(GenesisOutcome o) {
  switch (o) {
    case GenesisOutcome::HonestDominates: return "HonestDominates";
    case GenesisOutcome::MaliciousDominates: return "MaliciousDominates";
    case GenesisOutcome::Boundary: return "Boundary";
  }
  return "?";
}

InvasionFitness invasion_fitness(const InvasionSetup& setup) {
  const double eps = setup.mutant_fraction;
  if (eps <= 0.0 || eps > kMaxMutantFraction + kEqualityTol) {
    throw std::domain_error("invasion_fitness: mutant fraction must lie in (0, 1/3]");
  }
  const RewardMatrix matrix = build_reward_matrix(setup.scheme, setup.params);
  const bool honest_incumbent = setup.incumbent == Strategy::Honest;
  const double xh = honest_incumbent ? 1.0 - eps : eps;
  const FitnessPair f = fitness(matrix, PopulationState::from_honest(xh),
                                setup.model, setup.params);
  return honest_incumbent ? InvasionFitness{f.honest, f.malicious}
                          : InvasionFitness{f.malicious, f.honest};
}

ESSVerdict classify_ess(Strategy incumbent, RewardScheme scheme,
                        const EconomicParams& params, FitnessModel model,
                        std::span<const double> epsilon_grid) {
  if (epsilon_grid.empty()) {
    throw std::invalid_argument("classify_ess: empty epsilon grid");
  }
  bool any_equal = false;
  bool any_invaded = false;
  double min_gap = std::numeric_limits<double>::infinity();
  InvasionFitness first{};
  bool have_first = false;
  for (double eps : epsilon_grid) {
    const InvasionFitness f = invasion_fitness(
        {incumbent, eps, scheme, params, model});
    if (!have_first) {
      first = f;
      have_first = true;
    }
    const double gap = f.incumbent - f.mutant;
    min_gap = std::min(min_gap, gap);
    if (std::abs(gap) <= kEqualityTol) {
      any_equal = true;
    } else if (gap < 0.0) {
      any_invaded = true;
    }
  }
  ESSClass cls = ESSClass::StrictESS;
  if (any_invaded) {
    cls = ESSClass::NotESS;
  } else if (any_equal) {
    cls = ESSClass::MixedOrNeutral;
  }
  std::ostringstream note;
  switch (cls) {
    case ESSClass::StrictESS:
      note << "incumbent " << to_string(incumbent)
           << " resists invasion; minimum fitness gap " << min_gap;
      break;
    case ESSClass::MixedOrNeutral:
      note << "incumbent " << to_string(incumbent)
           << " ties with mutants for some mutant fraction; drift possible";
      break;
    case ESSClass::NotESS:
      note << "mutants out-earn incumbent " << to_string(incumbent)
           << "; worst gap " << min_gap;
      break;
  }
  return {cls, first.incumbent, first.mutant, note.str()};
}

GenesisOutcome genesis_outcome(const PopulationState& x0, RewardScheme scheme,
                               const EconomicParams& params) {
  const RewardMatrix matrix = build_reward_matrix(scheme, params);
  if (const auto x_star = interior_fixed_point(matrix)) {
    if (std::abs(x0.honest() - *x_star) <= kBoundaryTol) {
      return GenesisOutcome::Boundary;
    }
    return x0.honest() > *x_star ? GenesisOutcome::HonestDominates
                                 : GenesisOutcome::MaliciousDominates;
  }
  // No interior rest point: one strategy dominates everywhere.
  const FitnessPair f =
      fitness(matrix, x0, FitnessModel::PairwiseMatching, params);
  if (std::abs(f.honest - f.malicious) <= kBoundaryTol) {
    return GenesisOutcome::Boundary;
  }
  return f.honest > f.malicious ? GenesisOutcome::HonestDominates
                                : GenesisOutcome::MaliciousDominates;
}

}  // namespace blockgame
