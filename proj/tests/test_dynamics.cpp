#include <doctest.h>

#include <cmath>
#include <random>

#include "blockgame/dynamics.hpp"

using namespace blockgame;
using doctest::Approx;

namespace {

const EconomicParams kDefaults{};  // e=1, e'=1, r=10, b=100, p=100

RewardMatrix matrix_for(RewardScheme scheme) {
  return build_reward_matrix(scheme, kDefaults);
}

// Independent oracle: bisection on F_h - F_m under pairwise matching.
double bisect_fixed_point(const RewardMatrix& matrix) {
  auto gap = [&](double xh) {
    const FitnessPair f = fitness(matrix, PopulationState::from_honest(xh),
                                  FitnessModel::PairwiseMatching, kDefaults);
    return f.honest - f.malicious;
  };
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  REQUIRE(gap(lo) * gap(hi) < 0.0);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gap(lo) * gap(mid) <= 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("pairwise matching fitness is the expected payoff") {
  const RewardMatrix penalty = matrix_for(RewardScheme::Penalty);
  const FitnessPair f =
      fitness(penalty, PopulationState(0.51, 0.49),
              FitnessModel::PairwiseMatching, kDefaults);
  // 0.51*10 + 0.49*(-100) and 0.51*(-100) + 0.49*110, evaluated directly.
  CHECK(f.honest == Approx(-43.9).epsilon(1e-12));
  CHECK(f.malicious == Approx(2.9).epsilon(1e-12));
}

TEST_CASE("fitness at a pure honest state") {
  const RewardMatrix penalty = matrix_for(RewardScheme::Penalty);
  for (const auto model :
       {FitnessModel::PairwiseMatching, FitnessModel::QuorumDeterministic}) {
    const FitnessPair f =
        fitness(penalty, PopulationState(1.0, 0.0), model, kDefaults);
    CHECK(f.honest == 10.0);
    CHECK(f.malicious == -100.0);
  }
  // Universal matrix keeps the r+e' cell under the deterministic model.
  const RewardMatrix universal = matrix_for(RewardScheme::UniversalReward);
  const FitnessPair f =
      fitness(universal, PopulationState(1.0, 0.0),
              FitnessModel::QuorumDeterministic, kDefaults);
  CHECK(f.honest == 10.0);
  CHECK(f.malicious == 11.0);
}

TEST_CASE("quorum-deterministic fitness uses the nil payoffs mid-simplex") {
  const RewardMatrix penalty = matrix_for(RewardScheme::Penalty);
  const FitnessPair f =
      fitness(penalty, PopulationState(0.5, 0.5),
              FitnessModel::QuorumDeterministic, kDefaults);
  CHECK(f.honest == -1.0);
  CHECK(f.malicious == -1.0);
}

TEST_CASE("replicator step fixed points") {
  CHECK(replicator_step(PopulationState(1.0, 0.0), {3.0, 42.0}).honest() ==
        1.0);
  CHECK(replicator_step(PopulationState(0.0, 1.0), {42.0, 3.0}).honest() ==
        0.0);
  CHECK(replicator_step(PopulationState(0.5, 0.5), {-7.0, -7.0}).honest() ==
        0.5);
}

TEST_CASE("replicator step hand example") {
  // sigma = max(0, -8.9) + 1 = 1; x' = 0.9*9.9 / (0.9*9.9 + 0.1*11.1).
  const PopulationState next =
      replicator_step(PopulationState(0.9, 0.1), {8.9, 10.1}, {1.0});
  CHECK(next.honest() == Approx(8.91 / 10.02).epsilon(1e-14));
  CHECK(next.honest() < 0.9);  // F_h < F_m pushes honest down
}

TEST_CASE("replicator step preserves the simplex") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> payoff(-200.0, 200.0);
  for (int k = 0; k < 2000; ++k) {
    const PopulationState x = PopulationState::from_honest(unit(rng));
    const PopulationState next =
        replicator_step(x, {payoff(rng), payoff(rng)}, {unit(rng) + 0.01});
    CHECK(next.honest() >= 0.0);
    CHECK(next.malicious() >= 0.0);
    CHECK(next.honest() + next.malicious() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("selection direction does not depend on the background fitness") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  std::uniform_real_distribution<double> payoff(-200.0, 200.0);
  for (int k = 0; k < 2000; ++k) {
    const PopulationState x = PopulationState::from_honest(unit(rng));
    const FitnessPair f{payoff(rng), payoff(rng)};
    const double d1 = replicator_step(x, f, {0.5}).honest() - x.honest();
    const double d2 = replicator_step(x, f, {25.0}).honest() - x.honest();
    if (f.honest > f.malicious) {
      CHECK(d1 > 0.0);
      CHECK(d2 > 0.0);
    } else if (f.honest < f.malicious) {
      CHECK(d1 < 0.0);
      CHECK(d2 < 0.0);
    } else {
      CHECK(d1 == 0.0);
      CHECK(d2 == 0.0);
    }
  }
}

TEST_CASE("interior fixed points with derived values") {
  // Penalty: solve 110x - 100 = 110 - 210x.
  const auto penalty = interior_fixed_point(matrix_for(RewardScheme::Penalty));
  REQUIRE(penalty.has_value());
  CHECK(*penalty == Approx(0.65625).epsilon(1e-12));
  CHECK(*penalty ==
        Approx(bisect_fixed_point(matrix_for(RewardScheme::Penalty)))
            .epsilon(1e-9));

  // Reward for work: solve 11x - 1 = 110 - 111x.
  const auto rfw = interior_fixed_point(matrix_for(RewardScheme::RewardForWork));
  REQUIRE(rfw.has_value());
  CHECK(*rfw == Approx(111.0 / 122.0).epsilon(1e-12));
  CHECK(*rfw ==
        Approx(bisect_fixed_point(matrix_for(RewardScheme::RewardForWork)))
            .epsilon(1e-9));

  // Universal: malicious dominates everywhere, no interior rest point.
  CHECK(!interior_fixed_point(matrix_for(RewardScheme::UniversalReward))
             .has_value());

  // Degenerate equal rows.
  CHECK(!interior_fixed_point(RewardMatrix{{{1.0, 2.0}, {1.0, 2.0}}})
             .has_value());
}

TEST_CASE("fitness gap vanishes at the interior rest point") {
  for (const auto scheme :
       {RewardScheme::Penalty, RewardScheme::RewardForWork}) {
    const RewardMatrix matrix = matrix_for(scheme);
    const auto x_star = interior_fixed_point(matrix);
    REQUIRE(x_star.has_value());
    const FitnessPair f =
        fitness(matrix, PopulationState::from_honest(*x_star),
                FitnessModel::PairwiseMatching, kDefaults);
    CHECK(std::abs(f.honest - f.malicious) <= 1e-9);
  }
}

TEST_CASE("trajectory verdicts reproduce the experiments") {
  SUBCASE("universal 90/10 collapses to malicious") {
    const Trajectory traj = run_trajectory(
        matrix_for(RewardScheme::UniversalReward),
        PopulationState::from_honest(0.9), FitnessModel::PairwiseMatching,
        kDefaults);
    CHECK(traj.verdict == Verdict::ConvergedMalicious);
  }
  SUBCASE("penalty 67/33 converges honest") {
    const Trajectory traj = run_trajectory(
        matrix_for(RewardScheme::Penalty), PopulationState::from_honest(0.667),
        FitnessModel::PairwiseMatching, kDefaults);
    CHECK(traj.verdict == Verdict::ConvergedHonest);
  }
  SUBCASE("penalty 51/49 collapses to malicious") {
    const Trajectory traj = run_trajectory(
        matrix_for(RewardScheme::Penalty), PopulationState::from_honest(0.51),
        FitnessModel::PairwiseMatching, kDefaults);
    CHECK(traj.verdict == Verdict::ConvergedMalicious);
  }
}

TEST_CASE("trajectories are monotone away from the rest point") {
  const RewardMatrix penalty = matrix_for(RewardScheme::Penalty);
  const double x_star = *interior_fixed_point(penalty);
  for (const double x0 : {0.3, 0.6, 0.7, 0.9}) {
    const Trajectory traj =
        run_trajectory(penalty, PopulationState::from_honest(x0),
                       FitnessModel::PairwiseMatching, kDefaults);
    const bool increasing = x0 > x_star;
    for (std::size_t t = 1; t < traj.states.size(); ++t) {
      if (increasing) {
        CHECK(traj.states[t].honest() >= traj.states[t - 1].honest());
      } else {
        CHECK(traj.states[t].honest() <= traj.states[t - 1].honest());
      }
    }
  }
}

TEST_CASE("basin structure around the penalty rest point") {
  const RewardMatrix penalty = matrix_for(RewardScheme::Penalty);
  for (const double x0 : {0.66, 0.67, 0.75, 0.99}) {
    CHECK(run_trajectory(penalty, PopulationState::from_honest(x0),
                         FitnessModel::PairwiseMatching, kDefaults)
              .verdict == Verdict::ConvergedHonest);
  }
  for (const double x0 : {0.01, 0.3, 0.5, 0.65}) {
    CHECK(run_trajectory(penalty, PopulationState::from_honest(x0),
                         FitnessModel::PairwiseMatching, kDefaults)
              .verdict == Verdict::ConvergedMalicious);
  }
}

TEST_CASE("already-converged start returns immediately") {
  const Trajectory traj = run_trajectory(
      matrix_for(RewardScheme::Penalty), PopulationState::from_honest(1.0),
      FitnessModel::PairwiseMatching, kDefaults);
  CHECK(traj.verdict == Verdict::ConvergedHonest);
  CHECK(traj.rounds_to_converge == 0);
  CHECK(traj.states.size() == 1);
}

TEST_CASE("equal-payoff game rests in the interior") {
  const RewardMatrix flat{{{1.0, 1.0}, {1.0, 1.0}}};
  const Trajectory traj =
      run_trajectory(flat, PopulationState::from_honest(0.5),
                     FitnessModel::PairwiseMatching, kDefaults);
  CHECK(traj.verdict == Verdict::InteriorRest);
  CHECK(traj.states.back().honest() == 0.5);
}
