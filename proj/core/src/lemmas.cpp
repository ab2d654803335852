#include "ecfp/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ecfp/dynamics.hpp"
#include "ecfp/equilibrium.hpp"
#include "ecfp/rng.hpp"
#include "ecfp/schedules.hpp"

namespace ecfp {
namespace {

constexpr double kRearrangementTolerance = 1e-10;
constexpr double kRecursionTolerance = 1e-9;

MixedStrategy random_simplex_point(std::mt19937_64& rng, int m) {
  MixedStrategy x(static_cast<std::size_t>(m));
  double sum = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - uniform_double(rng));
    sum += v;
  }
  if (sum == 0.0) {
    const double w = 1.0 / static_cast<double>(m);
    for (double& v : x) v = w;
    return x;
  }
  for (double& v : x) v /= sum;
  return x;
}

JointMixedStrategy random_joint_strategy(std::mt19937_64& rng,
                                         const Game& game) {
  JointMixedStrategy p(static_cast<std::size_t>(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i) {
    p[static_cast<std::size_t>(i)] =
        random_simplex_point(rng, game.num_actions(i));
  }
  return p;
}

}  // namespace

LemmaCheckResult check_rearrangement_random(const Game& game,
                                            const Partition& partition,
                                            const LemmaCheckOptions& options) {
  std::mt19937_64 rng(derive_seed(options.seed, "rearrangement"));
  LemmaCheckResult result;
  result.name = "rearrangement identity";
  result.trials = options.trials;
  result.tolerance = kRearrangementTolerance;
  for (int trial = 0; trial < options.trials; ++trial) {
    const JointMixedStrategy p = random_joint_strategy(rng, game);
    const double residual = rearrangement_residual(game, partition, p);
    result.worst = std::max(result.worst, residual);
    if (!(residual <= kRearrangementTolerance)) ++result.failures;
  }
  result.passed = result.failures == 0;
  return result;
}

LemmaCheckResult check_br_preservation_random(const Game& game,
                                              const Partition& partition,
                                              const LemmaCheckOptions& options) {
  std::mt19937_64 rng(derive_seed(options.seed, "br-preservation"));
  LemmaCheckResult result;
  result.name = "centroid best-response preservation";
  result.trials = options.trials;
  for (int trial = 0; trial < options.trials; ++trial) {
    const JointMixedStrategy q = random_joint_strategy(rng, game);
    const JointMixedStrategy q_bar = centroid(partition, q);
    const double eps = uniform_double(rng) * game.utility_range();
    // Convex combinations of eps-best-response vertices (tie tolerance 0,
    // so every vertex genuinely clears the cutoff) keep the hypothesis of
    // the implication true by construction.
    JointMixedStrategy p(static_cast<std::size_t>(game.num_players()));
    for (int i = 0; i < game.num_players(); ++i) {
      const std::vector<int> support =
          epsilon_br_actions(game, i, q_bar, eps, 0.0);
      const MixedStrategy weights =
          random_simplex_point(rng, static_cast<int>(support.size()));
      MixedStrategy pi(static_cast<std::size_t>(game.num_actions(i)), 0.0);
      for (std::size_t k = 0; k < support.size(); ++k) {
        pi[static_cast<std::size_t>(support[k])] = weights[k];
      }
      p[static_cast<std::size_t>(i)] = std::move(pi);
    }
    if (!centroid_preserves_eps_br(game, partition, p, q, eps)) {
      ++result.failures;
    }
  }
  result.passed = result.failures == 0;
  return result;
}

LemmaCheckResult check_centroid_recursion(const Game& game,
                                          const Partition& partition,
                                          const LemmaCheckOptions& options) {
  LemmaCheckResult result;
  result.name = "centroid recursion consistency";
  result.trials = static_cast<int>(options.trajectory_steps);
  result.tolerance = kRecursionTolerance;
  RngStreams rng(derive_seed(options.seed, "recursion"), game.num_players());
  const StepSizeSchedule gamma = StepSizeSchedule::classical();
  const EpsilonSchedule eps = EpsilonSchedule::power(1.0, 1.0);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;
  ProcessState state =
      ecfp_initial_state(game, partition, initial_action_zero(game));
  for (std::int64_t step = 0; step < options.trajectory_steps; ++step) {
    state = ecfp_step(game, partition, state, gamma, eps, mode, rng);
    const JointMixedStrategy fresh = centroid(partition, state.q);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      for (std::size_t a = 0; a < fresh[i].size(); ++a) {
        const double drift = std::abs(fresh[i][a] - state.q_bar[i][a]);
        result.worst = std::max(result.worst, drift);
      }
    }
  }
  if (!(result.worst <= kRecursionTolerance)) ++result.failures;
  result.passed = result.failures == 0;
  return result;
}

std::vector<LemmaCheckResult> run_lemma_checks(const Game& game,
                                               const Partition& partition,
                                               const LemmaCheckOptions& options) {
  return {check_rearrangement_random(game, partition, options),
          check_br_preservation_random(game, partition, options),
          check_centroid_recursion(game, partition, options)};
}

}  // namespace ecfp
