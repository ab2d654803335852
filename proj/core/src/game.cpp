#include "ecfp/game.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "ecfp/errors.hpp"

namespace ecfp {

Game::Game(std::vector<int> action_counts, std::vector<double> utility,
           std::int64_t max_profiles)
    : action_counts_(std::move(action_counts)), utility_(std::move(utility)) {
  if (action_counts_.size() < 2) {
    throw std::invalid_argument("game needs at least 2 players, got " +
                                std::to_string(action_counts_.size()));
  }
  std::int64_t profiles = 1;
  for (std::size_t i = 0; i < action_counts_.size(); ++i) {
    const int m = action_counts_[i];
    if (m < 1) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  ": action count must be >= 1, got " +
                                  std::to_string(m));
    }
    if (profiles > max_profiles / m) {
      throw resource_error(
          "utility tensor would exceed the profile cap of " +
          std::to_string(max_profiles) + " entries");
    }
    profiles *= m;
  }
  if (static_cast<std::int64_t>(utility_.size()) != profiles) {
    throw std::invalid_argument(
        "utility tensor has " + std::to_string(utility_.size()) +
        " entries, expected " + std::to_string(profiles));
  }
  min_utility_ = utility_[0];
  max_utility_ = utility_[0];
  for (std::size_t k = 0; k < utility_.size(); ++k) {
    const double u = utility_[k];
    if (!std::isfinite(u)) {
      throw std::invalid_argument("utility entry " + std::to_string(k) +
                                  " is not finite");
    }
    if (u < min_utility_) min_utility_ = u;
    if (u > max_utility_) max_utility_ = u;
  }
}

std::int64_t Game::profile_index(std::span<const int> profile) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < action_counts_.size(); ++i) {
    idx = idx * action_counts_[i] + profile[i];
  }
  return idx;
}

void check_dimensions(const Game& game, const JointMixedStrategy& p) {
  if (static_cast<int>(p.size()) != game.num_players()) {
    throw std::invalid_argument(
        "joint strategy has " + std::to_string(p.size()) +
        " components, game has " + std::to_string(game.num_players()) +
        " players");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    if (static_cast<int>(p[static_cast<std::size_t>(i)].size()) !=
        game.num_actions(i)) {
      throw std::invalid_argument(
          "player " + std::to_string(i) + ": expected " +
          std::to_string(game.num_actions(i)) + " entries, got " +
          std::to_string(p[static_cast<std::size_t>(i)].size()));
    }
  }
}

void check_simplex(const Game& game, const JointMixedStrategy& p) {
  check_dimensions(game, p);
  for (int i = 0; i < game.num_players(); ++i) {
    double sum = 0.0;
    for (double x : p[static_cast<std::size_t>(i)]) {
      if (x < -kSimplexEntrySlack || !std::isfinite(x)) {
        throw std::invalid_argument("player " + std::to_string(i) +
                                    ": strategy entry " + std::to_string(x) +
                                    " outside the simplex");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  ": strategy sums to " + std::to_string(sum));
    }
  }
}

namespace {

// Depth-first enumeration of joint profiles, folding the probability
// product player by player in index order. Subtrees under an exactly-zero
// factor contribute exactly zero and are skipped.
double accumulate_all(const Game& game, const JointMixedStrategy& p,
                      int player, std::int64_t base, double prob) {
  const int m = game.num_actions(player);
  const bool leaf = (player + 1 == game.num_players());
  double acc = 0.0;
  for (int a = 0; a < m; ++a) {
    const double w = prob * p[static_cast<std::size_t>(player)]
                            [static_cast<std::size_t>(a)];
    if (w == 0.0) continue;
    const std::int64_t idx = base * m + a;
    if (leaf) {
      acc += w * game.utility()[static_cast<std::size_t>(idx)];
    } else {
      acc += accumulate_all(game, p, player + 1, idx, w);
    }
  }
  return acc;
}

void accumulate_vertex(const Game& game, const JointMixedStrategy& p,
                       int target, int target_action, int player,
                       std::int64_t base, double prob, std::vector<double>* out) {
  const int m = game.num_actions(player);
  const bool leaf = (player + 1 == game.num_players());
  if (player == target) {
    for (int a = 0; a < m; ++a) {
      const std::int64_t idx = base * m + a;
      if (leaf) {
        (*out)[static_cast<std::size_t>(a)] +=
            prob * game.utility()[static_cast<std::size_t>(idx)];
      } else {
        accumulate_vertex(game, p, target, a, player + 1, idx, prob, out);
      }
    }
    return;
  }
  for (int a = 0; a < m; ++a) {
    const double w = prob * p[static_cast<std::size_t>(player)]
                            [static_cast<std::size_t>(a)];
    if (w == 0.0) continue;
    const std::int64_t idx = base * m + a;
    if (leaf) {
      (*out)[static_cast<std::size_t>(target_action)] +=
          w * game.utility()[static_cast<std::size_t>(idx)];
    } else {
      accumulate_vertex(game, p, target, target_action, player + 1, idx, w, out);
    }
  }
}

}  // namespace

double mixed_utility(const Game& game, const JointMixedStrategy& p) {
  check_dimensions(game, p);
  return accumulate_all(game, p, 0, 0, 1.0);
}

std::vector<double> payoff_vector(const Game& game, int player,
                                  const JointMixedStrategy& p) {
  if (player < 0 || player >= game.num_players()) {
    throw std::invalid_argument("player index " + std::to_string(player) +
                                " out of range for " +
                                std::to_string(game.num_players()) +
                                " players");
  }
  check_dimensions(game, p);
  std::vector<double> out(static_cast<std::size_t>(game.num_actions(player)),
                          0.0);
  accumulate_vertex(game, p, player, 0, 0, 0, 1.0, &out);
  return out;
}

MixedStrategy vertex(const Game& game, int player, int action) {
  MixedStrategy v(static_cast<std::size_t>(game.num_actions(player)), 0.0);
  v[static_cast<std::size_t>(action)] = 1.0;
  return v;
}

}  // namespace ecfp
