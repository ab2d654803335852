#ifndef ECFP_GAME_HPP
#define ECFP_GAME_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace ecfp {

// A mixed strategy is a point of the action simplex: nonnegative entries
// (rounding down to -1e-12 is tolerated) summing to 1 within 1e-9.
using MixedStrategy = std::vector<double>;

// One strategy per player. Also the shape of empirical distributions,
// centroid distributions, and played actions (actions may be mixed).
using JointMixedStrategy = std::vector<MixedStrategy>;

inline constexpr double kSimplexEntrySlack = 1e-12;
inline constexpr double kSimplexSumTolerance = 1e-9;

// Finite normal-form game in which every player shares one utility
// function, stored as a dense row-major tensor over joint pure-action
// profiles (the last player's action varies fastest).
class Game {
 public:
  static constexpr std::int64_t kDefaultMaxProfiles = 10'000'000;

  Game(std::vector<int> action_counts, std::vector<double> utility,
       std::int64_t max_profiles = kDefaultMaxProfiles);

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const {
    return action_counts_[static_cast<std::size_t>(player)];
  }
  const std::vector<int>& action_counts() const { return action_counts_; }
  std::int64_t num_profiles() const {
    return static_cast<std::int64_t>(utility_.size());
  }
  const std::vector<double>& utility() const { return utility_; }

  std::int64_t profile_index(std::span<const int> profile) const;
  double utility_at(std::span<const int> profile) const {
    return utility_[static_cast<std::size_t>(profile_index(profile))];
  }

  double min_utility() const { return min_utility_; }
  double max_utility() const { return max_utility_; }
  double utility_range() const { return max_utility_ - min_utility_; }

 private:
  std::vector<int> action_counts_;
  std::vector<double> utility_;
  double min_utility_ = 0.0;
  double max_utility_ = 0.0;
};

// Throws std::invalid_argument naming the first player whose strategy
// vector does not match the game's action count.
void check_dimensions(const Game& game, const JointMixedStrategy& p);

// Simplex membership up to the stated slacks; names the player on failure.
void check_simplex(const Game& game, const JointMixedStrategy& p);

// Expected shared utility under independent mixed strategies, evaluated by
// exact enumeration of all joint pure profiles.
double mixed_utility(const Game& game, const JointMixedStrategy& p);

// Entry a is the utility of playing pure action a against p with player i's
// own component ignored. Linearity gives
//   mixed_utility(p) == dot(p[i], payoff_vector(game, i, p))
// up to roundoff.
std::vector<double> payoff_vector(const Game& game, int player,
                                  const JointMixedStrategy& p);

// Pure-action vertex of player i's simplex.
MixedStrategy vertex(const Game& game, int player, int action);

}  // namespace ecfp

#endif  // ECFP_GAME_HPP
