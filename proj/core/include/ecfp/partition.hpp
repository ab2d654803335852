#ifndef ECFP_PARTITION_HPP
#define ECFP_PARTITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ecfp/game.hpp"

namespace ecfp {

// Grouping of players into classes. A partition is permutation-invariant
// for a game when the classes are disjoint (i), cover all players (ii),
// players in a class share one action set (iii), and the shared utility is
// unchanged by swapping the actions of any two same-class players (iv).
// Conditions (i)-(iv) are checked by validate_partition; construction only
// rejects structurally malformed input (indices out of range, a player
// listed twice inside one class, an empty class).
class Partition {
 public:
  Partition(int num_players, std::vector<std::vector<int>> classes);

  static Partition singletons(int num_players);
  static Partition single_class(int num_players);
  // Consecutive classes of the given sizes: {0..s0-1}, {s0..s0+s1-1}, ...
  static Partition grouped(const std::vector<int>& class_sizes);

  int num_players() const { return num_players_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }

  // Disjoint and covering; the player->class map exists iff this holds.
  bool well_formed() const { return well_formed_; }
  const std::vector<int>& player_class() const;

 private:
  int num_players_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> player_class_;
  bool well_formed_ = false;
};

enum class PartitionCondition { disjoint, cover, action_counts, swap_invariance };

const char* condition_id(PartitionCondition c);  // "i", "ii", "iii", "iv"

struct PartitionViolation {
  PartitionCondition condition;
  std::string witness;
};

struct PartitionValidationReport {
  bool valid = false;
  std::vector<PartitionViolation> violations;  // at most one per condition
};

// Exhaustive check of conditions (i)-(iv). Condition (iv) compares the
// utility tensor at every profile against every within-class action swap;
// equality is exact by default, utility_tolerance admits externally loaded
// tensors that carry rounding. Throws resource_error when the swap check
// would exceed max_comparisons.
PartitionValidationReport validate_partition(
    const Game& game, const Partition& partition,
    double utility_tolerance = 0.0,
    std::int64_t max_comparisons = 100'000'000);

// Replaces each player's strategy by the average over their class
// (ascending player order, one division), so same-class players receive
// bitwise-identical vectors.
JointMixedStrategy centroid(const Partition& partition,
                            const JointMixedStrategy& p);

// | (1/n) sum_i U(p_i, pbar_{-i}) - U(pbar) |. Zero (up to roundoff) for
// every permutation-invariant partition; the identity is what makes the
// per-class average an adequate summary of joint play.
double rearrangement_residual(const Game& game, const Partition& partition,
                              const JointMixedStrategy& p);

// Checks that averaging preserves eps-best responses: whenever every p_i is
// an eps-best response to the centroid of q, so is every component of the
// centroid of p. Returns false only on a counterexample (hypothesis holds,
// conclusion fails); slack covers roundoff on both sides.
bool centroid_preserves_eps_br(const Game& game, const Partition& partition,
                               const JointMixedStrategy& p,
                               const JointMixedStrategy& q, double eps,
                               double slack = 1e-10);

}  // namespace ecfp

#endif  // ECFP_PARTITION_HPP
