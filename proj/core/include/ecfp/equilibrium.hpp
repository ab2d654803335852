#ifndef ECFP_EQUILIBRIUM_HPP
#define ECFP_EQUILIBRIUM_HPP

#include <vector>

#include "ecfp/game.hpp"
#include "ecfp/partition.hpp"

namespace ecfp {

inline constexpr double kDefaultTieTolerance = 1e-9;

struct BestResponseQuery {
  int player = 0;
  JointMixedStrategy belief;  // only the opponents' components are read
  double epsilon = 0.0;
  double tie_tolerance = kDefaultTieTolerance;
};

// Highest payoff player i can get against the belief. The maximum over the
// whole simplex is attained at a vertex, so this is the max entry of
// payoff_vector.
double best_response_value(const Game& game, int player,
                           const JointMixedStrategy& belief);

// Pure actions within epsilon (plus tie_tolerance) of the best payoff
// against the belief. Never empty; grows with epsilon. Sorted ascending.
std::vector<int> epsilon_br_actions(const Game& game,
                                    const BestResponseQuery& query);
std::vector<int> epsilon_br_actions(const Game& game, int player,
                                    const JointMixedStrategy& belief,
                                    double epsilon,
                                    double tie_tolerance = kDefaultTieTolerance);

// Gap metrics: the largest payoff any single player could gain by
// deviating. Each is zero (within roundoff) exactly on the corresponding
// equilibrium set, making it a computable certificate of proximity.

// Deviation against the profile itself: zero iff p is a Nash equilibrium.
double ne_gap(const Game& game, const JointMixedStrategy& p);

// Deviation against the centroid of p: zero iff p is mean-centric, i.e.
// every player best-responds to the per-class average of play.
double mce_gap(const Game& game, const Partition& partition,
               const JointMixedStrategy& p);

// ne_gap plus the largest within-class strategy disagreement (sup norm):
// zero iff p is a Nash equilibrium that is symmetric across classes.
double sne_gap(const Game& game, const Partition& partition,
               const JointMixedStrategy& p);

}  // namespace ecfp

#endif  // ECFP_EQUILIBRIUM_HPP
