#include "ecfp/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecfp {

double best_response_value(const Game& game, int player,
                           const JointMixedStrategy& belief) {
  const std::vector<double> pv = payoff_vector(game, player, belief);
  return *std::max_element(pv.begin(), pv.end());
}

std::vector<int> epsilon_br_actions(const Game& game,
                                    const BestResponseQuery& query) {
  if (query.epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be nonnegative");
  }
  if (query.tie_tolerance < 0.0) {
    throw std::invalid_argument("tie_tolerance must be nonnegative");
  }
  const std::vector<double> pv = payoff_vector(game, query.player, query.belief);
  const double best = *std::max_element(pv.begin(), pv.end());
  const double cutoff = best - query.epsilon - query.tie_tolerance;
  std::vector<int> actions;
  for (std::size_t a = 0; a < pv.size(); ++a) {
    if (pv[a] >= cutoff) actions.push_back(static_cast<int>(a));
  }
  // best itself always satisfies pv[a] >= cutoff, so the set is nonempty.
  return actions;
}

std::vector<int> epsilon_br_actions(const Game& game, int player,
                                    const JointMixedStrategy& belief,
                                    double epsilon, double tie_tolerance) {
  BestResponseQuery query;
  query.player = player;
  query.belief = belief;
  query.epsilon = epsilon;
  query.tie_tolerance = tie_tolerance;
  return epsilon_br_actions(game, query);
}

double ne_gap(const Game& game, const JointMixedStrategy& p) {
  check_simplex(game, p);
  // Max over players, not clamped at zero: roundoff can leave the whole
  // expression a hair below zero and callers test against that band.
  double gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players(); ++i) {
    const std::vector<double> pv = payoff_vector(game, i, p);
    const double best = *std::max_element(pv.begin(), pv.end());
    double current = 0.0;
    const MixedStrategy& pi = p[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < pv.size(); ++a) current += pi[a] * pv[a];
    gap = std::max(gap, best - current);
  }
  return gap;
}

double mce_gap(const Game& game, const Partition& partition,
               const JointMixedStrategy& p) {
  const JointMixedStrategy bar = centroid(partition, p);
  check_simplex(game, p);
  double gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players(); ++i) {
    const std::vector<double> pv = payoff_vector(game, i, bar);
    const double best = *std::max_element(pv.begin(), pv.end());
    double current = 0.0;
    const MixedStrategy& pi = p[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < pv.size(); ++a) current += pi[a] * pv[a];
    gap = std::max(gap, best - current);
  }
  return gap;
}

double sne_gap(const Game& game, const Partition& partition,
               const JointMixedStrategy& p) {
  double gap = ne_gap(game, p);
  for (const std::vector<int>& members : partition.classes()) {
    for (std::size_t a = 0; a + 1 < members.size(); ++a) {
      const MixedStrategy& pa = p[static_cast<std::size_t>(members[a])];
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const MixedStrategy& pb = p[static_cast<std::size_t>(members[b])];
        if (pa.size() != pb.size()) {
          throw std::invalid_argument(
              "players in one class have unequal action counts");
        }
        for (std::size_t k = 0; k < pa.size(); ++k) {
          gap = std::max(gap, std::abs(pa[k] - pb[k]));
        }
      }
    }
  }
  return gap;
}

}  // namespace ecfp
