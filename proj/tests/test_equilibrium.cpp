#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ecfp/equilibrium.hpp"
#include "ecfp/game.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/partition.hpp"
#include "ecfp/rng.hpp"
#include "support/brute_force.hpp"
#include "support/test_util.hpp"

using namespace ecfp;
using namespace ecfp::testing;

namespace {

Game matching_game() { return Game({2, 2}, {1.0, 0.0, 0.0, 1.0}); }

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("best response value equals the top payoff vector entry") {
  const Game g = matching_game();
  const JointMixedStrategy p = {{0.5, 0.5}, {0.8, 0.2}};
  CHECK(best_response_value(g, 0, p) == 0.8);
  CHECK(best_response_value(g, 1, p) == 0.5);
}

TEST_CASE("best response value matches the enumeration oracle bit for bit") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Game g = random_game(rng, random_shape(rng, 2, 4, 3));
    const JointMixedStrategy p = random_joint(rng, g);
    for (int i = 0; i < g.num_players(); ++i) {
      CHECK(best_response_value(g, i, p) ==
            brute_force_best_response_value(g, i, p));
    }
  }
}

TEST_CASE("per-player optimality: no strategy beats its best response value") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = random_game(rng, random_shape(rng, 2, 4, 3));
    const JointMixedStrategy p = random_joint(rng, g);
    const double u = mixed_utility(g, p);
    for (int i = 0; i < g.num_players(); ++i) {
      CHECK(best_response_value(g, i, p) - u >= -1e-10);
    }
  }
}

TEST_CASE("epsilon best responses collect near-optimal actions, sorted") {
  const Game g({2, 3}, {1.0, 0.2, 0.6,
                        0.0, 0.9, 0.6});
  const JointMixedStrategy p = {{1.0, 0.0}, {0.0, 0.0, 1.0}};
  // player 1 against row 0: payoffs (1.0, 0.2, 0.6)
  CHECK(epsilon_br_actions(g, 1, p, 0.0) == std::vector<int>{0});
  CHECK(epsilon_br_actions(g, 1, p, 0.5) == std::vector<int>{0, 2});
  CHECK(epsilon_br_actions(g, 1, p, 0.85) == std::vector<int>{0, 1, 2});

  BestResponseQuery query;
  query.player = 1;
  query.belief = p;
  query.epsilon = 0.5;
  CHECK(epsilon_br_actions(g, query) == std::vector<int>{0, 2});

  CHECK_THROWS_AS(epsilon_br_actions(g, 1, p, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_br_actions(g, 1, p, 0.0, -1e-12),
                  std::invalid_argument);
}

TEST_CASE("tie tolerance absorbs sub-rounding payoff differences") {
  const Game g({2, 2}, {0.5, 0.5 - 5e-10, 0.0, 0.0});
  const JointMixedStrategy p = {{1.0, 0.0}, {1.0, 0.0}};
  // payoffs for player 1: (0.5, 0.5 - 5e-10); the default tolerance keeps both
  CHECK(epsilon_br_actions(g, 1, p, 0.0) == std::vector<int>{0, 1});
  // a zero tolerance separates them
  CHECK(epsilon_br_actions(g, 1, p, 0.0, 0.0) == std::vector<int>{0});
  CHECK(kDefaultTieTolerance == 1e-9);
}

TEST_CASE("epsilon best response sets grow with epsilon") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const Game g = random_game(rng, random_shape(rng, 2, 4, 4));
    const JointMixedStrategy p = random_joint(rng, g);
    const int i = static_cast<int>(
        uniform_index(rng, static_cast<std::size_t>(g.num_players())));
    const double e1 = uniform_double(rng);
    const double e2 = e1 + uniform_double(rng);
    const std::vector<int> small = epsilon_br_actions(g, i, p, e1);
    const std::vector<int> large = epsilon_br_actions(g, i, p, e2);
    CHECK_FALSE(small.empty());
    CHECK(std::is_sorted(small.begin(), small.end()));
    CHECK(is_subset(small, large));
    // the whole action set at epsilon past the utility range
    const std::vector<int> all =
        epsilon_br_actions(g, i, p, g.utility_range() + 1.0);
    CHECK(static_cast<int>(all.size()) == g.num_actions(i));
  }
}

TEST_CASE("known gaps in the matching game") {
  const Game g = matching_game();
  const Partition both = Partition::single_class(2);

  const JointMixedStrategy mixed_ne = {{0.5, 0.5}, {0.5, 0.5}};
  CHECK(ne_gap(g, mixed_ne) == 0.0);
  CHECK(mce_gap(g, both, mixed_ne) == 0.0);
  CHECK(sne_gap(g, both, mixed_ne) == 0.0);

  const JointMixedStrategy pure_ne = {{1.0, 0.0}, {1.0, 0.0}};
  CHECK(ne_gap(g, pure_ne) == 0.0);
  CHECK(sne_gap(g, both, pure_ne) == 0.0);

  // opposite vertices: each player wants to switch, and the profile is as
  // asymmetric as the simplex allows, yet its centroid supports everything
  const JointMixedStrategy split = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK(ne_gap(g, split) == 1.0);
  CHECK(sne_gap(g, both, split) == 1.0);
  CHECK(mce_gap(g, both, split) == 0.0);
}

TEST_CASE("gaps validate their strategy argument") {
  const Game g = matching_game();
  CHECK_THROWS_AS(ne_gap(g, {{2.0, -1.0}, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ne_gap(g, {{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("sne_gap needs equal action counts inside each class") {
  const Game g({2, 3}, std::vector<double>(6, 0.0));
  const JointMixedStrategy p = {{1.0, 0.0}, {1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(sne_gap(g, Partition::single_class(2), p),
                  std::invalid_argument);
  CHECK_NOTHROW(sne_gap(g, Partition::singletons(2), p));
}

TEST_CASE("gaps are never meaningfully negative") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::symmetric_classes;
    spec.class_sizes = {2 + static_cast<int>(uniform_index(rng, 2))};
    spec.class_actions = {2 + static_cast<int>(uniform_index(rng, 2))};
    spec.seed = rng();
    const GeneratedGame gg = generate_game(spec);

    JointMixedStrategy p = random_joint(rng, gg.game);
    if (trial % 2 == 0) {
      // vertex profiles built from best responses land on or near the
      // zero boundary, where rounding could push a careless max negative
      const JointMixedStrategy bar = centroid(gg.partition, p);
      for (int i = 0; i < gg.game.num_players(); ++i) {
        const std::vector<int> br = epsilon_br_actions(gg.game, i, bar, 0.0, 0.0);
        p[static_cast<std::size_t>(i)] = vertex(gg.game, i, br[0]);
      }
    }
    CHECK(ne_gap(gg.game, p) >= -1e-10);
    CHECK(mce_gap(gg.game, gg.partition, p) >= -1e-10);
    CHECK(sne_gap(gg.game, gg.partition, p) >= -1e-10);
  }
}

TEST_CASE("for class-constant strategies the two gap notions coincide") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::symmetric_classes;
    spec.class_sizes = {2, 1 + static_cast<int>(uniform_index(rng, 2))};
    spec.class_actions = {2, 3};
    spec.seed = rng();
    const GeneratedGame gg = generate_game(spec);
    const JointMixedStrategy p =
        centroid(gg.partition, random_joint(rng, gg.game));
    // p equals its own centroid, so deviating against p and against the
    // centroid are the same computation
    CHECK(mce_gap(gg.game, gg.partition, p) == ne_gap(gg.game, p));
    // and the symmetry penalty vanishes
    CHECK(sne_gap(gg.game, gg.partition, p) == ne_gap(gg.game, p));
  }
}

TEST_CASE("under singleton classes mce_gap reduces to ne_gap") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = random_game(rng, random_shape(rng, 2, 4, 3));
    const Partition part = Partition::singletons(g.num_players());
    const JointMixedStrategy p = random_joint(rng, g);
    const double mce = mce_gap(g, part, p);
    const double ne = ne_gap(g, p);
    CHECK(std::abs(mce - ne) <= 1e-12);
    CHECK(mce == ne);  // the singleton centroid is a bitwise copy
    CHECK(sne_gap(g, part, p) == ne);
  }
}
