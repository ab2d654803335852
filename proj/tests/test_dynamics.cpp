#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ecfp/dynamics.hpp"
#include "ecfp/equilibrium.hpp"
#include "ecfp/errors.hpp"
#include "ecfp/game.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/partition.hpp"
#include "ecfp/rng.hpp"
#include "ecfp/schedules.hpp"
#include "support/test_util.hpp"

using namespace ecfp;
using namespace ecfp::testing;

namespace {

Game matching_game() { return Game({2, 2}, {1.0, 0.0, 0.0, 1.0}); }

GeneratedGame two_class_instance(std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::symmetric_classes;
  spec.class_sizes = {2, 2};
  spec.class_actions = {2, 3};
  spec.seed = seed;
  return generate_game(spec);
}

double sup_distance(const JointMixedStrategy& a, const JointMixedStrategy& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t x = 0; x < a[i].size(); ++x) {
      d = std::max(d, std::abs(a[i][x] - b[i][x]));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("initial actions: all-zero vertices or seeded uniform vertices") {
  const Game g({2, 3}, std::vector<double>(6, 0.0));
  const JointMixedStrategy zero = initial_action_zero(g);
  CHECK(zero == JointMixedStrategy{{1.0, 0.0}, {1.0, 0.0, 0.0}});

  RngStreams r1(5, 2);
  RngStreams r2(5, 2);
  const JointMixedStrategy u1 = initial_action_uniform(g, r1);
  const JointMixedStrategy u2 = initial_action_uniform(g, r2);
  CHECK(u1 == u2);  // same seed, same draw
  check_simplex(g, u1);
  for (const auto& row : u1) {
    int ones = 0;
    for (double x : row) ones += (x == 1.0);
    CHECK(ones == 1);  // a vertex
  }

  // across seeds, more than one joint action appears
  std::set<int> seen;
  for (std::uint64_t s = 0; s < 64; ++s) {
    RngStreams r(s, 2);
    const JointMixedStrategy a = initial_action_uniform(g, r);
    int code = 0;
    for (const auto& row : a) {
      for (std::size_t x = 0; x < row.size(); ++x) {
        if (row[x] == 1.0) code = code * 4 + static_cast<int>(x);
      }
    }
    seen.insert(code);
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("initial states copy the first action and its centroid") {
  const GeneratedGame gg = two_class_instance(101);
  const JointMixedStrategy a1 = initial_action_zero(gg.game);

  const ProcessState e = ecfp_initial_state(gg.game, gg.partition, a1);
  CHECK(e.t == 1);
  CHECK(e.q == a1);
  CHECK(e.q_bar == centroid(gg.partition, a1));
  CHECK(e.last_action == a1);

  const ProcessState f = fp_initial_state(gg.game, a1);
  CHECK(f.q == a1);
  CHECK(f.q_bar == a1);  // no averaging in plain fictitious play

  JointMixedStrategy bad = a1;
  bad[0][0] = 2.0;
  CHECK_THROWS_AS(ecfp_initial_state(gg.game, gg.partition, bad),
                  std::invalid_argument);
}

TEST_CASE("exact selection takes the lowest-index best response, no rng") {
  const Game g({2, 3}, {0.3, 0.9, 0.9,
                        0.1, 0.2, 0.3});
  const JointMixedStrategy belief = {{1.0, 0.0}, {1.0, 0.0, 0.0}};
  RngStreams r1(9, 2);
  RngStreams r2(9, 2);

  const JointMixedStrategy a =
      select_action(g, belief, 0.0, SelectionVariant::exact, r1);
  // player 1 sees payoffs (0.3, 0.9, 0.9): index 1 wins the tie
  CHECK(a[1] == MixedStrategy{0.0, 1.0, 0.0});
  // epsilon does not alter exact selection
  CHECK(select_action(g, belief, 0.7, SelectionVariant::exact, r1) == a);

  // both engines must still be in lockstep after exact selections
  CHECK(r1.run()() == r2.run()());
  CHECK(r1.player(0)() == r2.player(0)());
  CHECK(r1.player(1)() == r2.player(1)());
}

TEST_CASE("mixed selection is the barycenter of the candidate actions") {
  const Game g({2, 3}, {0.3, 0.9, 0.9,
                        0.1, 0.2, 0.3});
  const JointMixedStrategy belief = {{1.0, 0.0}, {1.0, 0.0, 0.0}};
  RngStreams rng(9, 2);
  const JointMixedStrategy a =
      select_action(g, belief, 0.0, SelectionVariant::mixed_eps, rng);
  CHECK(a[1] == MixedStrategy{0.0, 0.5, 0.5});
  const JointMixedStrategy b =
      select_action(g, belief, 0.65, SelectionVariant::mixed_eps, rng);
  CHECK(b[1] == MixedStrategy{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
}

TEST_CASE("uniform selection reaches every candidate across seeds") {
  const Game g({2, 3}, {0.3, 0.9, 0.9,
                        0.1, 0.2, 0.3});
  const JointMixedStrategy belief = {{0.5, 0.5}, {0.2, 0.3, 0.5}};
  const double eps = g.utility_range() + 1.0;  // all actions qualify
  std::set<int> seen0;
  std::set<int> seen1;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RngStreams rng(seed, 2);
    const JointMixedStrategy a =
        select_action(g, belief, eps, SelectionVariant::uniform_eps, rng);
    for (int x = 0; x < 2; ++x) {
      if (a[0][static_cast<std::size_t>(x)] == 1.0) seen0.insert(x);
    }
    for (int x = 0; x < 3; ++x) {
      if (a[1][static_cast<std::size_t>(x)] == 1.0) seen1.insert(x);
    }
  }
  CHECK(seen0.size() == 2);
  CHECK(seen1.size() == 3);
}

TEST_CASE("every emitted action is an admissible epsilon best response") {
  std::mt19937_64 meta(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = random_game(meta, random_shape(meta, 2, 4, 4));
    const JointMixedStrategy belief = random_joint(meta, g);
    const double eps = uniform_double(meta) * 0.5;
    const auto variant = static_cast<SelectionVariant>(trial % 3);
    RngStreams rng(meta(), g.num_players());
    const JointMixedStrategy a = select_action(g, belief, eps, variant, rng);
    check_simplex(g, a);
    for (int i = 0; i < g.num_players(); ++i) {
      const std::vector<double> pv = payoff_vector(g, i, belief);
      double best = pv[0];
      for (double v : pv) best = std::max(best, v);
      for (std::size_t x = 0; x < pv.size(); ++x) {
        if (a[static_cast<std::size_t>(i)][x] > 0.0) {
          CHECK(pv[x] >= best - eps - 1e-10);
        }
      }
    }
  }
  const Game g = matching_game();
  RngStreams rng(1, 2);
  CHECK_THROWS_AS(select_action(g, {{1.0, 0.0}, {1.0, 0.0}}, -0.01,
                                SelectionVariant::exact, rng),
                  std::invalid_argument);
}

TEST_CASE("a zero step leaves the empirical state untouched") {
  const GeneratedGame gg = two_class_instance(102);
  RngStreams rng(3, gg.game.num_players());
  const ProcessState s0 =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  const ProcessState s1 = advance_ecfp(gg.game, gg.partition, s0, 0.0, 0.1,
                                       SelectionVariant::uniform_eps, rng);
  CHECK(s1.t == 2);
  CHECK(s1.q == s0.q);
  CHECK(s1.q_bar == s0.q_bar);

  CHECK_THROWS_AS(advance_ecfp(gg.game, gg.partition, s0, -0.1, 0.0,
                               SelectionVariant::exact, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(advance_ecfp(gg.game, gg.partition, s0, 1.1, 0.0,
                               SelectionVariant::exact, rng),
                  std::invalid_argument);
}

TEST_CASE("repeating the first action keeps the average there exactly") {
  const Game g = matching_game();
  RngStreams rng(1, 2);
  // action (0,0) is a strict equilibrium of the matching game, so exact
  // selection repeats it and the running average never moves
  ProcessState s = fp_initial_state(g, initial_action_zero(g));
  for (int step = 0; step < 5; ++step) {
    s = advance_fp(g, s, 1.0 / static_cast<double>(s.t + 1), 0.0,
                   SelectionVariant::exact, rng);
    CHECK(s.q == JointMixedStrategy{{1.0, 0.0}, {1.0, 0.0}});
  }
  CHECK(s.t == 6);
}

TEST_CASE("schedule-driven steps equal explicit-value steps") {
  const GeneratedGame gg = two_class_instance(103);
  const StepSizeSchedule gamma = StepSizeSchedule::power(0.7, 2.0);
  const EpsilonSchedule eps = EpsilonSchedule::power(0.5, 1.0);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;

  RngStreams r1(77, gg.game.num_players());
  RngStreams r2(77, gg.game.num_players());
  ProcessState a =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  ProcessState b = a;
  for (int step = 0; step < 10; ++step) {
    a = ecfp_step(gg.game, gg.partition, a, gamma, eps, mode, r1);
    b = advance_ecfp(gg.game, gg.partition, b, gamma_at(gamma, b.t),
                     epsilon_at(eps, b.t), mode.variant, r2);
    CHECK(a.q == b.q);
    CHECK(a.q_bar == b.q_bar);
    CHECK(a.last_action == b.last_action);
  }
}

TEST_CASE("classical steps reproduce the running average of play") {
  const GeneratedGame gg = two_class_instance(104);
  const int n = gg.game.num_players();
  RngStreams rng(11, n);
  const StepSizeSchedule gamma = StepSizeSchedule::classical();
  const EpsilonSchedule eps = EpsilonSchedule::power(1.0, 1.0);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;

  ProcessState s =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  JointMixedStrategy sum = s.last_action;
  const std::int64_t T = 100000;
  while (s.t < T) {
    s = ecfp_step(gg.game, gg.partition, s, gamma, eps, mode, rng);
    for (int i = 0; i < n; ++i) {
      for (std::size_t x = 0; x < sum[static_cast<std::size_t>(i)].size(); ++x) {
        sum[static_cast<std::size_t>(i)][x] +=
            s.last_action[static_cast<std::size_t>(i)][x];
      }
    }
  }
  JointMixedStrategy avg = sum;
  for (auto& row : avg) {
    for (double& x : row) x /= static_cast<double>(T);
  }
  CHECK(sup_distance(s.q, avg) <= 1e-9);
}

TEST_CASE("the maintained centroid tracks the recomputed centroid") {
  const GeneratedGame gg = two_class_instance(105);
  RngStreams rng(13, gg.game.num_players());
  const StepSizeSchedule gamma = StepSizeSchedule::power(0.6, 0.0);
  const EpsilonSchedule eps = EpsilonSchedule::power(1.0, 0.7);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;

  ProcessState s =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  for (int step = 0; step < 1000; ++step) {
    s = ecfp_step(gg.game, gg.partition, s, gamma, eps, mode, rng);
    CHECK(sup_distance(s.q_bar, centroid(gg.partition, s.q)) <= 1e-9);
    check_simplex(gg.game, s.q);
    check_simplex(gg.game, s.q_bar);
  }
}

TEST_CASE("a corrupted centroid is rejected on the next step") {
  const GeneratedGame gg = two_class_instance(106);
  RngStreams rng(1, gg.game.num_players());
  ProcessState s =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  // swap two entries: still a simplex point, no longer the centroid
  std::swap(s.q_bar[0][0], s.q_bar[0][1]);
  CHECK_THROWS_AS(advance_ecfp(gg.game, gg.partition, s, 0.5, 0.0,
                               SelectionVariant::exact, rng),
                  internal_error);
}

TEST_CASE("under singleton classes the centroid process is fictitious play") {
  std::mt19937_64 meta(42);
  const Game g = random_game(meta, {2, 3, 2});
  const Partition part = Partition::singletons(3);
  const StepSizeSchedule gamma = StepSizeSchedule::power(0.8, 1.0);
  const EpsilonSchedule eps = EpsilonSchedule::power(1.0, 1.0);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;

  RngStreams re(21, 3);
  RngStreams rf(21, 3);
  ProcessState e = ecfp_initial_state(g, part, initial_action_zero(g));
  ProcessState f = fp_initial_state(g, initial_action_zero(g));
  for (int step = 0; step < 2000; ++step) {
    e = ecfp_step(g, part, e, gamma, eps, mode, re);
    f = fp_step(g, f, gamma, eps, mode, rf);
    CHECK(e.q == f.q);
    CHECK(e.q_bar == f.q);
    CHECK(e.last_action == f.last_action);
  }
}

TEST_CASE("flow steps: validation, fixed points, and improvement") {
  const Game g = matching_game();
  const Partition part = Partition::single_class(2);
  ProcessState s = ecfp_initial_state(g, part, initial_action_zero(g));

  CHECK_THROWS_AS(euler_flow_step(g, part, s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(euler_flow_step(g, part, s, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(euler_flow_step(g, part, s, 1.5), std::invalid_argument);

  // (0,0) is a strict symmetric equilibrium: the field vanishes there
  const ProcessState fixed = euler_flow_step(g, part, s, 0.25);
  CHECK(fixed.q == s.q);
  CHECK(fixed.q_bar == s.q_bar);
  CHECK(fixed.t == 2);

  // off equilibrium the shared utility climbs
  ProcessState drift = s;
  drift.q = {{0.9, 0.1}, {0.9, 0.1}};
  drift.q_bar = centroid(part, drift.q);
  double w = mixed_utility(g, drift.q_bar);
  for (int step = 0; step < 200; ++step) {
    drift = euler_flow_step(g, part, drift, 0.01);
    const double w_next = mixed_utility(g, drift.q_bar);
    CHECK(w_next > w);
    w = w_next;
  }
  CHECK(w > 0.97);
}

TEST_CASE("flow steps never lose more than the discretization bound") {
  std::mt19937_64 meta(43);
  const double h = 1e-3;
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = random_game(meta, random_shape(meta, 2, 4, 3));
    const Partition part = Partition::singletons(g.num_players());
    const double k = static_cast<double>(g.num_players()) *
                     static_cast<double>(g.num_players()) * g.utility_range();
    ProcessState s = ecfp_initial_state(g, part, initial_action_zero(g));
    double w = mixed_utility(g, s.q_bar);
    for (int step = 0; step < 500; ++step) {
      s = euler_flow_step(g, part, s, h);
      const double w_next = mixed_utility(g, s.q_bar);
      CHECK(w_next >= w - k * h * h);
      w = w_next;
    }
  }
}

TEST_CASE("the two Lyapunov readings of the shared utility agree") {
  const Game g = matching_game();
  const Partition part = Partition::single_class(2);
  const JointMixedStrategy q = {{1.0, 0.0}, {0.0, 1.0}};
  const JointMixedStrategy bar = centroid(part, q);
  CHECK(lyapunov_v(g, q, bar) == 0.5);
  CHECK(mixed_utility(g, bar) == 0.5);

  const GeneratedGame gg = two_class_instance(107);
  RngStreams rng(17, gg.game.num_players());
  const StepSizeSchedule gamma = StepSizeSchedule::classical();
  const EpsilonSchedule eps = EpsilonSchedule::power(1.0, 1.0);
  SelectionMode mode;
  mode.variant = SelectionVariant::uniform_eps;
  ProcessState s =
      ecfp_initial_state(gg.game, gg.partition, initial_action_zero(gg.game));
  for (int step = 0; step < 200; ++step) {
    s = ecfp_step(gg.game, gg.partition, s, gamma, eps, mode, rng);
    const double v = lyapunov_v(gg.game, s.q, s.q_bar);
    const double w = mixed_utility(gg.game, s.q_bar);
    CHECK(std::abs(v - w) <= 1e-10);
  }
}
