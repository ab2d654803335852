#include "ecfp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ecfp/config.hpp"
#include "ecfp/equilibrium.hpp"
#include "ecfp/errors.hpp"
#include "ecfp/trace.hpp"

namespace ecfp {
namespace {

// Tie tolerance for the candidate set and slack for the post-hoc check are
// the same value, so a selected vertex can never fail its own verification.
constexpr double kSelectionSlack = 1e-10;
constexpr double kCentroidDriftTolerance = 1e-9;

JointMixedStrategy select_action_impl(const Game& game,
                                      const JointMixedStrategy& belief,
                                      double eps, SelectionVariant variant,
                                      RngStreams* rng) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be nonnegative");
  }
  check_dimensions(game, belief);
  const int n = game.num_players();
  JointMixedStrategy action(static_cast<std::size_t>(n));
  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> pv = payoff_vector(game, i, belief);
    const double best = *std::max_element(pv.begin(), pv.end());
    const double cutoff = best - eps - kSelectionSlack;
    MixedStrategy& ai = action[static_cast<std::size_t>(i)];
    ai.assign(pv.size(), 0.0);
    if (variant == SelectionVariant::exact) {
      std::size_t arg = 0;
      for (std::size_t a = 1; a < pv.size(); ++a) {
        if (pv[a] > pv[arg]) arg = a;
      }
      ai[arg] = 1.0;
    } else {
      candidates.clear();
      for (std::size_t a = 0; a < pv.size(); ++a) {
        if (pv[a] >= cutoff) candidates.push_back(static_cast<int>(a));
      }
      if (variant == SelectionVariant::uniform_eps) {
        const std::size_t pick =
            uniform_index(rng->player(i), candidates.size());
        ai[static_cast<std::size_t>(candidates[pick])] = 1.0;
      } else {
        const double w = 1.0 / static_cast<double>(candidates.size());
        for (int a : candidates) ai[static_cast<std::size_t>(a)] = w;
      }
    }
    // The eps-best-response set is convex, so membership of the emitted
    // component reduces to membership of its support vertices.
    for (std::size_t a = 0; a < ai.size(); ++a) {
      if (ai[a] > 0.0 && !(pv[a] >= cutoff)) {
        std::ostringstream msg;
        msg << "selected action " << a << " for player " << i
            << " fails the eps-best-response check: payoff " << pv[a]
            << " < cutoff " << cutoff;
        throw internal_error(msg.str());
      }
    }
  }
  return action;
}

void check_joint(const Game& game, const JointMixedStrategy& p,
                 const char* what) {
  if (p.size() != static_cast<std::size_t>(game.num_players())) {
    std::ostringstream msg;
    msg << "state field " << what << " has " << p.size()
        << " rows for a game with " << game.num_players() << " players";
    throw internal_error(msg.str());
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const MixedStrategy& row = p[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(game.num_actions(i))) {
      std::ostringstream msg;
      msg << "state field " << what << ", player " << i << ": expected "
          << game.num_actions(i) << " entries, got " << row.size();
      throw internal_error(msg.str());
    }
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= -kSimplexEntrySlack)) {
        std::ostringstream msg;
        msg << "state field " << what << ", player " << i
            << ": entry " << v << " below simplex slack";
        throw internal_error(msg.str());
      }
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= kSimplexSumTolerance)) {
      std::ostringstream msg;
      msg << "state field " << what << ", player " << i << ": mass " << sum
          << " drifted from 1";
      throw internal_error(msg.str());
    }
  }
}

// partition == nullptr skips the centroid consistency check (plain
// fictitious play keeps q_bar = q by construction).
void verify_state(const Game& game, const Partition* partition,
                  const ProcessState& state) {
  check_joint(game, state.q, "q");
  check_joint(game, state.q_bar, "q_bar");
  check_joint(game, state.last_action, "last_action");
  if (partition == nullptr) return;
  const JointMixedStrategy fresh = centroid(*partition, state.q);
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    for (std::size_t a = 0; a < fresh[i].size(); ++a) {
      const double drift = std::abs(fresh[i][a] - state.q_bar[i][a]);
      if (!(drift <= kCentroidDriftTolerance)) {
        std::ostringstream msg;
        msg << "incremental centroid drifted " << drift
            << " from the recomputed centroid at t=" << state.t
            << " (player " << i << ", action " << a << ")";
        throw internal_error(msg.str());
      }
    }
  }
}

void mix_toward(JointMixedStrategy& x, const JointMixedStrategy& target,
                double gamma) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t a = 0; a < x[i].size(); ++a) {
      x[i][a] += gamma * (target[i][a] - x[i][a]);
    }
  }
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
}

}  // namespace

JointMixedStrategy initial_action_zero(const Game& game) {
  JointMixedStrategy a(static_cast<std::size_t>(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i) {
    a[static_cast<std::size_t>(i)] = vertex(game, i, 0);
  }
  return a;
}

JointMixedStrategy initial_action_uniform(const Game& game, RngStreams& rng) {
  JointMixedStrategy a(static_cast<std::size_t>(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i) {
    const std::size_t pick = uniform_index(
        rng.run(), static_cast<std::size_t>(game.num_actions(i)));
    a[static_cast<std::size_t>(i)] = vertex(game, i, static_cast<int>(pick));
  }
  return a;
}

ProcessState ecfp_initial_state(const Game& game, const Partition& partition,
                                const JointMixedStrategy& a1) {
  check_simplex(game, a1);
  ProcessState state;
  state.t = 1;
  state.q = a1;
  state.q_bar = centroid(partition, a1);
  state.last_action = a1;
  verify_state(game, &partition, state);
  return state;
}

ProcessState fp_initial_state(const Game& game, const JointMixedStrategy& a1) {
  check_simplex(game, a1);
  ProcessState state;
  state.t = 1;
  state.q = a1;
  state.q_bar = a1;
  state.last_action = a1;
  verify_state(game, nullptr, state);
  return state;
}

JointMixedStrategy select_action(const Game& game,
                                 const JointMixedStrategy& belief, double eps,
                                 SelectionVariant variant, RngStreams& rng) {
  return select_action_impl(game, belief, eps, variant, &rng);
}

ProcessState advance_ecfp(const Game& game, const Partition& partition,
                          const ProcessState& state, double gamma, double eps,
                          SelectionVariant variant, RngStreams& rng) {
  check_gamma(gamma);
  JointMixedStrategy a =
      select_action_impl(game, state.q_bar, eps, variant, &rng);
  ProcessState next;
  next.t = state.t + 1;
  next.q = state.q;
  mix_toward(next.q, a, gamma);
  // The centroid obeys the same recursion driven by the centroid of the
  // action profile; this is what keeps q_bar consistent without a fresh
  // averaging pass, and verify_state rechecks the agreement.
  const JointMixedStrategy a_bar = centroid(partition, a);
  next.q_bar = state.q_bar;
  mix_toward(next.q_bar, a_bar, gamma);
  next.last_action = std::move(a);
  verify_state(game, &partition, next);
  return next;
}

ProcessState advance_fp(const Game& game, const ProcessState& state,
                        double gamma, double eps, SelectionVariant variant,
                        RngStreams& rng) {
  check_gamma(gamma);
  JointMixedStrategy a = select_action_impl(game, state.q, eps, variant, &rng);
  ProcessState next;
  next.t = state.t + 1;
  next.q = state.q;
  mix_toward(next.q, a, gamma);
  next.q_bar = next.q;
  next.last_action = std::move(a);
  verify_state(game, nullptr, next);
  return next;
}

ProcessState ecfp_step(const Game& game, const Partition& partition,
                       const ProcessState& state, const StepSizeSchedule& gamma,
                       const EpsilonSchedule& eps, const SelectionMode& mode,
                       RngStreams& rng) {
  return advance_ecfp(game, partition, state, gamma_at(gamma, state.t),
                      epsilon_at(eps, state.t), mode.variant, rng);
}

ProcessState fp_step(const Game& game, const ProcessState& state,
                     const StepSizeSchedule& gamma, const EpsilonSchedule& eps,
                     const SelectionMode& mode, RngStreams& rng) {
  return advance_fp(game, state, gamma_at(gamma, state.t),
                    epsilon_at(eps, state.t), mode.variant, rng);
}

ProcessState euler_flow_step(const Game& game, const Partition& partition,
                             const ProcessState& state, double h) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw std::invalid_argument("euler step h must lie in (0, 1]");
  }
  JointMixedStrategy b = select_action_impl(game, state.q_bar, 0.0,
                                            SelectionVariant::exact, nullptr);
  ProcessState next;
  next.t = state.t + 1;
  next.q = state.q;
  mix_toward(next.q, b, h);
  const JointMixedStrategy b_bar = centroid(partition, b);
  next.q_bar = state.q_bar;
  mix_toward(next.q_bar, b_bar, h);
  next.last_action = std::move(b);
  verify_state(game, &partition, next);
  return next;
}

double lyapunov_v(const Game& game, const JointMixedStrategy& q,
                  const JointMixedStrategy& q_bar) {
  const int n = game.num_players();
  JointMixedStrategy joint = q_bar;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    joint[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
    acc += mixed_utility(game, joint);
    joint[static_cast<std::size_t>(i)] = q_bar[static_cast<std::size_t>(i)];
  }
  return acc / static_cast<double>(n);
}

namespace {

TraceRecord make_record(const ExperimentConfig& config,
                        const ProcessState& state) {
  const Game& game = config.game;
  const Partition& part = config.partition;
  TraceRecord r;
  r.t = state.t;
  if (config.process == Process::euler) {
    r.gamma = config.euler_h;
    r.epsilon = 0.0;
  } else {
    r.gamma = gamma_at(config.gamma, state.t);
    r.epsilon = epsilon_at(config.epsilon, state.t);
  }
  // Plain fictitious play does not maintain a meaningful centroid, so the
  // class average is recomputed for its symmetry metrics.
  JointMixedStrategy fp_bar;
  const JointMixedStrategy* bar = &state.q_bar;
  if (config.process == Process::fp) {
    fp_bar = centroid(part, state.q);
    bar = &fp_bar;
  }
  r.ne_gap = ne_gap(game, state.q);
  r.mce_gap = mce_gap(game, part, state.q);
  r.sne_gap = sne_gap(game, part, *bar);
  r.lyapunov_w = mixed_utility(game, *bar);
  r.lyapunov_v = lyapunov_v(game, state.q, *bar);
  return r;
}

}  // namespace

Trace run_process(const ExperimentConfig& config) {
  const Game& game = config.game;
  const Partition& part = config.partition;
  Trace trace;
  try {
    RngStreams rng(config.selection.seed, game.num_players());
    const JointMixedStrategy a1 =
        config.initial_action == InitialAction::uniform
            ? initial_action_uniform(game, rng)
            : initial_action_zero(game);
    ProcessState state = config.process == Process::fp
                             ? fp_initial_state(game, a1)
                             : ecfp_initial_state(game, part, a1);
    trace.records.push_back(make_record(config, state));
    while (state.t < config.iterations) {
      switch (config.process) {
        case Process::fp:
          state = fp_step(game, state, config.gamma, config.epsilon,
                          config.selection, rng);
          break;
        case Process::ecfp:
          state = ecfp_step(game, part, state, config.gamma, config.epsilon,
                            config.selection, rng);
          break;
        case Process::euler:
          state = euler_flow_step(game, part, state, config.euler_h);
          break;
      }
      if ((state.t - 1) % config.record_every == 0 ||
          state.t == config.iterations) {
        trace.records.push_back(make_record(config, state));
      }
    }
  } catch (const std::exception& e) {
    trace.error = e.what();
  }
  return trace;
}

}  // namespace ecfp
