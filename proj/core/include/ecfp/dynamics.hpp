#ifndef ECFP_DYNAMICS_HPP
#define ECFP_DYNAMICS_HPP

#include <cstdint>

#include "ecfp/game.hpp"
#include "ecfp/partition.hpp"
#include "ecfp/rng.hpp"
#include "ecfp/schedules.hpp"

namespace ecfp {

enum class SelectionVariant {
  exact,        // lowest-index exact best response, no randomness
  uniform_eps,  // uniform draw over the epsilon-best-response actions
  mixed_eps,    // deterministic barycenter of the epsilon-best-response actions
};

struct SelectionMode {
  SelectionVariant variant = SelectionVariant::exact;
  std::uint64_t seed = 0;
};

// Snapshot of a running process. q is the per-player empirical distribution,
// q_bar its per-class centroid maintained by the same recursion (the two are
// kept within 1e-9 of each other; divergence aborts the run), last_action the
// profile that produced this state.
struct ProcessState {
  std::int64_t t = 1;
  JointMixedStrategy q;
  JointMixedStrategy q_bar;
  JointMixedStrategy last_action;
};

// Initial joint actions a(1). The process starts from q(1) = a(1).
JointMixedStrategy initial_action_zero(const Game& game);
JointMixedStrategy initial_action_uniform(const Game& game, RngStreams& rng);

ProcessState ecfp_initial_state(const Game& game, const Partition& partition,
                                const JointMixedStrategy& a1);
ProcessState fp_initial_state(const Game& game, const JointMixedStrategy& a1);

// Joint action with each component inside the eps-best-response set against
// the belief. exact ignores the rng; uniform_eps draws one vertex per player
// from that player's stream; mixed_eps mixes the candidate vertices equally.
// Each emitted component is re-verified against payoff_vector with slack
// 1e-10 before being returned.
JointMixedStrategy select_action(const Game& game,
                                 const JointMixedStrategy& belief, double eps,
                                 SelectionVariant variant, RngStreams& rng);

// One transition with explicit step size and perturbation values. The
// returned state has t incremented and all state invariants re-checked.
ProcessState advance_ecfp(const Game& game, const Partition& partition,
                          const ProcessState& state, double gamma, double eps,
                          SelectionVariant variant, RngStreams& rng);
ProcessState advance_fp(const Game& game, const ProcessState& state,
                        double gamma, double eps, SelectionVariant variant,
                        RngStreams& rng);

// Schedule-driven transitions: gamma and eps are evaluated at state.t.
ProcessState ecfp_step(const Game& game, const Partition& partition,
                       const ProcessState& state, const StepSizeSchedule& gamma,
                       const EpsilonSchedule& eps, const SelectionMode& mode,
                       RngStreams& rng);
ProcessState fp_step(const Game& game, const ProcessState& state,
                     const StepSizeSchedule& gamma, const EpsilonSchedule& eps,
                     const SelectionMode& mode, RngStreams& rng);

// Forward Euler step of the continuous-time flow dq/dt = b(q_bar) - q with
// exact best responses; 0 < h <= 1.
ProcessState euler_flow_step(const Game& game, const Partition& partition,
                             const ProcessState& state, double h);

// (1/n) sum_i U(q_i, q_bar_{-i}): the per-player average payoff when each
// player in turn plays its own distribution against the centroid profile.
double lyapunov_v(const Game& game, const JointMixedStrategy& q,
                  const JointMixedStrategy& q_bar);

}  // namespace ecfp

#endif  // ECFP_DYNAMICS_HPP
