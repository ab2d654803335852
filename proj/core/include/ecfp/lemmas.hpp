#ifndef ECFP_LEMMAS_HPP
#define ECFP_LEMMAS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ecfp/game.hpp"
#include "ecfp/partition.hpp"

namespace ecfp {

struct LemmaCheckOptions {
  int trials = 1000;                  // randomized strategy draws per check
  std::int64_t trajectory_steps = 1000;  // length of the recursion check run
  std::uint64_t seed = 0;
};

struct LemmaCheckResult {
  std::string name;
  bool passed = false;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;      // largest residual or drift seen
  double tolerance = 0.0;  // bound enforced (0 for pure pass/fail checks)
};

// Randomized checks of the structural identities the dynamics rely on.
// Each draws its own deterministic stream from options.seed.

// |(1/n) sum_i U(p_i, pbar_{-i}) - U(pbar)| <= 1e-10 over random joint
// strategies.
LemmaCheckResult check_rearrangement_random(const Game& game,
                                            const Partition& partition,
                                            const LemmaCheckOptions& options);

// Players inside the eps-best-response set stay inside it after class
// averaging: verified on random beliefs with each p_i drawn as a convex
// combination of eps-best-response vertices, so the hypothesis holds by
// construction.
LemmaCheckResult check_br_preservation_random(const Game& game,
                                              const Partition& partition,
                                              const LemmaCheckOptions& options);

// The incrementally maintained centroid stays within 1e-9 of the centroid
// recomputed from scratch along a randomized trajectory.
LemmaCheckResult check_centroid_recursion(const Game& game,
                                          const Partition& partition,
                                          const LemmaCheckOptions& options);

std::vector<LemmaCheckResult> run_lemma_checks(const Game& game,
                                               const Partition& partition,
                                               const LemmaCheckOptions& options);

}  // namespace ecfp

#endif  // ECFP_LEMMAS_HPP
