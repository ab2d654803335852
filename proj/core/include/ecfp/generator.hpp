#ifndef ECFP_GENERATOR_HPP
#define ECFP_GENERATOR_HPP

#include <cstdint>
#include <vector>

#include "ecfp/game.hpp"
#include "ecfp/partition.hpp"

namespace ecfp {

struct GeneratorSpec {
  enum class Kind { random_identical, symmetric_classes };

  Kind kind = Kind::random_identical;
  // random_identical: one entry per player; the partition is singletons.
  std::vector<int> action_counts;
  // symmetric_classes: class k holds class_sizes[k] consecutive players,
  // each with class_actions[k] actions; the partition groups them.
  std::vector<int> class_sizes;
  std::vector<int> class_actions;
  std::uint64_t seed = 0;
};

struct GeneratedGame {
  Game game;
  Partition partition;
};

// Deterministic in the seed. random_identical fills the tensor with i.i.d.
// uniform[0,1) entries. symmetric_classes assigns one uniform[0,1) value per
// tuple of per-class action histograms, so utilities are bitwise invariant
// under within-class swaps and the emitted partition validates exactly.
GeneratedGame generate_game(const GeneratorSpec& spec);

}  // namespace ecfp

#endif  // ECFP_GENERATOR_HPP
