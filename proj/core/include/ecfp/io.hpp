#ifndef ECFP_IO_HPP
#define ECFP_IO_HPP

#include <string>

#include "ecfp/game.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/partition.hpp"

namespace ecfp {

// JSON file formats (the loaders also accept each object wrapped in a
// bundle {"game": ..., "partition": ...} as written by save_game_bundle):
//   game:      {"players": n, "actions": [m_0, ...], "utility": [flat row-major]}
//   partition: {"classes": [[player indices], ...]}   (0-based)
//   strategy:  {"strategies": [[p_0(0), ...], ...]}
//   generator: {"kind": "random_identical", "actions": [...], "seed": s}
//            | {"kind": "symmetric_classes", "class_sizes": [...],
//               "class_actions": [...], "seed": s}
// Unknown members are rejected. Loaders throw std::invalid_argument on
// schema violations and std::runtime_error on I/O failures.

Game load_game(const std::string& path);
Partition load_partition(const std::string& path, int num_players);
JointMixedStrategy load_strategy(const std::string& path);
GeneratorSpec load_generator_spec(const std::string& path);

void save_game_bundle(const Game& game, const Partition& partition,
                      const std::string& path);

}  // namespace ecfp

#endif  // ECFP_IO_HPP
