#ifndef ECFP_CONFIG_HPP
#define ECFP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "ecfp/dynamics.hpp"
#include "ecfp/game.hpp"
#include "ecfp/partition.hpp"
#include "ecfp/schedules.hpp"
#include "ecfp/trace.hpp"

namespace ecfp {

enum class Process { fp, ecfp, euler };
enum class InitialAction { zero, uniform };

// Fully resolved experiment: the game and partition are already loaded or
// generated, so a valid config is runnable as-is.
struct ExperimentConfig {
  ExperimentConfig(Game game_in, Partition partition_in)
      : game(std::move(game_in)), partition(std::move(partition_in)) {}

  Game game;
  Partition partition;
  Process process = Process::ecfp;
  StepSizeSchedule gamma = StepSizeSchedule::classical();
  EpsilonSchedule epsilon = EpsilonSchedule::zero();
  SelectionMode selection;
  std::int64_t iterations = 1;
  std::int64_t record_every = 1;
  double euler_h = 0.0;  // meaningful only when process == euler
  InitialAction initial_action = InitialAction::zero;
  double partition_tolerance = 0.0;
  GapThresholds thresholds;
  std::string output;  // empty: keep the trace in memory only
};

// Parses and validates a config file: strict schema (unknown fields
// rejected), range checks, file and generator resolution, and partition
// validation against the game. Every problem is collected and reported in
// one config_error, each message prefixed with its field path. A nonempty
// ECFP_SEED environment variable overrides selection.seed.
ExperimentConfig load_config(const std::string& path);

// Normalized JSON text (inline game, explicit classes); load_config parses
// it back to an equivalent config.
std::string emit_config(const ExperimentConfig& config);

// Runs the configured process for `iterations` states, recording every
// record_every-th state plus the first and last. On an internal failure the
// trace built so far is returned with its error field set.
Trace run_process(const ExperimentConfig& config);

}  // namespace ecfp

#endif  // ECFP_CONFIG_HPP
