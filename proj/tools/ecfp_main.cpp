// Command-line driver: validate and run experiment configs, evaluate
// equilibrium gaps, run the randomized identity checks, and generate games.
// Exit codes: 0 success, 1 validation failure, 2 runtime error.
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ecfp/config.hpp"
#include "ecfp/equilibrium.hpp"
#include "ecfp/errors.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/io.hpp"
#include "ecfp/lemmas.hpp"
#include "ecfp/trace.hpp"

namespace {

ecfp::TraceFormat format_for_path(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return ecfp::TraceFormat::json;
  }
  return ecfp::TraceFormat::csv;
}

const char* process_name(ecfp::Process process) {
  switch (process) {
    case ecfp::Process::fp:
      return "fp";
    case ecfp::Process::ecfp:
      return "ecfp";
    case ecfp::Process::euler:
      return "euler";
  }
  return "?";
}

void print_config_summary(const ecfp::ExperimentConfig& config) {
  std::printf("process: %s\n", process_name(config.process));
  std::printf("players: %d\n", config.game.num_players());
  std::printf("profiles: %lld\n",
              static_cast<long long>(config.game.num_profiles()));
  std::printf("classes: %d\n", config.partition.num_classes());
  std::printf("iterations: %lld\n",
              static_cast<long long>(config.iterations));
}

int run_validate(const std::string& config_path) {
  const ecfp::ExperimentConfig config = ecfp::load_config(config_path);
  std::printf("config ok: %s\n", config_path.c_str());
  print_config_summary(config);
  return 0;
}

void print_crossing(const char* name, double threshold, bool converged,
                    long long first_crossing) {
  if (converged) {
    std::printf("%s threshold %g: crossed at t=%lld\n", name, threshold,
                first_crossing);
  } else {
    std::printf("%s threshold %g: not crossed\n", name, threshold);
  }
}

int run_run(const std::string& config_path) {
  const ecfp::ExperimentConfig config = ecfp::load_config(config_path);
  const ecfp::Trace trace = ecfp::run_process(config);
  if (!config.output.empty()) {
    ecfp::emit_trace(trace, config.output, format_for_path(config.output));
    std::printf("trace written to %s (%zu records)\n", config.output.c_str(),
                trace.records.size());
  }
  if (!trace.error.empty()) {
    std::fprintf(stderr, "run aborted: %s\n", trace.error.c_str());
    return 2;
  }
  const ecfp::ConvergenceReport report =
      ecfp::summarize(trace, config.thresholds);
  std::printf("records: %zu\n", trace.records.size());
  std::printf("final ne_gap: %.6g\n", report.final_ne_gap);
  std::printf("final mce_gap: %.6g (min %.6g)\n", report.final_mce_gap,
              report.min_mce_gap);
  std::printf("final sne_gap: %.6g (min %.6g)\n", report.final_sne_gap,
              report.min_sne_gap);
  print_crossing("ne", config.thresholds.ne, report.ne_converged,
                 static_cast<long long>(report.ne_first_crossing));
  print_crossing("mce", config.thresholds.mce, report.mce_converged,
                 static_cast<long long>(report.mce_first_crossing));
  print_crossing("sne", config.thresholds.sne, report.sne_converged,
                 static_cast<long long>(report.sne_first_crossing));
  return 0;
}

int run_gaps(const std::string& game_path, const std::string& partition_path,
             const std::string& strategy_path) {
  const ecfp::Game game = ecfp::load_game(game_path);
  const ecfp::Partition partition =
      ecfp::load_partition(partition_path, game.num_players());
  const ecfp::JointMixedStrategy p = ecfp::load_strategy(strategy_path);
  std::printf("ne_gap: %.17g\n", ecfp::ne_gap(game, p));
  std::printf("mce_gap: %.17g\n", ecfp::mce_gap(game, partition, p));
  std::printf("sne_gap: %.17g\n", ecfp::sne_gap(game, partition, p));
  return 0;
}

int run_lemmas(const std::string& game_path, const std::string& partition_path,
               const ecfp::LemmaCheckOptions& options) {
  const ecfp::Game game = ecfp::load_game(game_path);
  const ecfp::Partition partition =
      ecfp::load_partition(partition_path, game.num_players());
  bool all_passed = true;
  for (const ecfp::LemmaCheckResult& r :
       ecfp::run_lemma_checks(game, partition, options)) {
    if (r.tolerance > 0.0) {
      std::printf("%s: %s (%d trials, worst %.3g, bound %g)\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.trials, r.worst, r.tolerance);
    } else {
      std::printf("%s: %s (%d trials, %d failures)\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.trials, r.failures);
    }
    all_passed = all_passed && r.passed;
  }
  std::printf(all_passed ? "all checks passed\n" : "checks FAILED\n");
  return all_passed ? 0 : 1;
}

int run_generate(const std::string& spec_path, const std::string& out_path) {
  const ecfp::GeneratorSpec spec = ecfp::load_generator_spec(spec_path);
  const ecfp::GeneratedGame generated = ecfp::generate_game(spec);
  ecfp::save_game_bundle(generated.game, generated.partition, out_path);
  std::printf("wrote %s (%d players, %lld profiles, %d classes)\n",
              out_path.c_str(), generated.game.num_players(),
              static_cast<long long>(generated.game.num_profiles()),
              generated.partition.num_classes());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"empirical centroid fictitious play toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string game_path;
  std::string partition_path;
  std::string strategy_path;
  std::string spec_path;
  std::string out_path;
  ecfp::LemmaCheckOptions lemma_options;

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check a config file and report all "
                                     "problems");
  validate_cmd->add_option("config", config_path, "config JSON path")
      ->required();

  CLI::App* run_cmd =
      app.add_subcommand("run", "run the configured process and summarize "
                                "convergence");
  run_cmd->add_option("config", config_path, "config JSON path")->required();

  CLI::App* gaps_cmd =
      app.add_subcommand("gaps", "evaluate equilibrium gaps for a strategy "
                                 "profile");
  gaps_cmd->add_option("game", game_path, "game JSON path")->required();
  gaps_cmd->add_option("partition", partition_path, "partition JSON path")
      ->required();
  gaps_cmd->add_option("strategy", strategy_path, "strategy JSON path")
      ->required();

  CLI::App* lemmas_cmd =
      app.add_subcommand("lemmas", "randomized structural identity checks");
  lemmas_cmd->add_option("game", game_path, "game JSON path")->required();
  lemmas_cmd->add_option("partition", partition_path, "partition JSON path")
      ->required();
  lemmas_cmd->add_option("--trials", lemma_options.trials,
                         "randomized draws per check");
  lemmas_cmd->add_option("--recursion-steps", lemma_options.trajectory_steps,
                         "trajectory length for the recursion check");
  lemmas_cmd->add_option("--seed", lemma_options.seed, "master seed");

  CLI::App* generate_cmd =
      app.add_subcommand("generate", "generate a game bundle from a "
                                     "generator spec");
  generate_cmd->add_option("spec", spec_path, "generator spec JSON path")
      ->required();
  generate_cmd->add_option("-o,--output", out_path, "bundle output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*validate_cmd) return run_validate(config_path);
    if (*run_cmd) return run_run(config_path);
    if (*gaps_cmd) return run_gaps(game_path, partition_path, strategy_path);
    if (*lemmas_cmd) return run_lemmas(game_path, partition_path,
                                       lemma_options);
    if (*generate_cmd) return run_generate(spec_path, out_path);
  } catch (const ecfp::config_error& e) {
    for (const std::string& problem : e.errors()) {
      std::fprintf(stderr, "error: %s\n", problem.c_str());
    }
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ecfp::internal_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
