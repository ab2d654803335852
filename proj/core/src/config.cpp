#include "ecfp/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfp/errors.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/io.hpp"
#include "json_util.hpp"

namespace ecfp {
namespace {

using nlohmann::json;

// Parsing is error-collecting: each helper records problems under the
// field's path and returns nullopt instead of throwing, so one pass reports
// everything wrong with a file.
struct Collector {
  std::vector<std::string> errors;

  void add(const std::string& path, const std::string& what) {
    errors.push_back(path + ": " + what);
  }
};

bool is_integer(const json& v) {
  return v.is_number_integer() || v.is_number_unsigned();
}

std::optional<std::int64_t> get_integer(const json& v, const std::string& path,
                                        Collector& out) {
  if (!is_integer(v)) {
    out.add(path, "expected an integer");
    return std::nullopt;
  }
  return v.get<std::int64_t>();
}

std::optional<double> get_number(const json& v, const std::string& path,
                                 Collector& out) {
  if (!v.is_number()) {
    out.add(path, "expected a number");
    return std::nullopt;
  }
  return v.get<double>();
}

std::optional<std::string> get_string(const json& v, const std::string& path,
                                      Collector& out) {
  if (!v.is_string()) {
    out.add(path, "expected a string");
    return std::nullopt;
  }
  return v.get<std::string>();
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& path, Collector& out) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) out.add(path + "." + item.key(), "unknown field");
  }
}

struct GameSection {
  std::optional<Game> game;
  std::optional<Partition> generated_partition;
};

GameSection parse_game_section(const json& j, Collector& out) {
  GameSection section;
  if (!j.is_object()) {
    out.add("game", "expected an object with exactly one of "
                    "\"file\", \"inline\", \"generator\"");
    return section;
  }
  reject_unknown(j, {"file", "inline", "generator"}, "game", out);
  const int sources = static_cast<int>(j.contains("file")) +
                      static_cast<int>(j.contains("inline")) +
                      static_cast<int>(j.contains("generator"));
  if (sources != 1) {
    out.add("game", "expected exactly one of \"file\", \"inline\", "
                    "\"generator\"");
    return section;
  }
  try {
    if (j.contains("file")) {
      if (auto path = get_string(j["file"], "game.file", out)) {
        section.game = load_game(*path);
      }
    } else if (j.contains("inline")) {
      section.game = detail::game_from_json(j["inline"], "game.inline");
    } else {
      const GeneratorSpec spec =
          detail::generator_spec_from_json(j["generator"], "game.generator");
      GeneratedGame generated = generate_game(spec);
      section.game = std::move(generated.game);
      section.generated_partition = std::move(generated.partition);
    }
  } catch (const std::exception& e) {
    out.add("game", e.what());
  }
  return section;
}

std::optional<Partition> parse_partition_section(const json& j,
                                                 const std::optional<Game>& game,
                                                 Collector& out) {
  if (!j.is_object()) {
    out.add("partition", "expected an object with \"classes\" or \"file\"");
    return std::nullopt;
  }
  reject_unknown(j, {"classes", "file"}, "partition", out);
  const int sources = static_cast<int>(j.contains("classes")) +
                      static_cast<int>(j.contains("file"));
  if (sources != 1) {
    out.add("partition", "expected exactly one of \"classes\", \"file\"");
    return std::nullopt;
  }
  if (!game.has_value()) return std::nullopt;  // game errors already recorded
  try {
    if (j.contains("file")) {
      if (auto path = get_string(j["file"], "partition.file", out)) {
        return load_partition(*path, game->num_players());
      }
      return std::nullopt;
    }
    return detail::partition_from_json(j, game->num_players(), "partition");
  } catch (const std::exception& e) {
    out.add("partition", e.what());
    return std::nullopt;
  }
}

std::optional<StepSizeSchedule> parse_gamma(const json& j, Collector& out) {
  if (!j.is_object()) {
    out.add("schedules.gamma", "expected an object");
    return std::nullopt;
  }
  const auto family_it = j.find("family");
  if (family_it == j.end()) {
    out.add("schedules.gamma.family", "missing");
    return std::nullopt;
  }
  const auto family = get_string(*family_it, "schedules.gamma.family", out);
  if (!family) return std::nullopt;
  if (*family == "classical") {
    reject_unknown(j, {"family"}, "schedules.gamma", out);
    return StepSizeSchedule::classical();
  }
  if (*family != "power") {
    out.add("schedules.gamma.family",
            "expected \"classical\" or \"power\"");
    return std::nullopt;
  }
  reject_unknown(j, {"family", "rho", "t0"}, "schedules.gamma", out);
  if (!j.contains("rho")) {
    out.add("schedules.gamma.rho", "missing");
    return std::nullopt;
  }
  const auto rho = get_number(j["rho"], "schedules.gamma.rho", out);
  double t0 = 0.0;
  if (j.contains("t0")) {
    if (auto v = get_number(j["t0"], "schedules.gamma.t0", out)) t0 = *v;
    else return std::nullopt;
  }
  if (!rho) return std::nullopt;
  bool ok = true;
  if (!(*rho > 0.0 && *rho <= 1.0)) {
    out.add("schedules.gamma.rho", "must lie in (0, 1]");
    ok = false;
  }
  if (!(t0 >= 0.0)) {
    out.add("schedules.gamma.t0", "must be >= 0");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return StepSizeSchedule::power(*rho, t0);
}

std::optional<EpsilonSchedule> parse_epsilon(const json& j, Collector& out) {
  if (!j.is_object()) {
    out.add("schedules.epsilon", "expected an object");
    return std::nullopt;
  }
  const auto family_it = j.find("family");
  if (family_it == j.end()) {
    out.add("schedules.epsilon.family", "missing");
    return std::nullopt;
  }
  const auto family = get_string(*family_it, "schedules.epsilon.family", out);
  if (!family) return std::nullopt;
  if (*family == "zero") {
    reject_unknown(j, {"family"}, "schedules.epsilon", out);
    return EpsilonSchedule::zero();
  }
  if (*family != "power") {
    out.add("schedules.epsilon.family", "expected \"zero\" or \"power\"");
    return std::nullopt;
  }
  reject_unknown(j, {"family", "scale", "beta"}, "schedules.epsilon", out);
  bool ok = true;
  if (!j.contains("scale")) {
    out.add("schedules.epsilon.scale", "missing");
    ok = false;
  }
  if (!j.contains("beta")) {
    out.add("schedules.epsilon.beta", "missing");
    ok = false;
  }
  if (!ok) return std::nullopt;
  const auto scale = get_number(j["scale"], "schedules.epsilon.scale", out);
  const auto beta = get_number(j["beta"], "schedules.epsilon.beta", out);
  if (!scale || !beta) return std::nullopt;
  if (!(*scale >= 0.0)) {
    out.add("schedules.epsilon.scale", "must be >= 0");
    ok = false;
  }
  if (!(*beta > 0.0)) {
    out.add("schedules.epsilon.beta", "must be > 0");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return EpsilonSchedule::power(*scale, *beta);
}

std::optional<SelectionMode> parse_selection(const json& j, Collector& out) {
  if (!j.is_object()) {
    out.add("selection", "expected an object");
    return std::nullopt;
  }
  reject_unknown(j, {"mode", "seed"}, "selection", out);
  SelectionMode mode;
  bool ok = true;
  if (j.contains("mode")) {
    if (auto name = get_string(j["mode"], "selection.mode", out)) {
      if (*name == "exact") {
        mode.variant = SelectionVariant::exact;
      } else if (*name == "uniform_eps") {
        mode.variant = SelectionVariant::uniform_eps;
      } else if (*name == "mixed_eps") {
        mode.variant = SelectionVariant::mixed_eps;
      } else {
        out.add("selection.mode",
                "expected \"exact\", \"uniform_eps\", or \"mixed_eps\"");
        ok = false;
      }
    } else {
      ok = false;
    }
  }
  if (j.contains("seed")) {
    if (auto seed = get_integer(j["seed"], "selection.seed", out)) {
      if (*seed < 0) {
        out.add("selection.seed", "must be >= 0");
        ok = false;
      } else {
        mode.seed = static_cast<std::uint64_t>(*seed);
      }
    } else {
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return mode;
}

void parse_thresholds(const json& j, GapThresholds& thresholds,
                      Collector& out) {
  if (!j.is_object()) {
    out.add("thresholds", "expected an object");
    return;
  }
  reject_unknown(j, {"ne", "mce", "sne"}, "thresholds", out);
  const auto apply = [&](const char* name, double& slot) {
    if (!j.contains(name)) return;
    const std::string path = std::string("thresholds.") + name;
    if (auto v = get_number(j[name], path, out)) {
      if (!(*v >= 0.0)) {
        out.add(path, "must be >= 0");
      } else {
        slot = *v;
      }
    }
  };
  apply("ne", thresholds.ne);
  apply("mce", thresholds.mce);
  apply("sne", thresholds.sne);
}

std::optional<std::uint64_t> seed_override(Collector& out) {
  const char* raw = std::getenv("ECFP_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0') {
    out.add("ECFP_SEED", "must be an unsigned integer");
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  const json j = detail::read_json_file(path);
  Collector out;
  if (!j.is_object()) {
    throw config_error({"config: expected a JSON object"});
  }
  reject_unknown(j,
                 {"game", "partition", "process", "schedules", "selection",
                  "iterations", "record_every", "euler_h", "initial_action",
                  "partition_tolerance", "thresholds", "output"},
                 "config", out);

  GameSection game_section;
  if (j.contains("game")) {
    game_section = parse_game_section(j["game"], out);
  } else {
    out.add("game", "missing");
  }

  std::optional<Partition> partition;
  if (game_section.generated_partition.has_value()) {
    if (j.contains("partition")) {
      out.add("partition",
              "must be omitted when game.generator is used (the generator "
              "supplies it)");
    } else {
      partition = std::move(game_section.generated_partition);
    }
  } else if (j.contains("partition")) {
    partition = parse_partition_section(j["partition"], game_section.game, out);
  } else if (game_section.game.has_value()) {
    out.add("partition", "missing");
  }

  Process process = Process::ecfp;
  bool have_process = false;
  if (j.contains("process")) {
    if (auto name = get_string(j["process"], "process", out)) {
      if (*name == "fp") {
        process = Process::fp;
        have_process = true;
      } else if (*name == "ecfp") {
        process = Process::ecfp;
        have_process = true;
      } else if (*name == "euler") {
        process = Process::euler;
        have_process = true;
      } else {
        out.add("process", "expected \"fp\", \"ecfp\", or \"euler\"");
      }
    }
  } else {
    out.add("process", "missing");
  }

  StepSizeSchedule gamma = StepSizeSchedule::classical();
  EpsilonSchedule epsilon = EpsilonSchedule::zero();
  if (j.contains("schedules")) {
    const json& schedules = j["schedules"];
    if (!schedules.is_object()) {
      out.add("schedules", "expected an object");
    } else {
      reject_unknown(schedules, {"gamma", "epsilon"}, "schedules", out);
      if (schedules.contains("gamma")) {
        if (auto s = parse_gamma(schedules["gamma"], out)) gamma = *s;
      }
      if (schedules.contains("epsilon")) {
        if (auto s = parse_epsilon(schedules["epsilon"], out)) epsilon = *s;
      }
    }
  }

  SelectionMode selection;
  if (j.contains("selection")) {
    if (auto s = parse_selection(j["selection"], out)) selection = *s;
  }
  if (auto seed = seed_override(out)) selection.seed = *seed;

  std::int64_t iterations = 1;
  if (j.contains("iterations")) {
    if (auto v = get_integer(j["iterations"], "iterations", out)) {
      if (*v < 1) {
        out.add("iterations", "must be >= 1");
      } else {
        iterations = *v;
      }
    }
  } else {
    out.add("iterations", "missing");
  }

  std::int64_t record_every = 1;
  if (j.contains("record_every")) {
    if (auto v = get_integer(j["record_every"], "record_every", out)) {
      if (*v < 1) {
        out.add("record_every", "must be >= 1");
      } else {
        record_every = *v;
      }
    }
  }

  double euler_h = 0.0;
  if (have_process && process == Process::euler) {
    if (!j.contains("euler_h")) {
      out.add("euler_h", "required when process is \"euler\"");
    } else if (auto v = get_number(j["euler_h"], "euler_h", out)) {
      if (!(*v > 0.0 && *v <= 1.0)) {
        out.add("euler_h", "must lie in (0, 1]");
      } else {
        euler_h = *v;
      }
    }
  } else if (j.contains("euler_h")) {
    out.add("euler_h", "only valid when process is \"euler\"");
  }

  InitialAction initial_action = InitialAction::zero;
  if (j.contains("initial_action")) {
    if (auto name = get_string(j["initial_action"], "initial_action", out)) {
      if (*name == "zero") {
        initial_action = InitialAction::zero;
      } else if (*name == "uniform") {
        initial_action = InitialAction::uniform;
      } else {
        out.add("initial_action", "expected \"zero\" or \"uniform\"");
      }
    }
  }

  double partition_tolerance = 0.0;
  if (j.contains("partition_tolerance")) {
    if (auto v =
            get_number(j["partition_tolerance"], "partition_tolerance", out)) {
      if (!(*v >= 0.0)) {
        out.add("partition_tolerance", "must be >= 0");
      } else {
        partition_tolerance = *v;
      }
    }
  }

  GapThresholds thresholds;
  if (j.contains("thresholds")) {
    parse_thresholds(j["thresholds"], thresholds, out);
  }

  std::string output;
  if (j.contains("output")) {
    if (auto v = get_string(j["output"], "output", out)) output = *v;
  }

  if (game_section.game.has_value() && partition.has_value()) {
    try {
      const PartitionValidationReport report = validate_partition(
          *game_section.game, *partition, partition_tolerance);
      for (const PartitionViolation& violation : report.violations) {
        out.add("partition", std::string("condition (") +
                                 condition_id(violation.condition) +
                                 ") violated: " + violation.witness);
      }
    } catch (const std::exception& e) {
      out.add("partition", e.what());
    }
  }

  if (!out.errors.empty()) throw config_error(std::move(out.errors));

  ExperimentConfig config(std::move(*game_section.game),
                          std::move(*partition));
  config.process = process;
  config.gamma = gamma;
  config.epsilon = epsilon;
  config.selection = selection;
  config.iterations = iterations;
  config.record_every = record_every;
  config.euler_h = euler_h;
  config.initial_action = initial_action;
  config.partition_tolerance = partition_tolerance;
  config.thresholds = thresholds;
  config.output = output;
  return config;
}

std::string emit_config(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["game"]["inline"] = detail::game_to_json(config.game);
  j["partition"] = detail::partition_to_json(config.partition);
  switch (config.process) {
    case Process::fp:
      j["process"] = "fp";
      break;
    case Process::ecfp:
      j["process"] = "ecfp";
      break;
    case Process::euler:
      j["process"] = "euler";
      break;
  }
  nlohmann::ordered_json gamma;
  if (config.gamma.family() == StepSizeSchedule::Family::classical) {
    gamma["family"] = "classical";
  } else {
    gamma["family"] = "power";
    gamma["rho"] = config.gamma.rho();
    gamma["t0"] = config.gamma.t0();
  }
  nlohmann::ordered_json epsilon;
  if (config.epsilon.family() == EpsilonSchedule::Family::zero) {
    epsilon["family"] = "zero";
  } else {
    epsilon["family"] = "power";
    epsilon["scale"] = config.epsilon.scale();
    epsilon["beta"] = config.epsilon.beta();
  }
  j["schedules"]["gamma"] = std::move(gamma);
  j["schedules"]["epsilon"] = std::move(epsilon);
  switch (config.selection.variant) {
    case SelectionVariant::exact:
      j["selection"]["mode"] = "exact";
      break;
    case SelectionVariant::uniform_eps:
      j["selection"]["mode"] = "uniform_eps";
      break;
    case SelectionVariant::mixed_eps:
      j["selection"]["mode"] = "mixed_eps";
      break;
  }
  j["selection"]["seed"] = config.selection.seed;
  j["iterations"] = config.iterations;
  j["record_every"] = config.record_every;
  if (config.process == Process::euler) j["euler_h"] = config.euler_h;
  j["initial_action"] =
      config.initial_action == InitialAction::zero ? "zero" : "uniform";
  j["partition_tolerance"] = config.partition_tolerance;
  j["thresholds"]["ne"] = config.thresholds.ne;
  j["thresholds"]["mce"] = config.thresholds.mce;
  j["thresholds"]["sne"] = config.thresholds.sne;
  if (!config.output.empty()) j["output"] = config.output;
  return j.dump(2) + "\n";
}

}  // namespace ecfp
