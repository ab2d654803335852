#include "ecfp/io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"

namespace ecfp {
namespace detail {
namespace {

bool is_integer(const nlohmann::json& v) {
  return v.is_number_integer() || v.is_number_unsigned();
}

std::int64_t require_integer(const nlohmann::json& v, const std::string& ctx) {
  if (!is_integer(v)) {
    throw std::invalid_argument(ctx + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

int require_int(const nlohmann::json& v, const std::string& ctx) {
  const std::int64_t x = require_integer(v, ctx);
  if (x < std::numeric_limits<int>::min() ||
      x > std::numeric_limits<int>::max()) {
    throw std::invalid_argument(ctx + ": value out of range");
  }
  return static_cast<int>(x);
}

std::vector<int> require_int_array(const nlohmann::json& v,
                                   const std::string& ctx) {
  if (!v.is_array()) {
    throw std::invalid_argument(ctx + ": expected an array");
  }
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(require_int(v[i], ctx + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> require_double_array(const nlohmann::json& v,
                                         const std::string& ctx) {
  if (!v.is_array()) {
    throw std::invalid_argument(ctx + ": expected an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw std::invalid_argument(ctx + "[" + std::to_string(i) +
                                  "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

const nlohmann::json& require_member(const nlohmann::json& j,
                                     const char* member,
                                     const std::string& ctx) {
  if (!j.is_object()) {
    throw std::invalid_argument(ctx + ": expected an object");
  }
  const auto it = j.find(member);
  if (it == j.end()) {
    throw std::invalid_argument(ctx + "." + member + ": missing");
  }
  return *it;
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  errno = 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    const int err = errno;
    std::ostringstream msg;
    msg << "failed to open " << path;
    if (err != 0) msg << ": " << std::strerror(err);
    throw std::runtime_error(msg.str());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void check_known_fields(const nlohmann::json& j,
                        const std::vector<std::string>& allowed,
                        const std::string& ctx) {
  if (!j.is_object()) {
    throw std::invalid_argument(ctx + ": expected an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(ctx + "." + item.key() + ": unknown field");
    }
  }
}

Game game_from_json(const nlohmann::json& j, const std::string& ctx) {
  check_known_fields(j, {"players", "actions", "utility"}, ctx);
  const int players = require_int(require_member(j, "players", ctx),
                                  ctx + ".players");
  const std::vector<int> actions =
      require_int_array(require_member(j, "actions", ctx), ctx + ".actions");
  if (players != static_cast<int>(actions.size())) {
    throw std::invalid_argument(
        ctx + ".players: " + std::to_string(players) + " does not match " +
        std::to_string(actions.size()) + " action counts");
  }
  std::vector<double> utility =
      require_double_array(require_member(j, "utility", ctx), ctx + ".utility");
  try {
    return Game(actions, std::move(utility));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(ctx + ": " + e.what());
  }
}

Partition partition_from_json(const nlohmann::json& j, int num_players,
                              const std::string& ctx) {
  check_known_fields(j, {"classes"}, ctx);
  const nlohmann::json& classes_json = require_member(j, "classes", ctx);
  if (!classes_json.is_array()) {
    throw std::invalid_argument(ctx + ".classes: expected an array");
  }
  std::vector<std::vector<int>> classes;
  classes.reserve(classes_json.size());
  for (std::size_t k = 0; k < classes_json.size(); ++k) {
    classes.push_back(require_int_array(
        classes_json[k], ctx + ".classes[" + std::to_string(k) + "]"));
  }
  try {
    return Partition(num_players, std::move(classes));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(ctx + ".classes: " + e.what());
  }
}

JointMixedStrategy strategy_from_json(const nlohmann::json& j,
                                      const std::string& ctx) {
  check_known_fields(j, {"strategies"}, ctx);
  const nlohmann::json& rows = require_member(j, "strategies", ctx);
  if (!rows.is_array()) {
    throw std::invalid_argument(ctx + ".strategies: expected an array");
  }
  JointMixedStrategy p;
  p.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.push_back(require_double_array(
        rows[i], ctx + ".strategies[" + std::to_string(i) + "]"));
  }
  return p;
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j,
                                       const std::string& ctx) {
  const nlohmann::json& kind_json = require_member(j, "kind", ctx);
  if (!kind_json.is_string()) {
    throw std::invalid_argument(ctx + ".kind: expected a string");
  }
  const std::string kind = kind_json.get<std::string>();
  GeneratorSpec spec;
  if (kind == "random_identical") {
    check_known_fields(j, {"kind", "actions", "seed"}, ctx);
    spec.kind = GeneratorSpec::Kind::random_identical;
    spec.action_counts = require_int_array(require_member(j, "actions", ctx),
                                           ctx + ".actions");
  } else if (kind == "symmetric_classes") {
    check_known_fields(j, {"kind", "class_sizes", "class_actions", "seed"},
                       ctx);
    spec.kind = GeneratorSpec::Kind::symmetric_classes;
    spec.class_sizes = require_int_array(
        require_member(j, "class_sizes", ctx), ctx + ".class_sizes");
    spec.class_actions = require_int_array(
        require_member(j, "class_actions", ctx), ctx + ".class_actions");
  } else {
    throw std::invalid_argument(
        ctx + ".kind: expected \"random_identical\" or \"symmetric_classes\"");
  }
  if (j.contains("seed")) {
    const std::int64_t seed = require_integer(j["seed"], ctx + ".seed");
    if (seed < 0) {
      throw std::invalid_argument(ctx + ".seed: must be >= 0");
    }
    spec.seed = static_cast<std::uint64_t>(seed);
  }
  return spec;
}

nlohmann::ordered_json game_to_json(const Game& game) {
  nlohmann::ordered_json j;
  j["players"] = game.num_players();
  j["actions"] = game.action_counts();
  j["utility"] = game.utility();
  return j;
}

nlohmann::ordered_json partition_to_json(const Partition& partition) {
  nlohmann::ordered_json j;
  j["classes"] = partition.classes();
  return j;
}

}  // namespace detail

Game load_game(const std::string& path) {
  nlohmann::json j = detail::read_json_file(path);
  if (j.is_object() && j.contains("game")) {
    detail::check_known_fields(j, {"game", "partition"}, path);
    return detail::game_from_json(j["game"], path + ": game");
  }
  return detail::game_from_json(j, path + ": game");
}

Partition load_partition(const std::string& path, int num_players) {
  nlohmann::json j = detail::read_json_file(path);
  if (j.is_object() && j.contains("partition")) {
    detail::check_known_fields(j, {"game", "partition"}, path);
    return detail::partition_from_json(j["partition"], num_players,
                                       path + ": partition");
  }
  return detail::partition_from_json(j, num_players, path + ": partition");
}

JointMixedStrategy load_strategy(const std::string& path) {
  nlohmann::json j = detail::read_json_file(path);
  return detail::strategy_from_json(j, path + ": strategy");
}

GeneratorSpec load_generator_spec(const std::string& path) {
  nlohmann::json j = detail::read_json_file(path);
  return detail::generator_spec_from_json(j, path + ": generator");
}

void save_game_bundle(const Game& game, const Partition& partition,
                      const std::string& path) {
  nlohmann::ordered_json j;
  j["game"] = detail::game_to_json(game);
  j["partition"] = detail::partition_to_json(partition);
  errno = 0;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    const int err = errno;
    std::ostringstream msg;
    msg << "failed to open " << path;
    if (err != 0) msg << ": " << std::strerror(err);
    throw std::runtime_error(msg.str());
  }
  out << j.dump(2) << "\n";
  out.flush();
  if (!out) {
    throw std::runtime_error("failed to write " + path);
  }
}

}  // namespace ecfp
