// Internal JSON helpers shared by the file loaders and the config parser.
// Not installed; public headers stay free of the vendored json type.
#ifndef ECFP_SRC_JSON_UTIL_HPP
#define ECFP_SRC_JSON_UTIL_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ecfp/game.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/partition.hpp"

namespace ecfp {
namespace detail {

// Throws std::runtime_error on I/O failure, std::invalid_argument on
// malformed JSON; both messages carry the path.
nlohmann::json read_json_file(const std::string& path);

// Rejects members outside `allowed`; the complaint names ctx.member.
void check_known_fields(const nlohmann::json& j,
                        const std::vector<std::string>& allowed,
                        const std::string& ctx);

// ctx prefixes every complaint, e.g. "game.actions[1]: ...". All throw
// std::invalid_argument on schema violations.
Game game_from_json(const nlohmann::json& j, const std::string& ctx);
Partition partition_from_json(const nlohmann::json& j, int num_players,
                              const std::string& ctx);
JointMixedStrategy strategy_from_json(const nlohmann::json& j,
                                      const std::string& ctx);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j,
                                       const std::string& ctx);

nlohmann::ordered_json game_to_json(const Game& game);
nlohmann::ordered_json partition_to_json(const Partition& partition);

}  // namespace detail
}  // namespace ecfp

#endif  // ECFP_SRC_JSON_UTIL_HPP
