#include "ecfp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ecfp/errors.hpp"

namespace ecfp {

namespace {

std::string profile_string(const std::vector<int>& profile) {
  std::string s = "(";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(profile[i]);
  }
  return s + ")";
}

}  // namespace

Partition::Partition(int num_players, std::vector<std::vector<int>> classes)
    : num_players_(num_players), classes_(std::move(classes)) {
  if (num_players_ < 1) {
    throw std::invalid_argument("partition needs a positive player count");
  }
  std::vector<int> seen_in(static_cast<std::size_t>(num_players_), -1);
  bool overlap = false;
  int covered = 0;
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    if (classes_[k].empty()) {
      throw std::invalid_argument("class " + std::to_string(k) + " is empty");
    }
    std::vector<bool> in_class(static_cast<std::size_t>(num_players_), false);
    for (int i : classes_[k]) {
      if (i < 0 || i >= num_players_) {
        throw std::invalid_argument("class " + std::to_string(k) +
                                    ": player index " + std::to_string(i) +
                                    " out of range");
      }
      if (in_class[static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("class " + std::to_string(k) +
                                    ": player " + std::to_string(i) +
                                    " listed twice");
      }
      in_class[static_cast<std::size_t>(i)] = true;
      if (seen_in[static_cast<std::size_t>(i)] >= 0) {
        overlap = true;
      } else {
        seen_in[static_cast<std::size_t>(i)] = static_cast<int>(k);
        ++covered;
      }
    }
  }
  well_formed_ = !overlap && covered == num_players_;
  if (well_formed_) {
    player_class_.assign(seen_in.begin(), seen_in.end());
  }
}

Partition Partition::singletons(int num_players) {
  std::vector<std::vector<int>> classes;
  classes.reserve(static_cast<std::size_t>(num_players));
  for (int i = 0; i < num_players; ++i) classes.push_back({i});
  return Partition(num_players, std::move(classes));
}

Partition Partition::single_class(int num_players) {
  std::vector<int> all(static_cast<std::size_t>(num_players));
  std::iota(all.begin(), all.end(), 0);
  return Partition(num_players, {std::move(all)});
}

Partition Partition::grouped(const std::vector<int>& class_sizes) {
  std::vector<std::vector<int>> classes;
  int next = 0;
  for (int s : class_sizes) {
    if (s < 1) throw std::invalid_argument("class sizes must be >= 1");
    std::vector<int> c(static_cast<std::size_t>(s));
    std::iota(c.begin(), c.end(), next);
    next += s;
    classes.push_back(std::move(c));
  }
  return Partition(next, std::move(classes));
}

const std::vector<int>& Partition::player_class() const {
  if (!well_formed_) {
    throw std::invalid_argument(
        "partition classes do not form a disjoint cover of the players");
  }
  return player_class_;
}

const char* condition_id(PartitionCondition c) {
  switch (c) {
    case PartitionCondition::disjoint: return "i";
    case PartitionCondition::cover: return "ii";
    case PartitionCondition::action_counts: return "iii";
    case PartitionCondition::swap_invariance: return "iv";
  }
  return "?";
}

PartitionValidationReport validate_partition(const Game& game,
                                             const Partition& partition,
                                             double utility_tolerance,
                                             std::int64_t max_comparisons) {
  if (partition.num_players() != game.num_players()) {
    throw std::invalid_argument("partition is over " +
                                std::to_string(partition.num_players()) +
                                " players, game has " +
                                std::to_string(game.num_players()));
  }
  PartitionValidationReport report;
  const auto& classes = partition.classes();
  const int n = game.num_players();

  // (i) disjointness
  {
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < classes.size() && report.violations.empty(); ++k) {
      for (int i : classes[k]) {
        const int prev = owner[static_cast<std::size_t>(i)];
        if (prev >= 0) {
          report.violations.push_back(
              {PartitionCondition::disjoint,
               "player " + std::to_string(i) + " appears in classes " +
                   std::to_string(prev) + " and " + std::to_string(k)});
          break;
        }
        owner[static_cast<std::size_t>(i)] = static_cast<int>(k);
      }
    }
  }

  // (ii) cover
  {
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (const auto& c : classes) {
      for (int i : c) covered[static_cast<std::size_t>(i)] = true;
    }
    for (int i = 0; i < n; ++i) {
      if (!covered[static_cast<std::size_t>(i)]) {
        report.violations.push_back(
            {PartitionCondition::cover,
             "player " + std::to_string(i) + " belongs to no class"});
        break;
      }
    }
  }

  // (iii) equal action counts within each class
  bool counts_ok = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const int m0 = game.num_actions(classes[k][0]);
    for (int i : classes[k]) {
      if (game.num_actions(i) != m0) {
        counts_ok = false;
        report.violations.push_back(
            {PartitionCondition::action_counts,
             "class " + std::to_string(k) + ": players " +
                 std::to_string(classes[k][0]) + " and " + std::to_string(i) +
                 " have " + std::to_string(m0) + " and " +
                 std::to_string(game.num_actions(i)) + " actions"});
        break;
      }
    }
    if (!counts_ok) break;
  }

  // (iv) swap invariance over every profile and every within-class pair,
  // skipped when (iii) already failed (swaps would be ill-typed)
  if (counts_ok) {
    std::int64_t pairs = 0;
    for (const auto& c : classes) {
      const std::int64_t s = static_cast<std::int64_t>(c.size());
      pairs += s * (s - 1) / 2;
    }
    if (pairs > 0 && game.num_profiles() > max_comparisons / pairs) {
      throw resource_error(
          "swap check needs " + std::to_string(game.num_profiles()) + " x " +
          std::to_string(pairs) + " comparisons, over the budget of " +
          std::to_string(max_comparisons) + "; use a smaller game");
    }
    std::vector<int> profile(static_cast<std::size_t>(n), 0);
    std::vector<int> swapped(static_cast<std::size_t>(n), 0);
    bool done = false;
    while (!done) {
      for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& c = classes[k];
        for (std::size_t a = 0; a + 1 < c.size(); ++a) {
          for (std::size_t b = a + 1; b < c.size(); ++b) {
            const int i = c[a];
            const int j = c[b];
            swapped = profile;
            std::swap(swapped[static_cast<std::size_t>(i)],
                      swapped[static_cast<std::size_t>(j)]);
            const double u0 = game.utility_at(profile);
            const double u1 = game.utility_at(swapped);
            const bool equal = utility_tolerance == 0.0
                                   ? u0 == u1
                                   : std::abs(u0 - u1) <= utility_tolerance;
            if (!equal) {
              report.violations.push_back(
                  {PartitionCondition::swap_invariance,
                   "class " + std::to_string(k) + ", players " +
                       std::to_string(i) + "/" + std::to_string(j) +
                       ": u" + profile_string(profile) + " = " +
                       std::to_string(u0) + " but u" +
                       profile_string(swapped) + " = " + std::to_string(u1)});
              done = true;
            }
            if (done) break;
          }
          if (done) break;
        }
        if (done) break;
      }
      if (done) break;
      // advance the profile odometer, last player fastest
      int lvl = n - 1;
      while (lvl >= 0) {
        if (++profile[static_cast<std::size_t>(lvl)] < game.num_actions(lvl)) break;
        profile[static_cast<std::size_t>(lvl)] = 0;
        --lvl;
      }
      if (lvl < 0) done = true;
    }
  }

  report.valid = report.violations.empty();
  return report;
}

JointMixedStrategy centroid(const Partition& partition,
                            const JointMixedStrategy& p) {
  partition.player_class();  // needs a disjoint cover
  JointMixedStrategy out(p.size());
  for (const auto& c : partition.classes()) {
    const std::size_t dim = p[static_cast<std::size_t>(c[0])].size();
    for (int i : c) {
      if (p[static_cast<std::size_t>(i)].size() != dim) {
        throw std::invalid_argument(
            "players " + std::to_string(c[0]) + " and " + std::to_string(i) +
            " share a class but have strategies of length " +
            std::to_string(dim) + " and " +
            std::to_string(p[static_cast<std::size_t>(i)].size()));
      }
    }
    std::vector<int> members(c);
    std::sort(members.begin(), members.end());
    // A class whose members already share one vector averages to that
    // vector; copying it keeps repeated application bitwise idempotent
    // (summing k copies of v and dividing by k can round).
    const MixedStrategy& first = p[static_cast<std::size_t>(members[0])];
    bool constant = true;
    for (int i : members) {
      if (p[static_cast<std::size_t>(i)] != first) {
        constant = false;
        break;
      }
    }
    if (constant) {
      for (int i : members) out[static_cast<std::size_t>(i)] = first;
      continue;
    }
    MixedStrategy avg(dim, 0.0);
    for (int i : members) {
      for (std::size_t a = 0; a < dim; ++a) {
        avg[a] += p[static_cast<std::size_t>(i)][a];
      }
    }
    const double size = static_cast<double>(members.size());
    for (std::size_t a = 0; a < dim; ++a) avg[a] /= size;
    for (int i : members) out[static_cast<std::size_t>(i)] = avg;
  }
  return out;
}

double rearrangement_residual(const Game& game, const Partition& partition,
                              const JointMixedStrategy& p) {
  check_dimensions(game, p);
  const JointMixedStrategy bar = centroid(partition, p);
  const int n = game.num_players();
  double lhs = 0.0;
  JointMixedStrategy mixed = bar;
  for (int i = 0; i < n; ++i) {
    mixed[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    lhs += mixed_utility(game, mixed);
    mixed[static_cast<std::size_t>(i)] = bar[static_cast<std::size_t>(i)];
  }
  lhs /= static_cast<double>(n);
  return std::abs(lhs - mixed_utility(game, bar));
}

bool centroid_preserves_eps_br(const Game& game, const Partition& partition,
                               const JointMixedStrategy& p,
                               const JointMixedStrategy& q, double eps,
                               double slack) {
  check_dimensions(game, p);
  check_dimensions(game, q);
  const JointMixedStrategy q_bar = centroid(partition, q);
  const JointMixedStrategy p_bar = centroid(partition, p);
  const int n = game.num_players();
  bool hypothesis = true;
  bool conclusion = true;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> pv = payoff_vector(game, i, q_bar);
    const double best = *std::max_element(pv.begin(), pv.end());
    double got_p = 0.0;
    double got_pbar = 0.0;
    for (std::size_t a = 0; a < pv.size(); ++a) {
      got_p += p[static_cast<std::size_t>(i)][a] * pv[a];
      got_pbar += p_bar[static_cast<std::size_t>(i)][a] * pv[a];
    }
    if (got_p < best - eps - slack) hypothesis = false;
    if (got_pbar < best - eps - slack) conclusion = false;
  }
  return !hypothesis || conclusion;
}

}  // namespace ecfp
