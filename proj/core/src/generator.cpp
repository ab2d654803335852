#include "ecfp/generator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "ecfp/errors.hpp"
#include "ecfp/rng.hpp"

namespace ecfp {
namespace {

// Overflow-safe: rejects before the product can wrap or allocate.
std::int64_t checked_profile_count(const std::vector<int>& actions) {
  std::int64_t profiles = 1;
  for (int m : actions) {
    if (profiles > Game::kDefaultMaxProfiles / m) {
      throw resource_error("generated game would exceed the profile cap of " +
                           std::to_string(Game::kDefaultMaxProfiles) +
                           " entries");
    }
    profiles *= m;
  }
  return profiles;
}

std::vector<int> check_counts(const std::vector<int>& counts,
                              const char* what) {
  if (counts.empty()) {
    throw std::invalid_argument(std::string(what) + " must be nonempty");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) {
      throw std::invalid_argument(std::string(what) + "[" + std::to_string(i) +
                                  "] must be >= 1, got " +
                                  std::to_string(counts[i]));
    }
  }
  return counts;
}

GeneratedGame generate_random_identical(const GeneratorSpec& spec) {
  const std::vector<int> actions =
      check_counts(spec.action_counts, "action_counts");
  const int n = static_cast<int>(actions.size());
  const std::int64_t profiles = checked_profile_count(actions);
  std::mt19937_64 rng(derive_seed(spec.seed, "tensor"));
  std::vector<double> utility(static_cast<std::size_t>(profiles));
  for (double& u : utility) u = uniform_double(rng);
  return GeneratedGame{Game(actions, std::move(utility)),
                       Partition::singletons(n)};
}

GeneratedGame generate_symmetric_classes(const GeneratorSpec& spec) {
  const std::vector<int> sizes = check_counts(spec.class_sizes, "class_sizes");
  const std::vector<int> class_actions =
      check_counts(spec.class_actions, "class_actions");
  if (sizes.size() != class_actions.size()) {
    throw std::invalid_argument("class_sizes and class_actions must have the "
                                "same length");
  }
  const int num_classes = static_cast<int>(sizes.size());
  int n = 0;
  for (int s : sizes) n += s;

  std::vector<int> actions;
  std::vector<int> player_class;
  for (int k = 0; k < num_classes; ++k) {
    for (int j = 0; j < sizes[k]; ++j) {
      actions.push_back(class_actions[k]);
      player_class.push_back(k);
    }
  }

  // One utility value per tuple of per-class action histograms, drawn on
  // first encounter while profiles are enumerated in a fixed row-major
  // order. Profiles that differ by a within-class swap share a histogram
  // tuple and therefore the identical stored double.
  std::mt19937_64 rng(derive_seed(spec.seed, "tensor"));
  std::map<std::vector<int>, double> table;

  std::vector<int> histogram_offset(static_cast<std::size_t>(num_classes));
  int histogram_len = 0;
  for (int k = 0; k < num_classes; ++k) {
    histogram_offset[static_cast<std::size_t>(k)] = histogram_len;
    histogram_len += class_actions[k];
  }

  const std::int64_t profiles = checked_profile_count(actions);
  std::vector<double> utility(static_cast<std::size_t>(profiles));
  std::vector<int> profile(static_cast<std::size_t>(n), 0);
  std::vector<int> key(static_cast<std::size_t>(histogram_len));
  for (std::int64_t idx = 0;; ++idx) {
    std::fill(key.begin(), key.end(), 0);
    for (int i = 0; i < n; ++i) {
      const int k = player_class[static_cast<std::size_t>(i)];
      ++key[static_cast<std::size_t>(histogram_offset[static_cast<std::size_t>(
                                         k)] +
                                     profile[static_cast<std::size_t>(i)])];
    }
    auto it = table.find(key);
    if (it == table.end()) {
      it = table.emplace(key, uniform_double(rng)).first;
    }
    utility[static_cast<std::size_t>(idx)] = it->second;

    int i = n - 1;
    while (i >= 0 &&
           profile[static_cast<std::size_t>(i)] ==
               actions[static_cast<std::size_t>(i)] - 1) {
      profile[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++profile[static_cast<std::size_t>(i)];
  }

  std::vector<int> grouped_sizes = sizes;
  return GeneratedGame{Game(actions, std::move(utility)),
                       Partition::grouped(grouped_sizes)};
}

}  // namespace

GeneratedGame generate_game(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::random_identical:
      return generate_random_identical(spec);
    case GeneratorSpec::Kind::symmetric_classes:
      return generate_symmetric_classes(spec);
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace ecfp
