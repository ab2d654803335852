#ifndef ECFP_RNG_HPP
#define ECFP_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ecfp {

// One master seed is split into labeled streams so that a draw made for
// player i never depends on how many draws other players have made.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  return splitmix64(master ^ hash_label(label) ^
                    (0x9e3779b97f4a7c15ULL * (index + 1)));
}

// Uniform double in [0, 1), fully determined by the engine output.
inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe to feed into log().
inline double uniform_double_open(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform index in [0, n) via the multiply-shift reduction.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Per-run and per-player engine streams derived from one master seed.
class RngStreams {
 public:
  RngStreams(std::uint64_t master_seed, int num_players)
      : run_(derive_seed(master_seed, "run")) {
    players_.reserve(static_cast<std::size_t>(num_players));
    for (int i = 0; i < num_players; ++i) {
      players_.emplace_back(
          derive_seed(master_seed, "player", static_cast<std::uint64_t>(i)));
    }
  }

  std::mt19937_64& run() { return run_; }
  std::mt19937_64& player(int i) { return players_[static_cast<std::size_t>(i)]; }
  int num_players() const { return static_cast<int>(players_.size()); }

 private:
  std::mt19937_64 run_;
  std::vector<std::mt19937_64> players_;
};

}  // namespace ecfp

#endif  // ECFP_RNG_HPP
