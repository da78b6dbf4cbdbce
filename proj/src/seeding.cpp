#include "cslab/seeding.hpp"

#include <stdexcept>

namespace cslab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_index,
                                std::uint64_t trial_index) {
  constexpr std::uint64_t kLimit = 1ULL << 32;
  if (point_index >= kLimit || trial_index >= kLimit) {
    throw std::out_of_range("derive_trial_seed: point and trial indices must be < 2^32");
  }
  const std::uint64_t key = (point_index << 32) | trial_index;
  return splitmix64(splitmix64(master_seed) ^ key);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  return splitmix64(seed ^ splitmix64(stream_id + 0xD1B54A32D192ED03ULL));
}

}  // namespace cslab
