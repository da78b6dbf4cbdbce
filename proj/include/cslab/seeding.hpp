#pragma once

#include <cstdint>
#include <random>

namespace cslab {

/// Engine used for every random draw in the library. All generators take a
/// 64-bit seed so that a run is a pure function of its inputs.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. A bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for trial `trial_index` of sweep point `point_index`.
///
/// The pair is packed into one 64-bit key (point in the high word, trial in
/// the low word) and mixed with the mixed master seed, so for a fixed master
/// seed the mapping is injective. Both indices must be below 2^32.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_index,
                                std::uint64_t trial_index);

/// Independent sub-stream of a trial seed (signal, noise, ensemble, ...).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept;

}  // namespace cslab
