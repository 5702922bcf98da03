#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace spgan {

using Rng = std::mt19937_64;

// Every source of randomness in a run is a named sub-stream of the master
// seed, so stages can be rerun in isolation without disturbing each other.
uint64_t substream_seed(uint64_t master, std::string_view name);
Rng make_stream(uint64_t master, std::string_view name);

// Uniform in [0, 1).
double uniform01(Rng& rng);

// Uniform integer in [0, n).
size_t uniform_index(Rng& rng, size_t n);

// Stateless Box-Muller draw; safe to interleave with checkpoint save/restore.
double gaussian(Rng& rng, double stddev);

std::string serialize_rng(const Rng& rng);
void deserialize_rng(Rng& rng, const std::string& text);

}  // namespace spgan
