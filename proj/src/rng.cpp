#include "spgan/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spgan {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t substream_seed(uint64_t master, std::string_view name) {
  uint64_t h = 1469598103934665603ull;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return splitmix64(master ^ splitmix64(h));
}

Rng make_stream(uint64_t master, std::string_view name) {
  return Rng(substream_seed(master, name));
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t uniform_index(Rng& rng, size_t n) {
  // Rejection sampling keeps the draw unbiased.
  if (n == 0) return 0;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<size_t>(x % n);
}

double gaussian(Rng& rng, double stddev) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string serialize_rng(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

void deserialize_rng(Rng& rng, const std::string& text) {
  std::istringstream is(text);
  is >> rng;
  if (is.fail()) throw std::runtime_error("corrupt rng state");
}

}  // namespace spgan
