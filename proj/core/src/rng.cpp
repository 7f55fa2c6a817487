#include "sednoise/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sednoise {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a64(tag)) ^ index);
}

double PortableRng::next_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

std::uint64_t PortableRng::next_below(std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

double PortableRng::gaussian(double mean, double stddev) {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double z =
      std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

PortableRng substream(std::uint64_t seed, std::string_view tag,
                      std::uint64_t index) {
  return PortableRng(derive_stream_seed(seed, tag, index));
}

}  // namespace sednoise
