#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sednoise {

/// 64-bit FNV-1a over raw bytes. Stable across platforms; used both for
/// content digests and for keying named RNG sub-streams.
std::uint64_t fnv1a64(std::string_view bytes);

/// Finalization step of the splitmix64 generator (Steele/Lea/Flood).
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the sub-stream identified by (seed, tag, index). Equal inputs
/// always give the same stream, so draws are independent of the order in
/// which classes or clips are visited.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index);

/// Seeded random generator with draws that reproduce bit-exactly on every
/// platform. The engine is std::mt19937_64, whose output sequence is fixed
/// by the C++ standard; the distributions are implemented here because the
/// standard library's distribution objects are not portable across
/// implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double next_unit();

  /// Uniform on [lo, hi). Requires lo < hi.
  double uniform(double lo, double hi);

  /// Uniform integer on [0, n), unbiased (rejection sampling). Requires n > 0.
  std::uint64_t next_below(std::uint64_t n);

  /// Gaussian draw via the Box-Muller transform; consumes exactly two
  /// uniforms per call.
  double gaussian(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

/// Generator positioned at the start of a named sub-stream.
PortableRng substream(std::uint64_t seed, std::string_view tag,
                      std::uint64_t index);

}  // namespace sednoise
