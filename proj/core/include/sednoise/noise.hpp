#pragma once

#include <cstddef>
#include <cstdint>

#include "sednoise/annotation.hpp"

namespace sednoise {

/// One noise construction: which corruption to apply, how strong, and the
/// seed all randomness flows from. Rate semantics depend on the kind:
/// deletion/substitution remove or relabel floor(rate * N) instances per
/// class, insertion adds floor(rate * N) per class, and subjective shifts
/// every instance so that the perturbed/original overlap ratio equals the
/// rate.
struct NoiseConfig {
  NoiseKind kind = NoiseKind::Deletion;
  double rate = 0.0;
  std::uint64_t seed = 0;

  /// deletion/substitution: rate in [0, 1]; insertion: rate >= 0;
  /// subjective: rate in (0, 1]. Throws ValidationError.
  void validate() const;
};

/// floor(rate * population) with a 1e-9 snap, so rates written with up to
/// six decimal digits count exactly (e.g. 0.29 * 100 -> 29 even though the
/// nearest double product is 28.999...).
std::size_t noisy_count(std::size_t population, double rate);

/// Removes floor(rate * N) instances per class, sampled uniformly without
/// replacement from the class's instances; survivors are untouched and the
/// clip table and vocabulary are preserved even for fully deleted classes.
AnnotationSet inject_deletion(const AnnotationSet& set, double rate,
                              std::uint64_t seed, unsigned threads = 1);

/// Adds floor(rate * N) new instances per class: clip uniform over the clip
/// table, onset uniform on [0, clip duration), duration Gaussian with the
/// class's population mean/stddev (redrawn until >= 0.1 s), offset clamped
/// to the clip end. Requires every vocabulary class to have at least one
/// instance when rate > 0 (duration statistics).
AnnotationSet inject_insertion(const AnnotationSet& set, double rate,
                               std::uint64_t seed, unsigned threads = 1);

/// Relabels floor(rate * N) instances per class, each to a label drawn
/// uniformly from the other classes; times and clips are untouched.
/// Requires a vocabulary of at least two classes.
AnnotationSet inject_substitution(const AnnotationSet& set, double rate,
                                  std::uint64_t seed, unsigned threads = 1);

/// Shifts every instance of duration d by (1 - overlap_rate) * d with a
/// uniformly random sign, then clamps to [0, clip duration]. Absent
/// clamping, overlap(original, perturbed) / d equals overlap_rate exactly.
AnnotationSet inject_subjective(const AnnotationSet& set, double overlap_rate,
                                std::uint64_t seed, unsigned threads = 1);

/// Dispatches on config.kind after config.validate().
AnnotationSet inject(const AnnotationSet& set, const NoiseConfig& config,
                     unsigned threads = 1);

}  // namespace sednoise
