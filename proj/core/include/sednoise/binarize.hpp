#pragma once

#include <cstdint>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/grid.hpp"

namespace sednoise {

/// How soft labels become hard labels: one fixed threshold, or one threshold
/// drawn per clip from [0.5 - relaxation, 0.5 + relaxation]. Hard labels at
/// threshold 0.5 are the ground truth.
struct BinarizationConfig {
  enum class Mode { Fixed, Relaxed };

  Mode mode = Mode::Fixed;
  double threshold = 0.5;   // Fixed; must lie in (0, 1)
  double relaxation = 0.0;  // Relaxed; must lie in [0, 0.45]
  std::uint64_t seed = 0;   // Relaxed only

  static constexpr double kGroundTruthThreshold = 0.5;

  void validate() const;  // throws ValidationError
};

/// Cell (t, c) is active iff probability >= threshold, so a grid holding
/// exact 0.5 values reproduces a well-defined ground truth at 0.5.
FrameActivityGrid binarize_fixed(const SoftLabelGrid& grid, double threshold);

/// Draws one threshold per clip, uniform on [0.5 - relaxation,
/// 0.5 + relaxation], from the sub-stream keyed by the clip id; the result
/// does not depend on the order clips are processed in. relaxation = 0
/// matches binarize_fixed at 0.5 exactly.
FrameActivityGrid binarize_relaxed(const SoftLabelGrid& grid,
                                   double relaxation, std::uint64_t seed);

FrameActivityGrid binarize(const SoftLabelGrid& grid,
                           const BinarizationConfig& config);

/// Maximal runs of consecutive active frames become event instances with
/// onset = first-frame start and offset = last-frame end. The returned set
/// contains the grid's clip (duration = num_segments * frame_length) and
/// vocabulary.
AnnotationSet grid_to_events(const FrameActivityGrid& grid);

}  // namespace sednoise
