#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sednoise/annotation.hpp"

namespace sednoise {

/// Per-clip binary activity on fixed-length segments, row-major
/// [num_segments x vocabulary.size()]. The unit the segment metrics operate
/// on; also the output of binarization.
struct FrameActivityGrid {
  std::string clip_id;
  double frame_length = 0.0;
  Vocabulary vocabulary;
  std::size_t num_segments = 0;
  std::vector<std::uint8_t> active;

  bool is_active(std::size_t segment, std::size_t cls) const {
    return active[segment * vocabulary.size() + cls] != 0;
  }
  void set_active(std::size_t segment, std::size_t cls, bool value) {
    active[segment * vocabulary.size() + cls] = value ? 1 : 0;
  }
  double duration() const {
    return static_cast<double>(num_segments) * frame_length;
  }

  friend bool operator==(const FrameActivityGrid&,
                         const FrameActivityGrid&) = default;
};

/// Empty (all-inactive) grid covering `duration` seconds: the segment count
/// is ceil(duration / frame_length) with a 1e-9 guard against decimal
/// representation jitter; the final partial segment is included.
FrameActivityGrid make_empty_grid(std::string clip_id, double duration,
                                  double frame_length, Vocabulary vocabulary);

}  // namespace sednoise
