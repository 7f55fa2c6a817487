#include "sednoise/binarize.hpp"

#include "sednoise/errors.hpp"
#include "sednoise/rng.hpp"

namespace sednoise {

void BinarizationConfig::validate() const {
  if (mode == Mode::Fixed) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
      throw ValidationError("threshold must lie in (0, 1)");
    }
  } else {
    if (!(relaxation >= 0.0 && relaxation <= 0.45)) {
      throw ValidationError("relaxation must lie in [0, 0.45]");
    }
  }
}

namespace {

FrameActivityGrid apply_threshold(const SoftLabelGrid& grid, double threshold) {
  FrameActivityGrid out;
  out.clip_id = grid.clip_id;
  out.frame_length = grid.frame_length;
  out.vocabulary = grid.vocabulary;
  out.num_segments = grid.num_frames;
  out.active.assign(grid.values.size(), 0);
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    out.active[i] = grid.values[i] >= threshold ? 1 : 0;
  }
  return out;
}

}  // namespace

FrameActivityGrid binarize_fixed(const SoftLabelGrid& grid, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("threshold must lie in (0, 1)");
  }
  return apply_threshold(grid, threshold);
}

FrameActivityGrid binarize_relaxed(const SoftLabelGrid& grid,
                                   double relaxation, std::uint64_t seed) {
  if (!(relaxation >= 0.0 && relaxation <= 0.45)) {
    throw ValidationError("relaxation must lie in [0, 0.45]");
  }
  PortableRng rng = substream(seed, "binarize.relaxed", fnv1a64(grid.clip_id));
  const double threshold = rng.uniform(0.5 - relaxation, 0.5 + relaxation);
  return apply_threshold(grid, threshold);
}

FrameActivityGrid binarize(const SoftLabelGrid& grid,
                           const BinarizationConfig& config) {
  config.validate();
  if (config.mode == BinarizationConfig::Mode::Fixed) {
    return binarize_fixed(grid, config.threshold);
  }
  return binarize_relaxed(grid, config.relaxation, config.seed);
}

AnnotationSet grid_to_events(const FrameActivityGrid& grid) {
  std::vector<EventInstance> events;
  const std::size_t num_classes = grid.vocabulary.size();
  for (std::size_t c = 0; c < num_classes; ++c) {
    std::size_t run_start = 0;
    bool in_run = false;
    for (std::size_t k = 0; k <= grid.num_segments; ++k) {
      const bool active = k < grid.num_segments && grid.is_active(k, c);
      if (active && !in_run) {
        run_start = k;
        in_run = true;
      } else if (!active && in_run) {
        events.push_back(EventInstance{
            grid.clip_id, grid.vocabulary.label(c),
            static_cast<double>(run_start) * grid.frame_length,
            static_cast<double>(k) * grid.frame_length});
        in_run = false;
      }
    }
  }
  std::map<std::string, double> clips{{grid.clip_id, grid.duration()}};
  return AnnotationSet(std::move(clips), grid.vocabulary, std::move(events));
}

}  // namespace sednoise
