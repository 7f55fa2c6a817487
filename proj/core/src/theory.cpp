#include "sednoise/theory.hpp"

#include <cstdio>

#include "sednoise/binarize.hpp"
#include "sednoise/errors.hpp"
#include "sednoise/metrics.hpp"

namespace sednoise {

TheoryMetrics deletion_theory(double deletion_ratio) {
  if (!(deletion_ratio >= 0.0 && deletion_ratio <= 1.0)) {
    throw ValidationError("deletion ratio must lie in [0, 1]");
  }
  TheoryMetrics m;
  m.recall = 1.0 - deletion_ratio;
  m.precision = 1.0;
  m.f1 = 2.0 * (1.0 - deletion_ratio) / (2.0 - deletion_ratio);
  m.er = deletion_ratio;
  return m;
}

TheoryMetrics insertion_theory(double insertion_ratio) {
  if (!(insertion_ratio >= 0.0)) {
    throw ValidationError("insertion ratio must be >= 0");
  }
  TheoryMetrics m;
  m.recall = 1.0;
  m.precision = 1.0 / (1.0 + insertion_ratio);
  m.f1 = 2.0 / (2.0 + insertion_ratio);
  m.er = insertion_ratio;
  return m;
}

NoiseRatioProfile profile_from_grids(const FrameActivityGrid& ground_truth,
                                     const FrameActivityGrid& annotation) {
  if (!(ground_truth.vocabulary == annotation.vocabulary) ||
      ground_truth.num_segments != annotation.num_segments ||
      ground_truth.frame_length != annotation.frame_length) {
    throw ValidationError("ground truth and annotation shapes differ");
  }
  NoiseRatioProfile profile;
  for (std::size_t i = 0; i < ground_truth.active.size(); ++i) {
    const bool gt = ground_truth.active[i] != 0;
    const bool anno = annotation.active[i] != 0;
    if (gt) {
      ++profile.active_frames;
      if (!anno) ++profile.deleted_frames;
    } else {
      ++profile.inactive_frames;
      if (anno) ++profile.inserted_frames;
    }
  }
  if (profile.active_frames == 0) {
    throw ValidationError(
        "ground truth has no active frames; ratios are undefined");
  }
  return profile;
}

IdealModelCheck verify_ideal_model(const FrameActivityGrid& ground_truth,
                                   const FrameActivityGrid& annotation) {
  IdealModelCheck check;
  check.profile = profile_from_grids(ground_truth, annotation);
  if (check.profile.deleted_frames > 0 && check.profile.inserted_frames > 0) {
    throw ValidationError(
        "profile is neither pure deletion nor pure insertion");
  }
  check.theory = check.profile.inserted_frames > 0
                     ? insertion_theory(check.profile.insertion_ratio())
                     : deletion_theory(check.profile.deletion_ratio());

  const SegmentStats stats = accumulate_stats(ground_truth, annotation);
  const std::int64_t tp = stats.total_tp();
  const std::int64_t fp = stats.total_fp();
  const std::int64_t fn = stats.total_fn();
  check.measured.precision =
      tp + fp == 0 ? 0.0
                   : static_cast<double>(tp) / static_cast<double>(tp + fp);
  check.measured.recall =
      tp + fn == 0 ? 0.0
                   : static_cast<double>(tp) / static_cast<double>(tp + fn);
  check.measured.f1 = micro_f1(stats);
  check.measured.er = error_rate(stats);
  return check;
}

std::vector<CurvePoint> deletion_f1_curve(std::span<const double> ratios) {
  std::vector<CurvePoint> curve;
  curve.reserve(ratios.size());
  for (double r : ratios) curve.push_back({r, deletion_theory(r).f1});
  return curve;
}

std::vector<CurvePoint> insertion_f1_curve(std::span<const double> ratios) {
  std::vector<CurvePoint> curve;
  curve.reserve(ratios.size());
  for (double r : ratios) curve.push_back({r, insertion_theory(r).f1});
  return curve;
}

std::vector<CurvePoint> threshold_er_curve(
    std::span<const SoftLabelGrid> grids, std::span<const double> thresholds) {
  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  for (double threshold : thresholds) {
    SegmentStats total;
    for (const SoftLabelGrid& grid : grids) {
      const FrameActivityGrid reference =
          binarize_fixed(grid, BinarizationConfig::kGroundTruthThreshold);
      const FrameActivityGrid estimate = binarize_fixed(grid, threshold);
      total.merge(accumulate_stats(reference, estimate));
    }
    curve.push_back({threshold, error_rate(total)});
  }
  return curve;
}

std::string curve_to_tsv(std::span<const CurvePoint> points) {
  std::string out;
  char buf[96];
  for (const CurvePoint& point : points) {
    std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\n", point.x, point.y);
    out += buf;
  }
  return out;
}

}  // namespace sednoise
