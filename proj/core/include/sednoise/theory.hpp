#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/grid.hpp"

namespace sednoise {

/// Frame counts comparing an annotation against the ground truth:
/// active/inactive ground-truth frames, frames the annotation dropped, and
/// frames it added. The deletion ratio lives in [0, 1]; the insertion ratio
/// may exceed 1.
struct NoiseRatioProfile {
  std::int64_t active_frames = 0;    // |GT|
  std::int64_t inactive_frames = 0;  // |GT complement|
  std::int64_t deleted_frames = 0;   // |GT \ ANNO|
  std::int64_t inserted_frames = 0;  // |ANNO \ GT|

  double deletion_ratio() const {
    return static_cast<double>(deleted_frames) /
           static_cast<double>(active_frames);
  }
  double insertion_ratio() const {
    return static_cast<double>(inserted_frames) /
           static_cast<double>(active_frames);
  }
};

struct TheoryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double er = 0.0;
};

/// Ideal model under pure deletion noise: recall = 1 - r, precision = 1,
/// F1 = 2(1 - r) / (2 - r), ER = r. Requires r in [0, 1].
TheoryMetrics deletion_theory(double deletion_ratio);

/// Ideal model under pure insertion noise: recall = 1,
/// precision = 1 / (1 + r), F1 = 2 / (2 + r), ER = r. Requires r >= 0.
TheoryMetrics insertion_theory(double insertion_ratio);

/// Cell counts between a ground-truth grid and an annotation grid of the
/// same shape. Throws ValidationError when shapes differ or the ground
/// truth has no active cell (ratios undefined).
NoiseRatioProfile profile_from_grids(const FrameActivityGrid& ground_truth,
                                     const FrameActivityGrid& annotation);

struct IdealModelCheck {
  NoiseRatioProfile profile;
  TheoryMetrics theory;    // closed form for the detected pure regime
  TheoryMetrics measured;  // segment metrics with the annotation as estimate
};

/// Evaluates the closed form and, independently, the segment metrics at
/// segment length = frame length, for a pure-deletion or pure-insertion
/// pair. The two must agree within 1e-12 on F1 and ER. Mixed profiles
/// (both ratios nonzero) are rejected.
IdealModelCheck verify_ideal_model(const FrameActivityGrid& ground_truth,
                                   const FrameActivityGrid& annotation);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

/// F1 of the deletion closed form over the given ratios.
std::vector<CurvePoint> deletion_f1_curve(std::span<const double> ratios);

/// F1 of the insertion closed form over the given ratios.
std::vector<CurvePoint> insertion_f1_curve(std::span<const double> ratios);

/// Error rate of binarizing at each threshold against the ground truth
/// (threshold 0.5), accumulated over all grids at segment length =
/// frame length. Zero exactly at threshold 0.5.
std::vector<CurvePoint> threshold_er_curve(
    std::span<const SoftLabelGrid> grids, std::span<const double> thresholds);

/// Plot-ready two-column text, one "x<TAB>y" row per point, six decimals.
std::string curve_to_tsv(std::span<const CurvePoint> points);

}  // namespace sednoise
