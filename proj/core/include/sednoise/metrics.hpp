#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/grid.hpp"

namespace sednoise {

/// Rasterizes one clip's events onto half-open segments [k*L, (k+1)*L).
/// A cell is active iff some instance of the class overlaps the segment with
/// strictly positive duration; boundary-touching events do not activate the
/// neighboring segment. Throws ValidationError for an unknown clip.
FrameActivityGrid events_to_grid(const AnnotationSet& set,
                                 const std::string& clip_id,
                                 double segment_length);

/// Segment-based counts between a reference and an estimate. Per-class
/// TP/FP/FN are cell-wise; substitutions/deletions/insertions aggregate the
/// per-segment rules S = min(FN_seg, FP_seg), D = max(0, FN_seg - FP_seg),
/// I = max(0, FP_seg - FN_seg) over class-summed per-segment errors, and
/// reference_active sums the reference-active count N(k). All totals are
/// additive under dataset concatenation.
struct SegmentStats {
  Vocabulary vocabulary;
  std::vector<std::int64_t> tp;
  std::vector<std::int64_t> fp;
  std::vector<std::int64_t> fn;
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;
  std::int64_t insertions = 0;
  std::int64_t reference_active = 0;

  std::int64_t total_tp() const;
  std::int64_t total_fp() const;
  std::int64_t total_fn() const;

  /// Adds another accumulator; throws ValidationError on vocabulary mismatch.
  void merge(const SegmentStats& other);
};

/// Counts one clip pair. Reference and estimate must agree on clip,
/// frame_length, vocabulary and segment count.
SegmentStats accumulate_stats(const FrameActivityGrid& reference,
                              const FrameActivityGrid& estimate);

/// 2*TP / (2*TP + FP + FN), pooled over classes; 0 when the denominator is 0.
double micro_f1(const SegmentStats& stats);

/// Mean over classes of the per-class F1; zero-denominator classes
/// contribute 0.
double macro_f1(const SegmentStats& stats);

/// (S + D + I) / N. Throws UndefinedMetricError when N = 0.
double error_rate(const SegmentStats& stats);

struct PerClassMetrics {
  std::string label;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double f1 = 0.0;
};

struct MetricsReport {
  double er = 0.0;
  double f1_micro = 0.0;
  double f1_macro = 0.0;
  std::vector<PerClassMetrics> per_class;
};

/// With `percent`, F1 fields are scaled by 100 and rounded to 3 decimals
/// (the usual display convention); ER is never scaled.
MetricsReport build_report(const SegmentStats& stats, bool percent = false);

/// Flat key-value report: {er, f1_micro, f1_macro, per_class: {label: ...}}.
std::string report_to_json(const MetricsReport& report);

/// Dataset-level accumulation: rasterizes every clip of the clip table for
/// both sets at the given segment length and merges the per-clip stats in
/// clip order. Both sets must share clips and vocabulary. The result is
/// independent of `threads`.
SegmentStats evaluate_annotations(const AnnotationSet& reference,
                                  const AnnotationSet& estimate,
                                  double segment_length, unsigned threads = 1);

}  // namespace sednoise
