#include "sednoise/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "sednoise/errors.hpp"
#include "sednoise/parallel.hpp"

namespace sednoise {

namespace {

// Guard against decimal-text representation jitter in segment arithmetic.
constexpr double kTimeTol = 1e-9;

double f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  const std::int64_t denominator = 2 * tp + fp + fn;
  if (denominator == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denominator);
}

}  // namespace

FrameActivityGrid make_empty_grid(std::string clip_id, double duration,
                                  double frame_length, Vocabulary vocabulary) {
  if (!(frame_length > 0.0)) {
    throw ValidationError("segment length must be positive");
  }
  if (!(duration > 0.0)) {
    throw ValidationError("clip duration must be positive");
  }
  FrameActivityGrid grid;
  grid.clip_id = std::move(clip_id);
  grid.frame_length = frame_length;
  grid.vocabulary = std::move(vocabulary);
  const double segments = std::ceil(duration / frame_length - kTimeTol);
  grid.num_segments = segments < 1.0 ? 1 : static_cast<std::size_t>(segments);
  grid.active.assign(grid.num_segments * grid.vocabulary.size(), 0);
  return grid;
}

FrameActivityGrid events_to_grid(const AnnotationSet& set,
                                 const std::string& clip_id,
                                 double segment_length) {
  const double duration = set.clip_duration(clip_id);
  FrameActivityGrid grid =
      make_empty_grid(clip_id, duration, segment_length, set.vocabulary());

  const std::size_t last = grid.num_segments - 1;
  for (const EventInstance& event : set.events()) {
    if (event.clip_id != clip_id) continue;
    const std::size_t cls = *grid.vocabulary.index_of(event.label);
    // Candidate range padded by one segment; the per-segment overlap test
    // decides, so lattice jitter in the division cannot flip activation.
    const double lo = std::floor(event.onset / segment_length) - 1.0;
    const double hi = std::ceil(event.offset / segment_length);
    const std::size_t k_lo = lo < 0.0 ? 0 : static_cast<std::size_t>(lo);
    const std::size_t k_hi = std::min(last, static_cast<std::size_t>(hi));
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const double seg_start = static_cast<double>(k) * segment_length;
      const double seg_end = static_cast<double>(k + 1) * segment_length;
      const double overlap =
          std::min(event.offset, seg_end) - std::max(event.onset, seg_start);
      if (overlap > kTimeTol) grid.set_active(k, cls, true);
    }
  }
  return grid;
}

std::int64_t SegmentStats::total_tp() const {
  std::int64_t sum = 0;
  for (std::int64_t x : tp) sum += x;
  return sum;
}

std::int64_t SegmentStats::total_fp() const {
  std::int64_t sum = 0;
  for (std::int64_t x : fp) sum += x;
  return sum;
}

std::int64_t SegmentStats::total_fn() const {
  std::int64_t sum = 0;
  for (std::int64_t x : fn) sum += x;
  return sum;
}

void SegmentStats::merge(const SegmentStats& other) {
  if (vocabulary.empty() && tp.empty()) {
    *this = other;
    return;
  }
  if (!(vocabulary == other.vocabulary)) {
    throw ValidationError("cannot merge stats over different vocabularies");
  }
  for (std::size_t c = 0; c < tp.size(); ++c) {
    tp[c] += other.tp[c];
    fp[c] += other.fp[c];
    fn[c] += other.fn[c];
  }
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  reference_active += other.reference_active;
}

SegmentStats accumulate_stats(const FrameActivityGrid& reference,
                              const FrameActivityGrid& estimate) {
  if (reference.clip_id != estimate.clip_id) {
    throw ValidationError("reference/estimate clip mismatch");
  }
  if (!(reference.vocabulary == estimate.vocabulary)) {
    throw ValidationError("reference/estimate vocabulary mismatch");
  }
  if (reference.num_segments != estimate.num_segments ||
      reference.frame_length != estimate.frame_length) {
    throw ValidationError("reference/estimate segment shape mismatch");
  }

  const std::size_t num_classes = reference.vocabulary.size();
  SegmentStats stats;
  stats.vocabulary = reference.vocabulary;
  stats.tp.assign(num_classes, 0);
  stats.fp.assign(num_classes, 0);
  stats.fn.assign(num_classes, 0);

  for (std::size_t k = 0; k < reference.num_segments; ++k) {
    std::int64_t fn_seg = 0;
    std::int64_t fp_seg = 0;
    std::int64_t n_seg = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      const bool ref = reference.is_active(k, c);
      const bool est = estimate.is_active(k, c);
      if (ref && est) ++stats.tp[c];
      if (!ref && est) {
        ++stats.fp[c];
        ++fp_seg;
      }
      if (ref && !est) {
        ++stats.fn[c];
        ++fn_seg;
      }
      if (ref) ++n_seg;
    }
    stats.substitutions += std::min(fn_seg, fp_seg);
    stats.deletions += std::max<std::int64_t>(0, fn_seg - fp_seg);
    stats.insertions += std::max<std::int64_t>(0, fp_seg - fn_seg);
    stats.reference_active += n_seg;
  }
  return stats;
}

double micro_f1(const SegmentStats& stats) {
  return f1_from_counts(stats.total_tp(), stats.total_fp(), stats.total_fn());
}

double macro_f1(const SegmentStats& stats) {
  if (stats.tp.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < stats.tp.size(); ++c) {
    sum += f1_from_counts(stats.tp[c], stats.fp[c], stats.fn[c]);
  }
  return sum / static_cast<double>(stats.tp.size());
}

double error_rate(const SegmentStats& stats) {
  if (stats.reference_active == 0) {
    throw UndefinedMetricError(
        "error rate undefined: reference has no active segments");
  }
  return static_cast<double>(stats.substitutions + stats.deletions +
                             stats.insertions) /
         static_cast<double>(stats.reference_active);
}

namespace {

double scale_percent(double f1) { return std::round(f1 * 100000.0) / 1000.0; }

}  // namespace

MetricsReport build_report(const SegmentStats& stats, bool percent) {
  MetricsReport report;
  report.er = error_rate(stats);
  report.f1_micro = micro_f1(stats);
  report.f1_macro = macro_f1(stats);
  for (std::size_t c = 0; c < stats.tp.size(); ++c) {
    PerClassMetrics entry;
    entry.label = stats.vocabulary.label(c);
    entry.tp = stats.tp[c];
    entry.fp = stats.fp[c];
    entry.fn = stats.fn[c];
    entry.f1 = f1_from_counts(stats.tp[c], stats.fp[c], stats.fn[c]);
    report.per_class.push_back(std::move(entry));
  }
  if (percent) {
    report.f1_micro = scale_percent(report.f1_micro);
    report.f1_macro = scale_percent(report.f1_macro);
    for (PerClassMetrics& entry : report.per_class) {
      entry.f1 = scale_percent(entry.f1);
    }
  }
  return report;
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::json per_class = nlohmann::json::object();
  for (const PerClassMetrics& entry : report.per_class) {
    per_class[entry.label] = {{"tp", entry.tp},
                              {"fp", entry.fp},
                              {"fn", entry.fn},
                              {"f1", entry.f1}};
  }
  const nlohmann::json doc = {{"er", report.er},
                              {"f1_micro", report.f1_micro},
                              {"f1_macro", report.f1_macro},
                              {"per_class", per_class}};
  return doc.dump(2) + "\n";
}

SegmentStats evaluate_annotations(const AnnotationSet& reference,
                                  const AnnotationSet& estimate,
                                  double segment_length, unsigned threads) {
  if (reference.clips() != estimate.clips()) {
    throw ValidationError("reference/estimate clip tables differ");
  }
  if (!(reference.vocabulary() == estimate.vocabulary())) {
    throw ValidationError("reference/estimate vocabularies differ");
  }

  std::vector<const std::string*> clip_ids;
  clip_ids.reserve(reference.clips().size());
  for (const auto& [clip_id, duration] : reference.clips()) {
    clip_ids.push_back(&clip_id);
  }

  std::vector<SegmentStats> per_clip(clip_ids.size());
  parallel_for(clip_ids.size(), threads, [&](std::size_t i) {
    const FrameActivityGrid ref =
        events_to_grid(reference, *clip_ids[i], segment_length);
    const FrameActivityGrid est =
        events_to_grid(estimate, *clip_ids[i], segment_length);
    per_clip[i] = accumulate_stats(ref, est);
  });

  SegmentStats total;
  for (const SegmentStats& stats : per_clip) total.merge(stats);
  return total;
}

}  // namespace sednoise
