#pragma once

// Brute-force segment-metric oracle, reimplemented straight from the
// definitions and kept independent of the library implementation. Operates
// on plain nested vectors: activity[segment][class] in {0, 1}.

#include <cstdint>
#include <vector>

namespace oracle {

struct Counts {
  std::vector<std::int64_t> tp, fp, fn;
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;
  std::int64_t insertions = 0;
  std::int64_t reference_active = 0;
};

using Activity = std::vector<std::vector<int>>;

inline Counts count(const Activity& reference, const Activity& estimate) {
  Counts out;
  const std::size_t segments = reference.size();
  const std::size_t classes = segments == 0 ? 0 : reference[0].size();
  out.tp.assign(classes, 0);
  out.fp.assign(classes, 0);
  out.fn.assign(classes, 0);

  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t k = 0; k < segments; ++k) {
      if (reference[k][c] == 1 && estimate[k][c] == 1) ++out.tp[c];
      if (reference[k][c] == 0 && estimate[k][c] == 1) ++out.fp[c];
      if (reference[k][c] == 1 && estimate[k][c] == 0) ++out.fn[c];
    }
  }

  for (std::size_t k = 0; k < segments; ++k) {
    std::int64_t fn_seg = 0;
    std::int64_t fp_seg = 0;
    std::int64_t n_seg = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      if (reference[k][c] == 1 && estimate[k][c] == 0) ++fn_seg;
      if (reference[k][c] == 0 && estimate[k][c] == 1) ++fp_seg;
      if (reference[k][c] == 1) ++n_seg;
    }
    out.substitutions += fn_seg < fp_seg ? fn_seg : fp_seg;
    out.deletions += fn_seg > fp_seg ? fn_seg - fp_seg : 0;
    out.insertions += fp_seg > fn_seg ? fp_seg - fn_seg : 0;
    out.reference_active += n_seg;
  }
  return out;
}

inline double micro_f1(const Counts& counts) {
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t c = 0; c < counts.tp.size(); ++c) {
    tp += counts.tp[c];
    fp += counts.fp[c];
    fn += counts.fn[c];
  }
  const std::int64_t denominator = 2 * tp + fp + fn;
  if (denominator == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denominator);
}

inline double macro_f1(const Counts& counts) {
  if (counts.tp.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < counts.tp.size(); ++c) {
    const std::int64_t denominator =
        2 * counts.tp[c] + counts.fp[c] + counts.fn[c];
    if (denominator != 0) {
      sum += 2.0 * static_cast<double>(counts.tp[c]) /
             static_cast<double>(denominator);
    }
  }
  return sum / static_cast<double>(counts.tp.size());
}

inline double error_rate(const Counts& counts) {
  return static_cast<double>(counts.substitutions + counts.deletions +
                             counts.insertions) /
         static_cast<double>(counts.reference_active);
}

}  // namespace oracle
