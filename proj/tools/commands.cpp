#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <vector>

#include "manifest.hpp"
#include "sednoise/annotation.hpp"
#include "sednoise/binarize.hpp"
#include "sednoise/errors.hpp"
#include "sednoise/losses.hpp"
#include "sednoise/metrics.hpp"
#include "sednoise/noise.hpp"
#include "sednoise/parallel.hpp"
#include "sednoise/theory.hpp"

namespace sednoise::cli {

namespace {

namespace fs = std::filesystem;

int fail_input(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitInputError;
}

int fail_arguments(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitBadArguments;
}

std::vector<double> expand_range(double start, double end, double step) {
  const auto count =
      static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> xs;
  xs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs.push_back(start + static_cast<double>(i) * step);
  }
  return xs;
}

bool parse_grid_spec(const std::string& text, double& start, double& end,
                     double& step) {
  const std::size_t first = text.find(':');
  const std::size_t second =
      first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) return false;
  try {
    std::size_t used = 0;
    start = std::stod(text.substr(0, first), &used);
    if (used != first) return false;
    const std::string mid = text.substr(first + 1, second - first - 1);
    end = std::stod(mid, &used);
    if (used != mid.size()) return false;
    const std::string tail = text.substr(second + 1);
    step = std::stod(tail, &used);
    if (used != tail.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", rate);
  return buf;
}

}  // namespace

int run_inject(const InjectOptions& options) {
  const auto kind = noise_kind_from_string(options.kind);
  if (!kind) {
    return fail_arguments("unknown noise kind '" + options.kind + "'");
  }
  if (options.rate.has_value() == !options.rate_grid.empty()) {
    return fail_arguments("exactly one of --rate / --rate-grid is required");
  }

  std::vector<double> rates;
  if (options.rate) {
    rates.push_back(*options.rate);
  } else {
    double start = 0.0, end = 0.0, step = 0.0;
    if (!parse_grid_spec(options.rate_grid, start, end, step) ||
        !(step > 0.0) || start > end) {
      return fail_arguments("--rate-grid expects start:end:step with step > 0");
    }
    rates = expand_range(start, end, step);
  }
  for (double rate : rates) {
    try {
      NoiseConfig{*kind, rate, options.seed}.validate();
    } catch (const ValidationError& e) {
      return fail_arguments(e.what());
    }
  }

  std::string labels_text;
  std::string clips_text;
  AnnotationSet set;
  try {
    labels_text = read_file(options.labels_path);
    clips_text = read_file(options.clips_path);
    set = parse_strong_labels(labels_text, clips_text);
  } catch (const std::exception& e) {
    return fail_input(e);
  }

  const bool grid_mode = !options.rate_grid.empty();
  try {
    if (grid_mode) fs::create_directories(options.out_path);
    for (double rate : rates) {
      const NoiseConfig config{*kind, rate, options.seed};
      const AnnotationSet noisy = inject(set, config, options.threads);
      const fs::path out =
          grid_mode ? fs::path(options.out_path) /
                          (options.kind + "_rate" + format_rate(rate) + ".tsv")
                    : fs::path(options.out_path);
      write_file(out, serialize_strong_labels(noisy));

      RunManifest manifest;
      manifest.subcommand = "inject";
      manifest.config = {{"kind", options.kind},
                         {"rate", rate},
                         {"seed", options.seed},
                         {"labels", options.labels_path},
                         {"clips", options.clips_path}};
      manifest.inputs[options.labels_path] = content_digest(labels_text);
      manifest.inputs[options.clips_path] = content_digest(clips_text);
      manifest.output = out.string();
      write_manifest(out, manifest);
    }
  } catch (const std::exception& e) {
    return fail_input(e);
  }
  return kExitOk;
}

int run_binarize(const BinarizeOptions& options) {
  if (options.threshold.has_value() == options.relax.has_value()) {
    return fail_arguments("exactly one of --threshold / --relax is required");
  }
  BinarizationConfig config;
  if (options.threshold) {
    config.mode = BinarizationConfig::Mode::Fixed;
    config.threshold = *options.threshold;
  } else {
    config.mode = BinarizationConfig::Mode::Relaxed;
    config.relaxation = *options.relax;
    config.seed = options.seed;
  }
  try {
    config.validate();
  } catch (const ValidationError& e) {
    return fail_arguments(e.what());
  }

  std::string soft_text;
  std::vector<SoftLabelGrid> grids;
  try {
    soft_text = read_file(options.soft_path);
    grids = parse_soft_labels(soft_text);
  } catch (const std::exception& e) {
    return fail_input(e);
  }

  try {
    std::vector<AnnotationSet> fragments(grids.size());
    parallel_for(grids.size(), options.threads, [&](std::size_t i) {
      fragments[i] = grid_to_events(binarize(grids[i], config));
    });

    std::map<std::string, double> clips;
    std::vector<EventInstance> events;
    Vocabulary vocabulary =
        grids.empty() ? Vocabulary{} : grids.front().vocabulary;
    for (const AnnotationSet& fragment : fragments) {
      clips.insert(fragment.clips().begin(), fragment.clips().end());
      events.insert(events.end(), fragment.events().begin(),
                    fragment.events().end());
    }
    const AnnotationSet merged(std::move(clips), std::move(vocabulary),
                               std::move(events));
    write_file(options.out_path, serialize_strong_labels(merged));

    RunManifest manifest;
    manifest.subcommand = "binarize";
    manifest.config = {{"soft", options.soft_path}};
    if (options.threshold) {
      manifest.config["mode"] = "fixed";
      manifest.config["threshold"] = *options.threshold;
    } else {
      manifest.config["mode"] = "relaxed";
      manifest.config["relax"] = *options.relax;
      manifest.config["seed"] = options.seed;
    }
    manifest.inputs[options.soft_path] = content_digest(soft_text);
    manifest.output = options.out_path;
    write_manifest(options.out_path, manifest);
  } catch (const std::exception& e) {
    return fail_input(e);
  }
  return kExitOk;
}

int run_evaluate(const EvaluateOptions& options) {
  if (!(options.segment_length > 0.0)) {
    return fail_arguments("--segment-length must be positive");
  }

  std::string ref_text, est_text, clips_text;
  AnnotationSet reference, estimate;
  try {
    ref_text = read_file(options.ref_path);
    est_text = read_file(options.est_path);
    clips_text = read_file(options.clips_path);
    reference = parse_strong_labels(ref_text, clips_text);
    estimate = parse_strong_labels(est_text, clips_text);
  } catch (const std::exception& e) {
    return fail_input(e);
  }

  // Evaluate over the vocabulary union; report asymmetric labels.
  std::set<std::string> union_labels(reference.vocabulary().labels().begin(),
                                     reference.vocabulary().labels().end());
  union_labels.insert(estimate.vocabulary().labels().begin(),
                      estimate.vocabulary().labels().end());
  for (const std::string& label : union_labels) {
    const bool in_ref = reference.vocabulary().contains(label);
    const bool in_est = estimate.vocabulary().contains(label);
    if (!in_ref || !in_est) {
      std::cerr << "warning: label '" << label << "' only in "
                << (in_ref ? "reference" : "estimate") << "\n";
    }
  }
  const Vocabulary vocabulary(
      std::vector<std::string>(union_labels.begin(), union_labels.end()));

  try {
    const AnnotationSet ref_unified(reference.clips(), vocabulary,
                                    reference.events());
    const AnnotationSet est_unified(estimate.clips(), vocabulary,
                                    estimate.events());
    const SegmentStats stats = evaluate_annotations(
        ref_unified, est_unified, options.segment_length, options.threads);
    const MetricsReport report = build_report(stats, options.percent);
    write_file(options.out_path, report_to_json(report));

    RunManifest manifest;
    manifest.subcommand = "evaluate";
    manifest.config = {{"ref", options.ref_path},
                       {"est", options.est_path},
                       {"clips", options.clips_path},
                       {"segment_length", options.segment_length},
                       {"percent", options.percent}};
    manifest.inputs[options.ref_path] = content_digest(ref_text);
    manifest.inputs[options.est_path] = content_digest(est_text);
    manifest.inputs[options.clips_path] = content_digest(clips_text);
    manifest.output = options.out_path;
    write_manifest(options.out_path, manifest);
  } catch (const UndefinedMetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndefinedMetric;
  } catch (const std::exception& e) {
    return fail_input(e);
  }
  return kExitOk;
}

int run_theory(const TheoryOptions& options) {
  double start = 0.0, end = 0.0, step = 0.0;
  if (options.curve == "deletion-f1") {
    start = options.start.value_or(0.0);
    end = options.end.value_or(1.0);
    step = options.step.value_or(0.05);
    if (!(step > 0.0) || start > end || start < 0.0 || end > 1.0) {
      return fail_arguments("deletion ratios must span [0, 1] with step > 0");
    }
  } else if (options.curve == "insertion-f1") {
    start = options.start.value_or(0.0);
    end = options.end.value_or(2.0);
    step = options.step.value_or(0.1);
    if (!(step > 0.0) || start > end || start < 0.0) {
      return fail_arguments("insertion ratios must be >= 0 with step > 0");
    }
  } else if (options.curve == "threshold-er") {
    start = options.start.value_or(0.1);
    end = options.end.value_or(0.9);
    step = options.step.value_or(0.05);
    if (options.soft_path.empty()) {
      return fail_arguments("threshold-er requires --soft");
    }
    if (!(step > 0.0) || start > end || !(start > 0.0) || !(end < 1.0)) {
      return fail_arguments("thresholds must lie in (0, 1) with step > 0");
    }
  } else {
    return fail_arguments("unknown curve '" + options.curve + "'");
  }

  const std::vector<double> xs = expand_range(start, end, step);
  std::vector<CurvePoint> curve;
  RunManifest manifest;
  manifest.subcommand = "theory";
  manifest.config = {{"curve", options.curve},
                     {"start", start},
                     {"end", end},
                     {"step", step}};

  try {
    if (options.curve == "deletion-f1") {
      curve = deletion_f1_curve(xs);
    } else if (options.curve == "insertion-f1") {
      curve = insertion_f1_curve(xs);
    } else {
      std::string soft_text;
      std::vector<SoftLabelGrid> grids;
      try {
        soft_text = read_file(options.soft_path);
        grids = parse_soft_labels(soft_text);
      } catch (const std::exception& e) {
        return fail_input(e);
      }
      manifest.config["soft"] = options.soft_path;
      manifest.inputs[options.soft_path] = content_digest(soft_text);
      curve = threshold_er_curve(grids, xs);
    }
    write_file(options.out_path, curve_to_tsv(curve));
    manifest.output = options.out_path;
    write_manifest(options.out_path, manifest);
  } catch (const UndefinedMetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndefinedMetric;
  } catch (const std::exception& e) {
    return fail_input(e);
  }
  return kExitOk;
}

int run_loss_fixtures(const LossFixturesOptions& options) {
  std::string spec_text;
  try {
    spec_text = read_file(options.spec_path);
  } catch (const std::exception& e) {
    return fail_input(e);
  }

  std::vector<LossFixtureRecord> records;
  try {
    records = parse_loss_fixture_spec(spec_text);
  } catch (const ValidationError& e) {
    return fail_arguments(e.what());
  }

  constexpr double kStep = 1e-6;
  constexpr double kThreshold = 1e-6;
  try {
    const double worst = fixture_self_check(records, kStep);
    if (worst > kThreshold) {
      std::cerr << "error: gradient self-check failed, max relative error "
                << worst << " exceeds " << kThreshold << "\n";
      return kExitSelfCheckFailed;
    }
    write_file(options.out_path, loss_fixture_report(records));

    RunManifest manifest;
    manifest.subcommand = "loss-fixtures";
    manifest.config = {{"spec", options.spec_path},
                       {"grad_check_step", kStep},
                       {"grad_check_threshold", kThreshold}};
    manifest.inputs[options.spec_path] = content_digest(spec_text);
    manifest.output = options.out_path;
    write_manifest(options.out_path, manifest);
  } catch (const std::exception& e) {
    return fail_input(e);
  }
  return kExitOk;
}

}  // namespace sednoise::cli
