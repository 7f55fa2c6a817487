#include "sednoise/annotation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "sednoise/errors.hpp"

namespace sednoise {

namespace {

// Splits into lines on LF; a trailing CR is stripped; empty lines are
// skipped. Calls fn(line, line_number) with 1-based numbering.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line, line_number);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

double parse_seconds(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(token) + "'", line);
  }
  return value;
}

void expect_fields(const std::vector<std::string_view>& fields,
                   std::size_t expected, std::size_t line) {
  if (fields.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) +
                         " tab-separated fields, got " +
                         std::to_string(fields.size()),
                     line);
  }
}

std::string format_seconds(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw ValidationError("duplicate vocabulary label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool serialization_less(const EventInstance& a, const EventInstance& b) {
  return std::tie(a.clip_id, a.onset, a.offset, a.label) <
         std::tie(b.clip_id, b.onset, b.offset, b.label);
}

AnnotationSet::AnnotationSet(std::map<std::string, double> clips,
                             Vocabulary vocabulary,
                             std::vector<EventInstance> events)
    : clips_(std::move(clips)),
      vocabulary_(std::move(vocabulary)),
      events_(std::move(events)) {
  for (const auto& [clip_id, duration] : clips_) {
    if (!(duration > 0.0)) {
      throw ValidationError("clip '" + clip_id + "' has non-positive duration");
    }
  }
  for (const EventInstance& event : events_) {
    const auto clip = clips_.find(event.clip_id);
    if (clip == clips_.end()) {
      throw ValidationError("unknown clip_id '" + event.clip_id + "'");
    }
    if (event.onset < 0.0) {
      throw ValidationError("negative onset for clip '" + event.clip_id + "'");
    }
    if (!(event.offset > event.onset)) {
      throw ValidationError("offset <= onset for clip '" + event.clip_id + "'");
    }
    if (event.offset > clip->second) {
      throw ValidationError("offset " + format_seconds(event.offset) +
                            " exceeds duration " +
                            format_seconds(clip->second) + " of clip '" +
                            event.clip_id + "'");
    }
    if (!vocabulary_.contains(event.label)) {
      throw ValidationError("label '" + event.label + "' not in vocabulary");
    }
  }
}

double AnnotationSet::clip_duration(const std::string& clip_id) const {
  const auto it = clips_.find(clip_id);
  if (it == clips_.end()) {
    throw ValidationError("unknown clip_id '" + clip_id + "'");
  }
  return it->second;
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Deletion: return "deletion";
    case NoiseKind::Insertion: return "insertion";
    case NoiseKind::Substitution: return "substitution";
    case NoiseKind::Subjective: return "subjective";
  }
  return "unknown";
}

std::optional<NoiseKind> noise_kind_from_string(std::string_view name) {
  if (name == "deletion") return NoiseKind::Deletion;
  if (name == "insertion") return NoiseKind::Insertion;
  if (name == "substitution") return NoiseKind::Substitution;
  if (name == "subjective") return NoiseKind::Subjective;
  return std::nullopt;
}

std::map<std::string, double> parse_clip_table(std::string_view clips_tsv) {
  std::map<std::string, double> clips;
  for_each_line(clips_tsv, [&](std::string_view line, std::size_t n) {
    const auto fields = split_tabs(line);
    expect_fields(fields, 2, n);
    const std::string clip_id(fields[0]);
    const double duration = parse_seconds(fields[1], n);
    if (!(duration > 0.0)) {
      throw ValidationError("line " + std::to_string(n) +
                            ": clip duration must be positive");
    }
    if (!clips.emplace(clip_id, duration).second) {
      throw ValidationError("line " + std::to_string(n) +
                            ": duplicate clip_id '" + clip_id + "'");
    }
  });
  return clips;
}

AnnotationSet parse_strong_labels(std::string_view labels_tsv,
                                  std::string_view clips_tsv,
                                  std::optional<Vocabulary> vocabulary) {
  const std::map<std::string, double> clips = parse_clip_table(clips_tsv);

  std::vector<EventInstance> events;
  std::set<std::string> seen_labels;
  for_each_line(labels_tsv, [&](std::string_view line, std::size_t n) {
    const auto fields = split_tabs(line);
    expect_fields(fields, 4, n);
    EventInstance event;
    event.clip_id = std::string(fields[0]);
    event.onset = parse_seconds(fields[1], n);
    event.offset = parse_seconds(fields[2], n);
    event.label = std::string(fields[3]);

    const auto clip = clips.find(event.clip_id);
    if (clip == clips.end()) {
      throw ValidationError("line " + std::to_string(n) +
                            ": unknown clip_id '" + event.clip_id + "'");
    }
    if (event.onset < 0.0) {
      throw ValidationError("line " + std::to_string(n) + ": negative onset");
    }
    if (!(event.offset > event.onset)) {
      throw ValidationError("line " + std::to_string(n) + ": offset <= onset");
    }
    if (event.offset > clip->second) {
      throw ValidationError("line " + std::to_string(n) + ": offset " +
                            format_seconds(event.offset) +
                            " exceeds clip duration " +
                            format_seconds(clip->second));
    }
    if (vocabulary && !vocabulary->contains(event.label)) {
      throw ValidationError("line " + std::to_string(n) + ": label '" +
                            event.label + "' not in vocabulary");
    }
    seen_labels.insert(event.label);
    events.push_back(std::move(event));
  });

  Vocabulary vocab =
      vocabulary ? std::move(*vocabulary)
                 : Vocabulary(std::vector<std::string>(seen_labels.begin(),
                                                       seen_labels.end()));
  return AnnotationSet(clips, std::move(vocab), std::move(events));
}

std::string serialize_strong_labels(const AnnotationSet& set) {
  std::vector<EventInstance> events = set.events();
  std::sort(events.begin(), events.end(), serialization_less);
  std::string out;
  for (const EventInstance& event : events) {
    out += event.clip_id;
    out += '\t';
    out += format_seconds(event.onset);
    out += '\t';
    out += format_seconds(event.offset);
    out += '\t';
    out += event.label;
    out += '\n';
  }
  return out;
}

namespace {

struct SoftRow {
  double start = 0.0;
  double end = 0.0;
  std::string label;
  double probability = 0.0;
  std::size_t line = 0;
};

}  // namespace

std::vector<SoftLabelGrid> parse_soft_labels(std::string_view soft_tsv) {
  std::map<std::string, std::vector<SoftRow>> rows_by_clip;
  std::set<std::string> labels;

  for_each_line(soft_tsv, [&](std::string_view line, std::size_t n) {
    const auto fields = split_tabs(line);
    expect_fields(fields, 5, n);
    SoftRow row;
    row.start = parse_seconds(fields[1], n);
    row.end = parse_seconds(fields[2], n);
    row.label = std::string(fields[3]);
    row.probability = parse_seconds(fields[4], n);
    row.line = n;
    if (row.probability < 0.0 || row.probability > 1.0) {
      throw ValidationError("line " + std::to_string(n) +
                            ": probability outside [0, 1]");
    }
    if (row.start < 0.0 || !(row.end > row.start)) {
      throw ValidationError("line " + std::to_string(n) +
                            ": frame_end must exceed frame_start >= 0");
    }
    labels.insert(row.label);
    rows_by_clip[std::string(fields[0])].push_back(std::move(row));
  });

  const Vocabulary vocabulary(
      std::vector<std::string>(labels.begin(), labels.end()));

  std::vector<SoftLabelGrid> grids;
  for (auto& [clip_id, rows] : rows_by_clip) {
    const double frame_length = rows.front().end - rows.front().start;

    // Tolerance absorbs decimal-text representation jitter only; genuinely
    // different frame lengths are rejected.
    constexpr double kTol = 1e-6;
    std::size_t num_frames = 0;
    std::vector<std::pair<std::size_t, const SoftRow*>> cells;
    cells.reserve(rows.size());
    for (const SoftRow& row : rows) {
      if (std::abs((row.end - row.start) - frame_length) > kTol) {
        throw ValidationError("line " + std::to_string(row.line) +
                              ": non-uniform frame length within clip '" +
                              clip_id + "'");
      }
      const double position = row.start / frame_length;
      const auto frame = static_cast<std::size_t>(std::llround(position));
      if (std::abs(position - static_cast<double>(frame)) > kTol) {
        throw ValidationError("line " + std::to_string(row.line) +
                              ": frame_start not on the frame lattice of clip '" +
                              clip_id + "'");
      }
      num_frames = std::max(num_frames, frame + 1);
      cells.emplace_back(frame, &row);
    }

    SoftLabelGrid grid;
    grid.clip_id = clip_id;
    grid.frame_length = frame_length;
    grid.vocabulary = vocabulary;
    grid.num_frames = num_frames;
    grid.values.assign(num_frames * vocabulary.size(), 0.0);

    std::set<std::pair<std::size_t, std::size_t>> filled;
    for (const auto& [frame, row] : cells) {
      const std::size_t cls = *vocabulary.index_of(row->label);
      if (!filled.emplace(frame, cls).second) {
        throw ValidationError("line " + std::to_string(row->line) +
                              ": overlapping frames for (clip '" + clip_id +
                              "', label '" + row->label + "')");
      }
      grid.value(frame, cls) = row->probability;
    }
    grids.push_back(std::move(grid));
  }
  return grids;
}

std::map<std::string, DurationStats> class_duration_stats(
    const AnnotationSet& set) {
  std::map<std::string, std::vector<double>> durations;
  for (const EventInstance& event : set.events()) {
    durations[event.label].push_back(event.duration());
  }

  std::map<std::string, DurationStats> stats;
  for (const std::string& label : set.vocabulary().labels()) {
    const auto it = durations.find(label);
    if (it == durations.end()) {
      throw ValidationError("no instances for class '" + label + "'");
    }
    const std::vector<double>& d = it->second;
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(d.size());
    double variance = 0.0;
    for (double x : d) variance += (x - mean) * (x - mean);
    variance /= static_cast<double>(d.size());
    stats[label] = DurationStats{mean, std::sqrt(variance)};
  }
  return stats;
}

}  // namespace sednoise
