#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sednoise {

/// Ordered, duplicate-free list of class labels. The position of a label
/// defines its class index; the ordering is part of the value and is kept
/// stable across serialization.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Keeps the given order. Throws ValidationError on duplicates.
  explicit Vocabulary(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label).has_value(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// One annotated sound event: a class label active on [onset, offset) seconds
/// of one clip. Valid instances satisfy 0 <= onset < offset <= clip duration.
struct EventInstance {
  std::string clip_id;
  std::string label;
  double onset = 0.0;
  double offset = 0.0;

  double duration() const { return offset - onset; }

  friend auto operator<=>(const EventInstance&, const EventInstance&) = default;
};

/// Sort key used by serialize_strong_labels: (clip_id, onset, offset, label).
bool serialization_less(const EventInstance& a, const EventInstance& b);

/// Immutable collection of event instances over a set of clips. Construction
/// validates every invariant: events reference known clips and vocabulary
/// labels, offsets exceed onsets and stay within the clip.
class AnnotationSet {
 public:
  AnnotationSet() = default;
  AnnotationSet(std::map<std::string, double> clips, Vocabulary vocabulary,
                std::vector<EventInstance> events);

  const std::map<std::string, double>& clips() const { return clips_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<EventInstance>& events() const { return events_; }

  /// Throws ValidationError for an unknown clip.
  double clip_duration(const std::string& clip_id) const;

 private:
  std::map<std::string, double> clips_;
  Vocabulary vocabulary_;
  std::vector<EventInstance> events_;
};

/// Per-clip soft labels: annotator confidence in [0, 1] on a uniform frame
/// lattice. Row-major [num_frames x vocabulary.size()].
struct SoftLabelGrid {
  std::string clip_id;
  double frame_length = 0.0;
  Vocabulary vocabulary;
  std::size_t num_frames = 0;
  std::vector<double> values;

  double value(std::size_t frame, std::size_t cls) const {
    return values[frame * vocabulary.size() + cls];
  }
  double& value(std::size_t frame, std::size_t cls) {
    return values[frame * vocabulary.size() + cls];
  }
  double duration() const {
    return static_cast<double>(num_frames) * frame_length;
  }
};

enum class NoiseKind { Deletion, Insertion, Substitution, Subjective };

std::string_view to_string(NoiseKind kind);
std::optional<NoiseKind> noise_kind_from_string(std::string_view name);

struct DurationStats {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Parses the clip table: rows `clip_id<TAB>duration_seconds`, duration > 0.
std::map<std::string, double> parse_clip_table(std::string_view clips_tsv);

/// Parses strong labels: rows `clip_id<TAB>onset<TAB>offset<TAB>label`,
/// headerless, LF-terminated. When no vocabulary is given, the vocabulary is
/// the sorted set of labels encountered. Throws ParseError with the offending
/// line for malformed rows and ValidationError for invariant violations.
AnnotationSet parse_strong_labels(
    std::string_view labels_tsv, std::string_view clips_tsv,
    std::optional<Vocabulary> vocabulary = std::nullopt);

/// Emits rows sorted by (clip_id, onset, offset, label), times with exactly
/// three fractional digits. parse(serialize(s)) == s for sets whose times are
/// already quantized to milliseconds.
std::string serialize_strong_labels(const AnnotationSet& set);

/// Parses soft labels: rows
/// `clip_id<TAB>frame_start<TAB>frame_end<TAB>label<TAB>probability`.
/// Frames of one clip share a uniform length and lie on the frame lattice;
/// absent (frame, label) cells default to probability 0. All grids carry the
/// file-wide sorted vocabulary. Grids are returned sorted by clip_id.
std::vector<SoftLabelGrid> parse_soft_labels(std::string_view soft_tsv);

/// Population mean / standard deviation of instance durations for every
/// vocabulary class. Throws ValidationError when a vocabulary class has no
/// instances.
std::map<std::string, DurationStats> class_duration_stats(
    const AnnotationSet& set);

}  // namespace sednoise
