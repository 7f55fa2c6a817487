#include "sednoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

#include "sednoise/errors.hpp"
#include "sednoise/parallel.hpp"
#include "sednoise/rng.hpp"

namespace sednoise {

void NoiseConfig::validate() const {
  switch (kind) {
    case NoiseKind::Deletion:
    case NoiseKind::Substitution:
      if (!(rate >= 0.0 && rate <= 1.0)) {
        throw ValidationError(std::string(to_string(kind)) +
                              " rate must lie in [0, 1]");
      }
      break;
    case NoiseKind::Insertion:
      if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw ValidationError("insertion rate must be >= 0");
      }
      break;
    case NoiseKind::Subjective:
      if (!(rate > 0.0 && rate <= 1.0)) {
        throw ValidationError("overlap rate must lie in (0, 1]");
      }
      break;
  }
}

std::size_t noisy_count(std::size_t population, double rate) {
  const double scaled = rate * static_cast<double>(population);
  return static_cast<std::size_t>(std::floor(scaled + 1e-9));
}

namespace {

// Event indices of each class, in canonical (clip_id, onset, offset) order,
// so sampling depends only on the annotation content, not on input row
// order.
std::vector<std::vector<std::size_t>> indices_by_class(
    const AnnotationSet& set) {
  std::vector<std::vector<std::size_t>> per_class(set.vocabulary().size());
  const auto& events = set.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    per_class[*set.vocabulary().index_of(events[i].label)].push_back(i);
  }
  for (auto& indices : per_class) {
    std::sort(indices.begin(), indices.end(),
              [&events](std::size_t a, std::size_t b) {
                return std::tie(events[a].clip_id, events[a].onset,
                                events[a].offset, a) <
                       std::tie(events[b].clip_id, events[b].onset,
                                events[b].offset, b);
              });
  }
  return per_class;
}

// First `count` entries of a uniform permutation (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(
    std::vector<std::size_t> pool, std::size_t count, PortableRng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

AnnotationSet inject_deletion(const AnnotationSet& set, double rate,
                              std::uint64_t seed, unsigned threads) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ValidationError("deletion rate must lie in [0, 1]");
  }
  const auto per_class = indices_by_class(set);
  std::vector<std::uint8_t> removed(set.events().size(), 0);

  parallel_for(per_class.size(), threads, [&](std::size_t c) {
    const std::size_t count = noisy_count(per_class[c].size(), rate);
    if (count == 0) return;
    PortableRng rng = substream(seed, "noise.deletion", c);
    for (std::size_t index :
         sample_without_replacement(per_class[c], count, rng)) {
      removed[index] = 1;
    }
  });

  std::vector<EventInstance> survivors;
  survivors.reserve(set.events().size());
  for (std::size_t i = 0; i < set.events().size(); ++i) {
    if (!removed[i]) survivors.push_back(set.events()[i]);
  }
  return AnnotationSet(set.clips(), set.vocabulary(), std::move(survivors));
}

AnnotationSet inject_insertion(const AnnotationSet& set, double rate,
                               std::uint64_t seed, unsigned threads) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ValidationError("insertion rate must be >= 0");
  }
  if (rate == 0.0 || set.vocabulary().empty()) {
    return set;
  }
  // Throws when some vocabulary class has no instances.
  const auto stats = class_duration_stats(set);

  std::vector<const std::string*> clip_ids;
  std::vector<double> clip_durations;
  for (const auto& [clip_id, duration] : set.clips()) {
    clip_ids.push_back(&clip_id);
    clip_durations.push_back(duration);
  }
  if (clip_ids.empty()) {
    throw ValidationError("cannot insert events into an empty clip table");
  }

  const auto per_class = indices_by_class(set);
  std::vector<std::vector<EventInstance>> additions(per_class.size());

  parallel_for(per_class.size(), threads, [&](std::size_t c) {
    const std::size_t count = noisy_count(per_class[c].size(), rate);
    if (count == 0) return;
    const std::string& label = set.vocabulary().label(c);
    const DurationStats& duration_stats = stats.at(label);
    PortableRng rng = substream(seed, "noise.insertion", c);
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t clip =
          static_cast<std::size_t>(rng.next_below(clip_ids.size()));
      const double clip_duration = clip_durations[clip];
      const double onset = rng.uniform(0.0, clip_duration);
      // Redraw sub-0.1 s durations; after a bounded number of attempts
      // (degenerate stats, e.g. stddev 0 around a tiny mean) fall back to
      // the 0.1 s floor.
      double duration = rng.gaussian(duration_stats.mean, duration_stats.stddev);
      for (int attempt = 1; attempt < 1000 && duration < 0.1; ++attempt) {
        duration = rng.gaussian(duration_stats.mean, duration_stats.stddev);
      }
      if (duration < 0.1) duration = 0.1;
      const double offset = std::min(onset + duration, clip_duration);
      additions[c].push_back(
          EventInstance{*clip_ids[clip], label, onset, offset});
    }
  });

  std::vector<EventInstance> events = set.events();
  for (const auto& block : additions) {
    events.insert(events.end(), block.begin(), block.end());
  }
  return AnnotationSet(set.clips(), set.vocabulary(), std::move(events));
}

AnnotationSet inject_substitution(const AnnotationSet& set, double rate,
                                  std::uint64_t seed, unsigned threads) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ValidationError("substitution rate must lie in [0, 1]");
  }
  const std::size_t num_classes = set.vocabulary().size();
  if (num_classes < 2) {
    throw ValidationError("substitution needs >= 2 classes");
  }
  const auto per_class = indices_by_class(set);
  // Replacement class index per event; own class means "keep".
  std::vector<std::size_t> new_class(set.events().size());
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    for (std::size_t index : per_class[c]) new_class[index] = c;
  }

  parallel_for(per_class.size(), threads, [&](std::size_t c) {
    const std::size_t count = noisy_count(per_class[c].size(), rate);
    if (count == 0) return;
    PortableRng rng = substream(seed, "noise.substitution", c);
    for (std::size_t index :
         sample_without_replacement(per_class[c], count, rng)) {
      const std::size_t other =
          static_cast<std::size_t>(rng.next_below(num_classes - 1));
      new_class[index] = other >= c ? other + 1 : other;
    }
  });

  std::vector<EventInstance> events = set.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    events[i].label = set.vocabulary().label(new_class[i]);
  }
  return AnnotationSet(set.clips(), set.vocabulary(), std::move(events));
}

AnnotationSet inject_subjective(const AnnotationSet& set, double overlap_rate,
                                std::uint64_t seed, unsigned threads) {
  if (!(overlap_rate > 0.0 && overlap_rate <= 1.0)) {
    throw ValidationError("overlap rate must lie in (0, 1]");
  }
  const auto per_class = indices_by_class(set);
  std::vector<EventInstance> events = set.events();

  parallel_for(per_class.size(), threads, [&](std::size_t c) {
    PortableRng rng = substream(seed, "noise.subjective", c);
    for (std::size_t index : per_class[c]) {
      EventInstance& event = events[index];
      const double shift = (1.0 - overlap_rate) * event.duration();
      const double sign = rng.next_below(2) == 0 ? -1.0 : 1.0;
      const double clip_duration = set.clip_duration(event.clip_id);
      event.onset = std::max(0.0, event.onset + sign * shift);
      event.offset = std::min(clip_duration, event.offset + sign * shift);
    }
  });
  return AnnotationSet(set.clips(), set.vocabulary(), std::move(events));
}

AnnotationSet inject(const AnnotationSet& set, const NoiseConfig& config,
                     unsigned threads) {
  config.validate();
  switch (config.kind) {
    case NoiseKind::Deletion:
      return inject_deletion(set, config.rate, config.seed, threads);
    case NoiseKind::Insertion:
      return inject_insertion(set, config.rate, config.seed, threads);
    case NoiseKind::Substitution:
      return inject_substitution(set, config.rate, config.seed, threads);
    case NoiseKind::Subjective:
      return inject_subjective(set, config.rate, config.seed, threads);
  }
  throw ValidationError("unknown noise kind");
}

}  // namespace sednoise
