#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/errors.hpp"
#include "sednoise/noise.hpp"
#include "sednoise/rng.hpp"
#include "testutil.hpp"

using namespace sednoise;

namespace {

// 2683 instances of one class spread over enough clips, mirroring the
// dog_bark population of the synthetic dataset.
AnnotationSet dog_bark_fixture() {
  std::map<std::string, double> clips;
  std::vector<EventInstance> events;
  PortableRng rng(0xD06);
  const std::size_t kInstances = 2683;
  const std::size_t kClips = 300;
  for (std::size_t i = 0; i < kClips; ++i) {
    clips["clip" + std::to_string(i) + ".wav"] = 10.0;
  }
  for (std::size_t j = 0; j < kInstances; ++j) {
    const std::string clip_id =
        "clip" + std::to_string(rng.next_below(kClips)) + ".wav";
    const double onset = testutil::quantize_ms(rng.uniform(0.0, 8.0));
    const double offset =
        testutil::quantize_ms(onset + 0.2 + rng.uniform(0.0, 1.5));
    events.push_back(EventInstance{clip_id, "dog_bark", onset, offset});
  }
  return AnnotationSet(std::move(clips),
                       Vocabulary(std::vector<std::string>{"dog_bark"}),
                       std::move(events));
}

using TimeKey = std::tuple<std::string, double, double>;

std::multiset<TimeKey> time_multiset(const AnnotationSet& set) {
  std::multiset<TimeKey> keys;
  for (const EventInstance& event : set.events()) {
    keys.insert({event.clip_id, event.onset, event.offset});
  }
  return keys;
}

std::multiset<EventInstance> event_multiset(const AnnotationSet& set) {
  return {set.events().begin(), set.events().end()};
}

std::size_t count_label(const AnnotationSet& set, const std::string& label) {
  std::size_t count = 0;
  for (const EventInstance& event : set.events()) {
    if (event.label == label) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("noisy_count implements the floor rule on decimal rates") {
  CHECK(noisy_count(2683, 0.5) == 1341);
  CHECK(noisy_count(10, 0.25) == 2);   // floor(2.5)
  CHECK(noisy_count(100, 0.29) == 29); // decimal intent, not raw floor
  CHECK(noisy_count(7, 0.0) == 0);
  CHECK(noisy_count(7, 1.0) == 7);
  for (int k = 0; k <= 10; ++k) {
    const double rate = 0.05 * k;
    for (std::size_t n = 0; n <= 100; ++n) {
      CHECK(noisy_count(n, rate) == (n * static_cast<std::size_t>(k)) / 20);
    }
  }
}

TEST_CASE("rate zero is the identity for every kind") {
  PortableRng rng(1);
  const AnnotationSet set = testutil::random_annotation_set(rng, 3, 3, 8);
  CHECK(testutil::same_content(set, inject_deletion(set, 0.0, 7)));
  CHECK(testutil::same_content(set, inject_insertion(set, 0.0, 7)));
  CHECK(testutil::same_content(set, inject_substitution(set, 0.0, 7)));
  CHECK(testutil::same_content(set, inject_subjective(set, 1.0, 7)));
}

TEST_CASE("deletion removes exactly the floor count per class") {
  const AnnotationSet set = dog_bark_fixture();
  const AnnotationSet noisy = inject_deletion(set, 0.5, 42);
  CHECK(noisy.events().size() == 1342);
  CHECK(count_label(noisy, "dog_bark") == 1342);
  // Vocabulary and clip table survive even at rate 1.
  const AnnotationSet emptied = inject_deletion(set, 1.0, 42);
  CHECK(emptied.events().empty());
  CHECK(emptied.vocabulary() == set.vocabulary());
  CHECK(emptied.clips() == set.clips());
}

TEST_CASE("deletion output is a sub-multiset of the input") {
  PortableRng rng(2);
  for (int i = 0; i < 200; ++i) {
    const AnnotationSet set = testutil::random_annotation_set(
        rng, 1 + rng.next_below(3), 1 + rng.next_below(4), 12);
    const double rate = rng.uniform(0.0, 1.0);
    const AnnotationSet noisy = inject_deletion(set, rate, rng.next_u64());

    const auto input = event_multiset(set);
    const auto output = event_multiset(noisy);
    CHECK(std::includes(input.begin(), input.end(), output.begin(),
                        output.end()));
    // Per-class counts follow the floor rule.
    for (const std::string& label : set.vocabulary().labels()) {
      const std::size_t before = count_label(set, label);
      CHECK(count_label(noisy, label) == before - noisy_count(before, rate));
    }
  }
}

TEST_CASE("deletion is deterministic and independent of row order") {
  const AnnotationSet set = dog_bark_fixture();
  const std::string first = serialize_strong_labels(inject_deletion(set, 0.3, 9));
  const std::string second =
      serialize_strong_labels(inject_deletion(set, 0.3, 9));
  CHECK(first == second);

  // Same content presented in reversed row order selects the same events.
  std::vector<EventInstance> reversed(set.events().rbegin(),
                                      set.events().rend());
  const AnnotationSet permuted(set.clips(), set.vocabulary(), reversed);
  CHECK(serialize_strong_labels(inject_deletion(permuted, 0.3, 9)) == first);

  // A different seed gives a different sample (with near certainty).
  CHECK(serialize_strong_labels(inject_deletion(set, 0.3, 10)) != first);
}

TEST_CASE("insertion adds the floor count of valid instances per class") {
  PortableRng rng(3);
  for (int i = 0; i < 100; ++i) {
    const AnnotationSet set = testutil::random_annotation_set(
        rng, 1 + rng.next_below(3), 1 + rng.next_below(3), 10);
    const double rate = rng.uniform(0.0, 1.5);
    const AnnotationSet noisy = inject_insertion(set, rate, rng.next_u64());

    const auto input = event_multiset(set);
    const auto output = event_multiset(noisy);
    CHECK(std::includes(output.begin(), output.end(), input.begin(),
                        input.end()));
    for (const std::string& label : set.vocabulary().labels()) {
      const std::size_t before = count_label(set, label);
      CHECK(count_label(noisy, label) == before + noisy_count(before, rate));
    }
    for (const EventInstance& event : noisy.events()) {
      CHECK(event.onset >= 0.0);
      CHECK(event.offset > event.onset);
      CHECK(event.offset <= noisy.clip_duration(event.clip_id));
    }
  }
}

TEST_CASE("a zero-stddev class inserts its exact mean duration") {
  std::map<std::string, double> clips{{"a.wav", 10.0}};
  std::vector<EventInstance> events;
  for (int i = 0; i < 10; ++i) {
    const double onset = 0.5 * i;
    events.push_back(EventInstance{"a.wav", "steady", onset, onset + 3.0});
  }
  const AnnotationSet set(clips,
                          Vocabulary(std::vector<std::string>{"steady"}),
                          events);
  const AnnotationSet noisy = inject_insertion(set, 1.0, 5);
  REQUIRE(noisy.events().size() == 20);
  for (const EventInstance& event : noisy.events()) {
    const bool clipped = event.offset == 10.0;
    if (!clipped) {
      CHECK(event.duration() == doctest::Approx(3.0).epsilon(1e-12));
    } else {
      CHECK(event.duration() <= 3.0 + 1e-12);
    }
  }
}

TEST_CASE("insertion requires duration statistics for every class") {
  std::map<std::string, double> clips{{"a.wav", 10.0}};
  const Vocabulary vocab(std::vector<std::string>{"present", "absent"});
  const std::vector<EventInstance> events = {
      {"a.wav", "present", 1.0, 2.0}};
  const AnnotationSet set(clips, vocab, events);
  CHECK_THROWS_WITH_AS(inject_insertion(set, 0.5, 1),
                       doctest::Contains("no instances for class"),
                       ValidationError);
  // Rate zero never needs the statistics.
  CHECK(testutil::same_content(set, inject_insertion(set, 0.0, 1)));
}

TEST_CASE("substitution relabels without touching times") {
  PortableRng rng(4);
  for (int i = 0; i < 200; ++i) {
    const AnnotationSet set = testutil::random_annotation_set(
        rng, 1 + rng.next_below(3), 2 + rng.next_below(4), 10);
    const double rate = rng.uniform(0.0, 1.0);
    const AnnotationSet noisy = inject_substitution(set, rate, rng.next_u64());

    CHECK(noisy.events().size() == set.events().size());
    CHECK(time_multiset(noisy) == time_multiset(set));

    std::size_t expected_changes = 0;
    for (const std::string& label : set.vocabulary().labels()) {
      expected_changes += noisy_count(count_label(set, label), rate);
    }
    // Count rows that kept identity; relabels can collide only by moving to
    // a different class, so per-class bookkeeping detects every change.
    const auto input = event_multiset(set);
    const auto output = event_multiset(noisy);
    std::vector<EventInstance> unchanged;
    std::set_intersection(input.begin(), input.end(), output.begin(),
                          output.end(), std::back_inserter(unchanged));
    CHECK(set.events().size() - unchanged.size() == expected_changes);
  }
}

TEST_CASE("with two classes the substitute label is forced") {
  std::map<std::string, double> clips{{"a.wav", 10.0}};
  const Vocabulary vocab(std::vector<std::string>{"a_class", "b_class"});
  std::vector<EventInstance> events;
  for (int i = 0; i < 4; ++i) {
    events.push_back(
        EventInstance{"a.wav", "a_class", 1.0 * i, 1.0 * i + 0.5});
  }
  const AnnotationSet set(clips, vocab, events);
  const AnnotationSet noisy = inject_substitution(set, 0.5, 3);
  CHECK(count_label(noisy, "a_class") == 2);
  CHECK(count_label(noisy, "b_class") == 2);
}

TEST_CASE("substitution on the large fixture never keeps the old label") {
  AnnotationSet base = dog_bark_fixture();
  // Widen the vocabulary to ten classes; dog_bark keeps 2683 instances and
  // the other classes get one instance each.
  std::vector<std::string> labels = {"dog_bark"};
  std::vector<EventInstance> events = base.events();
  for (int c = 1; c < 10; ++c) {
    labels.push_back("class_" + std::to_string(c));
    events.push_back(
        EventInstance{"clip0.wav", labels.back(), 0.0, 1.0});
  }
  const AnnotationSet set(base.clips(), Vocabulary(labels), events);
  const AnnotationSet noisy = inject_substitution(set, 0.5, 11);
  // 1341 dog_bark rows changed class, none kept dog_bark; the single-instance
  // classes have floor(0.5 * 1) = 0 changes, so nothing moves into dog_bark.
  CHECK(count_label(noisy, "dog_bark") == 2683 - 1341);
  const auto input = event_multiset(set);
  const auto output = event_multiset(noisy);
  std::vector<EventInstance> unchanged;
  std::set_intersection(input.begin(), input.end(), output.begin(),
                        output.end(), std::back_inserter(unchanged));
  std::size_t unchanged_dog_bark = 0;
  for (const EventInstance& event : unchanged) {
    if (event.label == "dog_bark") ++unchanged_dog_bark;
  }
  CHECK(unchanged_dog_bark == 2683 - 1341);
}

TEST_CASE("substitution needs at least two classes") {
  const AnnotationSet set = dog_bark_fixture();
  CHECK_THROWS_WITH_AS(inject_substitution(set, 0.1, 1),
                       doctest::Contains(">= 2 classes"), ValidationError);
}

TEST_CASE("subjective shifts preserve duration and hit the overlap exactly") {
  PortableRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const AnnotationSet set = testutil::random_annotation_set(
        rng, 1 + rng.next_below(3), 1 + rng.next_below(3), 8);
    const double overlap = 0.5 + 0.5 * rng.next_unit();
    const AnnotationSet noisy = inject_subjective(set, overlap, rng.next_u64());
    REQUIRE(noisy.events().size() == set.events().size());

    // Events keep their slot order, so pairs line up index by index.
    for (std::size_t j = 0; j < set.events().size(); ++j) {
      const EventInstance& before = set.events()[j];
      const EventInstance& after = noisy.events()[j];
      CHECK(after.clip_id == before.clip_id);
      CHECK(after.label == before.label);

      const double duration = before.duration();
      const double shift = (1.0 - overlap) * duration;
      const bool clamped =
          before.onset - shift < 0.0 ||
          before.offset + shift > set.clip_duration(before.clip_id);
      const double measured_overlap =
          std::min(before.offset, after.offset) -
          std::max(before.onset, after.onset);
      if (!clamped) {
        CHECK(after.duration() == doctest::Approx(duration).epsilon(1e-12));
        CHECK(measured_overlap / duration ==
              doctest::Approx(overlap).epsilon(1e-9));
      }
      CHECK(after.onset >= 0.0);
      CHECK(after.offset <= set.clip_duration(before.clip_id));
    }
  }
}

TEST_CASE("the worked subjective example shifts by a quarter duration") {
  std::map<std::string, double> clips{{"a.wav", 10.0}};
  const Vocabulary vocab(std::vector<std::string>{"event"});
  const AnnotationSet set(
      clips, vocab, {EventInstance{"a.wav", "event", 2.0, 6.0}});
  bool saw_right = false;
  bool saw_left = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const AnnotationSet noisy = inject_subjective(set, 0.75, seed);
    const EventInstance& event = noisy.events()[0];
    if (event.onset == 3.0) {
      CHECK(event.offset == 7.0);
      saw_right = true;
    } else {
      CHECK(event.onset == 1.0);
      CHECK(event.offset == 5.0);
      saw_left = true;
    }
    // overlap = 3.0 s = 0.75 * 4.0 either way
    const double overlap = std::min(6.0, event.offset) -
                           std::max(2.0, event.onset);
    CHECK(overlap == 3.0);
  }
  CHECK(saw_right);
  CHECK(saw_left);
}

TEST_CASE("subjective shifts clamp at the clip edges") {
  std::map<std::string, double> clips{{"a.wav", 10.0}};
  const Vocabulary vocab(std::vector<std::string>{"event"});
  const AnnotationSet set(
      clips, vocab, {EventInstance{"a.wav", "event", 0.0, 4.0}});
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const AnnotationSet noisy = inject_subjective(set, 0.5, seed);
    const EventInstance& event = noisy.events()[0];
    if (event.onset == 0.0) {
      CHECK(event.offset == 2.0);  // left shift clamped at zero
    } else {
      CHECK(event.onset == 2.0);   // right shift, no clamping
      CHECK(event.offset == 6.0);
    }
  }
}

TEST_CASE("invalid rates are rejected per kind") {
  const AnnotationSet set = dog_bark_fixture();
  CHECK_THROWS_AS(inject_deletion(set, -0.1, 1), ValidationError);
  CHECK_THROWS_AS(inject_deletion(set, 1.1, 1), ValidationError);
  CHECK_THROWS_AS(inject_insertion(set, -0.5, 1), ValidationError);
  CHECK_THROWS_AS(inject_subjective(set, 0.0, 1), ValidationError);
  CHECK_THROWS_AS(inject_subjective(set, 1.5, 1), ValidationError);
  NoiseConfig config{NoiseKind::Subjective, 0.0, 1};
  CHECK_THROWS_AS(config.validate(), ValidationError);
}

TEST_CASE("injection results do not depend on the thread count") {
  const AnnotationSet set = dog_bark_fixture();
  for (const NoiseKind kind :
       {NoiseKind::Deletion, NoiseKind::Insertion, NoiseKind::Subjective}) {
    const NoiseConfig config{kind, kind == NoiseKind::Subjective ? 0.7 : 0.3,
                             21};
    CHECK(serialize_strong_labels(inject(set, config, 1)) ==
          serialize_strong_labels(inject(set, config, 4)));
  }
}
