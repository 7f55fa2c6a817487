#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/grid.hpp"
#include "sednoise/rng.hpp"

namespace testutil {

inline std::string cli_path() {
  const char* path = std::getenv("SEDNOISE_CLI");
  return path ? path : "";
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("sednoise_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const {
    return path / name;
  }
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

/// Runs the CLI binary; returns the process exit code. stderr is silenced
/// unless keep_stderr is set.
inline int run_cli(const std::string& args, bool keep_stderr = false) {
  const std::string command = cli_path() + " " + args +
                              (keep_stderr ? "" : " 2>/dev/null");
  const int status = std::system(command.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

inline double quantize_ms(double seconds) {
  return std::round(seconds * 1000.0) / 1000.0;
}

/// Random annotation set with millisecond-quantized times; suitable for
/// round-trip and injection property tests.
inline sednoise::AnnotationSet random_annotation_set(
    sednoise::PortableRng& rng, std::size_t num_clips, std::size_t num_classes,
    std::size_t max_events_per_class) {
  std::map<std::string, double> clips;
  for (std::size_t i = 0; i < num_clips; ++i) {
    clips["clip" + std::to_string(i) + ".wav"] =
        quantize_ms(rng.uniform(5.0, 15.0));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < num_classes; ++c) {
    labels.push_back("class_" + std::to_string(c));
  }
  std::vector<const std::string*> clip_ids;
  for (const auto& [clip_id, duration] : clips) clip_ids.push_back(&clip_id);

  std::vector<sednoise::EventInstance> events;
  for (const std::string& label : labels) {
    const std::size_t count = 1 + rng.next_below(max_events_per_class);
    for (std::size_t j = 0; j < count; ++j) {
      const std::string& clip_id = *clip_ids[rng.next_below(clip_ids.size())];
      const double duration = clips.at(clip_id);
      double onset = quantize_ms(rng.uniform(0.0, duration - 0.2));
      double offset =
          quantize_ms(onset + 0.1 + rng.uniform(0.0, duration - onset - 0.1));
      offset = std::min(offset, duration);
      if (!(offset > onset)) continue;
      events.push_back(sednoise::EventInstance{clip_id, label, onset, offset});
    }
  }
  return sednoise::AnnotationSet(std::move(clips),
                                 sednoise::Vocabulary(std::move(labels)),
                                 std::move(events));
}

/// Random binary grid for metric and binarization tests.
inline sednoise::FrameActivityGrid random_grid(sednoise::PortableRng& rng,
                                               std::size_t segments,
                                               std::size_t classes,
                                               double density = 0.5) {
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) {
    labels.push_back("class_" + std::to_string(c));
  }
  sednoise::FrameActivityGrid grid;
  grid.clip_id = "clip.wav";
  grid.frame_length = 1.0;
  grid.vocabulary = sednoise::Vocabulary(std::move(labels));
  grid.num_segments = segments;
  grid.active.resize(segments * classes);
  for (auto& cell : grid.active) {
    cell = rng.next_unit() < density ? 1 : 0;
  }
  return grid;
}

inline std::vector<sednoise::EventInstance> sorted_events(
    const sednoise::AnnotationSet& set) {
  auto events = set.events();
  std::sort(events.begin(), events.end(), sednoise::serialization_less);
  return events;
}

inline bool same_content(const sednoise::AnnotationSet& a,
                         const sednoise::AnnotationSet& b) {
  return a.clips() == b.clips() && a.vocabulary() == b.vocabulary() &&
         sorted_events(a) == sorted_events(b);
}

}  // namespace testutil
