#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sednoise::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;   // input parse/validation failure
inline constexpr int kExitBadArguments = 2; // invalid flags or ranges
inline constexpr int kExitUndefinedMetric = 3;
inline constexpr int kExitSelfCheckFailed = 4;

struct InjectOptions {
  std::string kind;
  std::string labels_path;
  std::string clips_path;
  std::string out_path;
  std::optional<double> rate;
  std::string rate_grid;  // "start:end:step"; out_path becomes a directory
  std::uint64_t seed = 0;
  unsigned threads = 1;
};
int run_inject(const InjectOptions& options);

struct BinarizeOptions {
  std::string soft_path;
  std::string out_path;
  std::optional<double> threshold;
  std::optional<double> relax;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};
int run_binarize(const BinarizeOptions& options);

struct EvaluateOptions {
  std::string ref_path;
  std::string est_path;
  std::string clips_path;
  std::string out_path;
  double segment_length = 1.0;
  bool percent = false;
  unsigned threads = 1;
};
int run_evaluate(const EvaluateOptions& options);

struct TheoryOptions {
  std::string curve;  // deletion-f1 | insertion-f1 | threshold-er
  std::string out_path;
  std::string soft_path;  // threshold-er only
  std::optional<double> start;
  std::optional<double> end;
  std::optional<double> step;
};
int run_theory(const TheoryOptions& options);

struct LossFixturesOptions {
  std::string spec_path;
  std::string out_path;
};
int run_loss_fixtures(const LossFixturesOptions& options);

}  // namespace sednoise::cli
