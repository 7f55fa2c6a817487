#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sednoise/version.hpp"

int main(int argc, char** argv) {
  using namespace sednoise::cli;

  CLI::App app{
      "sednoise: build noisy-label variants of strong sound-event "
      "annotations, binarize soft labels, and evaluate with segment-based "
      "metrics"};
  app.set_version_flag("--version", std::string(sednoise::kVersion));
  app.require_subcommand(1);

  InjectOptions inject;
  auto* inject_cmd = app.add_subcommand(
      "inject", "Construct a noisy variant of a strong-label file");
  inject_cmd
      ->add_option("kind", inject.kind,
                   "deletion | insertion | substitution | subjective")
      ->required()
      ->check(CLI::IsMember(
          {"deletion", "insertion", "substitution", "subjective"}));
  inject_cmd->add_option("--labels", inject.labels_path, "strong-label TSV")
      ->required()
      ->check(CLI::ExistingFile);
  inject_cmd->add_option("--clips", inject.clips_path, "clip-table TSV")
      ->required()
      ->check(CLI::ExistingFile);
  auto* rate_opt =
      inject_cmd->add_option("--rate", inject.rate, "noise rate (per kind)");
  inject_cmd
      ->add_option("--rate-grid", inject.rate_grid,
                   "start:end:step sweep; --out becomes a directory")
      ->excludes(rate_opt);
  inject_cmd->add_option("--seed", inject.seed, "RNG seed (default 0)");
  inject_cmd->add_option("--out", inject.out_path, "output path")->required();
  inject_cmd->add_option("--threads", inject.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));

  BinarizeOptions binarize;
  auto* binarize_cmd = app.add_subcommand(
      "binarize", "Turn soft labels into a strong-label file");
  binarize_cmd->add_option("--soft", binarize.soft_path, "soft-label TSV")
      ->required()
      ->check(CLI::ExistingFile);
  auto* threshold_opt = binarize_cmd->add_option(
      "--threshold", binarize.threshold, "fixed threshold in (0, 1)");
  binarize_cmd
      ->add_option("--relax", binarize.relax,
                   "relaxation factor in [0, 0.45]; threshold drawn per clip")
      ->excludes(threshold_opt);
  binarize_cmd->add_option("--seed", binarize.seed, "RNG seed (default 0)");
  binarize_cmd->add_option("--out", binarize.out_path, "output path")
      ->required();
  binarize_cmd->add_option("--threads", binarize.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));

  EvaluateOptions evaluate;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Segment-based ER / F1 between two strong-label files");
  evaluate_cmd->add_option("--ref", evaluate.ref_path, "reference TSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--est", evaluate.est_path, "estimate TSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--clips", evaluate.clips_path, "clip-table TSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--segment-length", evaluate.segment_length,
                           "segment length in seconds (default 1.0)");
  evaluate_cmd->add_flag("--percent", evaluate.percent,
                         "report F1 values on a 0-100 scale, 3 decimals");
  evaluate_cmd->add_option("--out", evaluate.out_path, "report path")
      ->required();
  evaluate_cmd->add_option("--threads", evaluate.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));

  TheoryOptions theory;
  auto* theory_cmd = app.add_subcommand(
      "theory", "Closed-form curves for the ideal model under pure noise");
  theory_cmd
      ->add_option("curve", theory.curve,
                   "deletion-f1 | insertion-f1 | threshold-er")
      ->required()
      ->check(CLI::IsMember({"deletion-f1", "insertion-f1", "threshold-er"}));
  theory_cmd->add_option("--start", theory.start, "range start");
  theory_cmd->add_option("--end", theory.end, "range end");
  theory_cmd->add_option("--step", theory.step, "range step");
  theory_cmd->add_option("--soft", theory.soft_path,
                         "soft-label TSV (threshold-er)");
  theory_cmd->add_option("--out", theory.out_path, "curve TSV path")
      ->required();

  LossFixturesOptions fixtures;
  auto* fixtures_cmd = app.add_subcommand(
      "loss-fixtures", "Evaluate loss/gradient fixture records");
  fixtures_cmd->add_option("--spec", fixtures.spec_path, "fixture spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  fixtures_cmd->add_option("--out", fixtures.out_path, "fixture report path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  if (inject_cmd->parsed()) return run_inject(inject);
  if (binarize_cmd->parsed()) return run_binarize(binarize);
  if (evaluate_cmd->parsed()) return run_evaluate(evaluate);
  if (theory_cmd->parsed()) return run_theory(theory);
  if (fixtures_cmd->parsed()) return run_loss_fixtures(fixtures);
  return kExitBadArguments;
}
