#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "sednoise/annotation.hpp"
#include "sednoise/binarize.hpp"
#include "sednoise/losses.hpp"
#include "sednoise/metrics.hpp"
#include "sednoise/noise.hpp"
#include "sednoise/rng.hpp"

namespace {

using namespace sednoise;

AnnotationSet make_dataset(std::size_t num_clips, std::size_t events_per_clip) {
  const std::vector<std::string> labels = {"dog_bark", "siren", "drilling",
                                           "jackhammer", "children_playing"};
  std::map<std::string, double> clips;
  std::vector<EventInstance> events;
  PortableRng rng(12345);
  for (std::size_t i = 0; i < num_clips; ++i) {
    const std::string clip_id = "clip" + std::to_string(i) + ".wav";
    clips[clip_id] = 10.0;
    for (std::size_t j = 0; j < events_per_clip; ++j) {
      const double onset = rng.uniform(0.0, 9.0);
      const double offset = onset + rng.uniform(0.2, 1.0);
      events.push_back(EventInstance{
          clip_id, labels[rng.next_below(labels.size())], onset, offset});
    }
  }
  return AnnotationSet(std::move(clips), Vocabulary(labels),
                       std::move(events));
}

SoftLabelGrid make_soft_grid(std::size_t frames, std::size_t classes) {
  SoftLabelGrid grid;
  grid.clip_id = "clip.wav";
  grid.frame_length = 0.2;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) {
    labels.push_back("class" + std::to_string(c));
  }
  grid.vocabulary = Vocabulary(std::move(labels));
  grid.num_frames = frames;
  grid.values.resize(frames * classes);
  PortableRng rng(7);
  for (double& v : grid.values) v = rng.next_unit();
  return grid;
}

void BM_EventsToGrid(benchmark::State& state) {
  const AnnotationSet set = make_dataset(64, state.range(0));
  for (auto _ : state) {
    for (const auto& [clip_id, duration] : set.clips()) {
      benchmark::DoNotOptimize(events_to_grid(set, clip_id, 1.0));
    }
  }
}
BENCHMARK(BM_EventsToGrid)->Arg(4)->Arg(16);

void BM_EvaluateAnnotations(benchmark::State& state) {
  const AnnotationSet reference = make_dataset(state.range(0), 8);
  const AnnotationSet estimate = inject_deletion(reference, 0.3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_annotations(reference, estimate, 1.0));
  }
}
BENCHMARK(BM_EvaluateAnnotations)->Arg(64)->Arg(512);

void BM_InjectDeletion(benchmark::State& state) {
  const AnnotationSet set = make_dataset(state.range(0), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inject_deletion(set, 0.5, 42));
  }
}
BENCHMARK(BM_InjectDeletion)->Arg(64)->Arg(512);

void BM_InjectInsertion(benchmark::State& state) {
  const AnnotationSet set = make_dataset(state.range(0), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inject_insertion(set, 0.5, 42));
  }
}
BENCHMARK(BM_InjectInsertion)->Arg(64)->Arg(512);

void BM_BinarizeFixed(benchmark::State& state) {
  const SoftLabelGrid grid = make_soft_grid(state.range(0), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(binarize_fixed(grid, 0.5));
  }
}
BENCHMARK(BM_BinarizeFixed)->Arg(512)->Arg(4096);

void BM_LossEval(benchmark::State& state) {
  PortableRng rng(3);
  std::vector<FrameLabels> frames(1024);
  for (FrameLabels& fl : frames) {
    fl.y.resize(10);
    fl.p.resize(10);
    for (std::size_t c = 0; c < 10; ++c) {
      fl.y[c] = rng.next_below(2) ? 1.0 : 0.0;
      fl.p[c] = rng.uniform(0.01, 0.99);
    }
  }
  const LossOp op{LossKind::Gce, true};
  LossParams params;
  params.q = 0.5;
  params.xi = 0.5;
  for (auto _ : state) {
    double sum = 0.0;
    for (const FrameLabels& fl : frames) {
      sum += eval_loss(op, fl, params).value;
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * frames.size());
}
BENCHMARK(BM_LossEval);

}  // namespace

BENCHMARK_MAIN();
