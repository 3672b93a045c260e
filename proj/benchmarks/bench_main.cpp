#include <benchmark/benchmark.h>

#include "proxzone/fusion.hpp"
#include "proxzone/optics.hpp"
#include "proxzone/sim.hpp"
#include "proxzone/zones.hpp"

namespace {

using namespace proxzone;

void BM_EstimateDistance(benchmark::State& state) {
  const CalibrationProfile profile{600.0, kDefaultSubjectExtentM, "front"};
  double p = 487.68;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_distance(profile, p));
    p = p < 2000.0 ? p + 1.0 : 10.0;
  }
}
BENCHMARK(BM_EstimateDistance);

void BM_Classify(benchmark::State& state) {
  const ZoneClassifier classifier;
  double d = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classifier.classify(d));
    d = d < 5.0 ? d + 0.01 : 0.01;
  }
}
BENCHMARK(BM_Classify);

std::vector<SensorEvent> side_events(std::int64_t n) {
  std::vector<SensorEvent> ev;
  for (std::int64_t i = 0; i < n; ++i) {
    const Sector s = kAllSectors[1 + i % 3];
    ev.push_back(MotionEvent{i * 10, s});
    ev.push_back(RangeReading{i * 10, s, 0.3 + 0.01 * static_cast<double>(i % 400)});
  }
  return ev;
}

void BM_FusionReplay(benchmark::State& state) {
  const auto events = side_events(state.range(0));
  const CalibrationProfile profile{600.0, kDefaultSubjectExtentM, "front"};
  for (auto _ : state) {
    FusionEngine engine;
    benchmark::DoNotOptimize(replay(events, engine, profile));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_FusionReplay)->Arg(1000)->Arg(10000);

void BM_RunScenario(benchmark::State& state) {
  Scenario s;
  s.camera = {600.0, kDefaultSubjectExtentM, "front"};
  s.noise = {2.0, 0.02};
  s.seed = 1;
  for (int k = 0; k < 4; ++k) {
    SubjectTrack t{"s" + std::to_string(k), kDefaultSubjectExtentM, {}};
    for (std::int64_t i = 0; i < state.range(0); ++i) {
      t.trajectory.push_back({i * 33, kAllSectors[k], 0.3 + 0.01 * static_cast<double>(i % 300)});
    }
    s.subjects.push_back(std::move(t));
  }
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
  state.SetItemsProcessed(state.iterations() * 4 * state.range(0));
}
BENCHMARK(BM_RunScenario)->Arg(250)->Arg(2500);

}  // namespace

BENCHMARK_MAIN();
