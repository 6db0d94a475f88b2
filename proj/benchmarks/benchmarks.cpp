#include <cmath>
#include <cstdint>

#include <benchmark/benchmark.h>

#include <cohtomo/cohtomo.hpp>

namespace {

using namespace cohtomo;

FixedNState noon_state(int order) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(order + 1);
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(order) = 1.0 / std::sqrt(2.0);
  return FixedNState::pure(order, amps);
}

void bm_settings_plan(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(settings_plan(order));
  }
}
BENCHMARK(bm_settings_plan)->Arg(2)->Arg(6)->Arg(12);

void bm_coherence_tensor(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const FixedNState noon = noon_state(order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coherence_tensor(noon, order));
  }
}
BENCHMARK(bm_coherence_tensor)->Arg(2)->Arg(4)->Arg(8);

void bm_predicted_records(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const SettingsPlan plan = settings_plan(order);
  const CoherenceTensor tensor = coherence_tensor(noon_state(order), order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predicted_records(tensor, plan));
  }
}
BENCHMARK(bm_predicted_records)->Arg(2)->Arg(4)->Arg(8);

void bm_reconstruct(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const SettingsPlan plan = settings_plan(order);
  const auto records = predicted_records(coherence_tensor(noon_state(order), order), plan);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(records, order));
  }
}
BENCHMARK(bm_reconstruct)->Arg(2)->Arg(4)->Arg(8);

void bm_simulate_counts(benchmark::State& state) {
  const std::int64_t shots = state.range(0);
  const FixedNState noon = noon_state(2);
  const MeasurementSetting setting(0.7, 1.3);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_counts(noon, setting, shots, seed++));
  }
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(bm_simulate_counts)->Arg(1000)->Arg(100000);

void bm_plate_chain(benchmark::State& state) {
  const MeasurementSetting setting(0.7, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_plate_unitary(plate_angles_from_euler(
        euler_from_setting(setting))));
  }
}
BENCHMARK(bm_plate_chain);

void bm_document_round_trip(benchmark::State& state) {
  const Document doc{kSchemaVersion, PlanDocument{settings_plan(8)}};
  const std::string text = serialize_document(doc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_document(parse_document(text)));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(bm_document_round_trip);

}  // namespace

BENCHMARK_MAIN();
