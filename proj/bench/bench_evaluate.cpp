// Serial reference vs. OpenMP batch evaluation on a grid network with
// derived bounds, where each row runs a max-flow.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tnsc/feasibility.hpp"
#include "tnsc/model.hpp"
#include "tnsc/pathfind.hpp"

namespace {

using namespace tnsc;

NetworkTopology grid(int side) {
  TopologyDescription desc;
  auto name = [](int r, int c) { return "N" + std::to_string(r) + "_" + std::to_string(c); };
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      desc.nodes.push_back(name(r, c));
      desc.devices.push_back({name(r, c), {{"10GE", 10.0, 48}}});
    }
  int id = 0;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) desc.links.push_back({"L" + std::to_string(id++), name(r, c), name(r, c + 1)});
      if (r + 1 < side) desc.links.push_back({"L" + std::to_string(id++), name(r, c), name(r + 1, c)});
    }
  return validate_topology(desc);
}

std::vector<SliceRequest> batch(const NetworkTopology& topo, std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> node(0, topo.nodes().size() - 1);
  std::uniform_int_distribution<int> p(2, 4), d(1, 48), s(1, 20);
  std::vector<SliceRequest> out;
  for (std::size_t i = 0; i < n; ++i) {
    SliceRequest r;
    r.id = "R" + std::to_string(i);
    r.src = topo.nodes()[node(rng)];
    do r.dst = topo.nodes()[node(rng)]; while (r.dst == r.src);
    r.disjoint_paths = p(rng);
    r.port = {"10GE", 10.0};
    r.client_ports = d(rng);
    r.calendar_slots = s(rng);
    out.push_back(std::move(r));
  }
  return out;
}

struct Fixture {
  NetworkTopology topo = grid(12);
  std::vector<SliceRequest> requests = batch(topo, 4096);
  EvaluationContext context{.bounds = TraitBounds{.mode = BoundsMode::Derived},
                            .topology = &topo,
                            .mode = DisjointnessMode::NodeDisjoint};
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_rows_serial(f.requests, f.context));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.requests.size()));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_rows(f.requests, f.context));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.requests.size()));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
