#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "weave/weave.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A chain of `width` workers between a source and a sink, all attached.
weave::ArchitectureModel chain(int width) {
  std::ostringstream s;
  s << "architecture Chain { types { Job }\n";
  for (int i = 0; i <= width; ++i) {
    s << "component w" << i << " { port in: provides Job port out: requires Job attr cost = 1 attr load = "
      << (i % 7 + 1) << " }\n";
  }
  s << "component sink { port in: provides Job }\n";
  for (int i = 0; i < width; ++i) s << "attach w" << i << "::out to w" << i + 1 << "::in\n";
  s << "attach w" << width << "::out to sink::in\n";
  s << "attach w0::out to sink::in\n";
  s << "property connected(w0, sink)\nproperty typeClosed\n}\n";
  return weave::parse_architecture(s.str());
}

void BM_ParseReference(benchmark::State& state) {
  auto text = slurp(WEAVE_FIXTURE_DIR "/grid_app.adl");
  for (auto _ : state) benchmark::DoNotOptimize(weave::parse_model(text));
}
BENCHMARK(BM_ParseReference);

void BM_PrintParseChain(benchmark::State& state) {
  auto text = weave::print_model(chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(weave::print_model(weave::parse_model(text)));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_PrintParseChain)->Arg(16)->Arg(128)->Arg(512);

void BM_ApplyStepReplicate(benchmark::State& state) {
  auto arch = chain(static_cast<int>(state.range(0)));
  weave::RefinementStep step{{weave::ReplicateAction{weave::ElementPath{"w1"}, 4}}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(weave::apply_step(arch, step, arch.properties));
}
BENCHMARK(BM_ApplyStepReplicate)->Arg(16)->Arg(128);

void BM_FaultTolerancePattern(benchmark::State& state) {
  auto arch = weave::parse_architecture(slurp(WEAVE_FIXTURE_DIR "/grid_app.adl"));
  auto pattern = weave::parse_qos_pattern(slurp(WEAVE_LIBRARY_DIR "/patterns/fault_tolerance.qos"));
  weave::Bindings bindings{{"target", "b"}, {"replicas", std::to_string(state.range(0))}};
  for (auto _ : state) benchmark::DoNotOptimize(weave::apply_pattern(arch, pattern, bindings));
}
BENCHMARK(BM_FaultTolerancePattern)->Arg(2)->Arg(8);

void BM_PlanDeployment(benchmark::State& state) {
  auto arch = chain(static_cast<int>(state.range(0)));
  arch.stage = weave::Stage::gesm;
  weave::ResourceModel res;
  res.name = "R";
  for (int i = 0; i < 16; ++i) res.nodes.push_back({"n" + std::to_string(i), 40, {}});
  for (auto _ : state) benchmark::DoNotOptimize(weave::plan_deployment(arch, res));
}
BENCHMARK(BM_PlanDeployment)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
