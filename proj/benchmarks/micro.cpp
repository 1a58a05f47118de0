#include <benchmark/benchmark.h>

#include "encore/encode.hpp"
#include "encore/generators.hpp"

namespace {

using namespace encore;

EncodingConfig config_of(VarEncoding v, ConstraintEncoding c) {
  EncodingConfig config;
  config.var_encoding = v;
  config.constraint_encoding = c;
  return config;
}

void bm_encode_latin_support(benchmark::State& state) {
  CspInstance inst =
      gen_latin((int)state.range(0), 0.3, 7, LatinFill::FromComplete);
  auto config = config_of(VarEncoding::Direct, ConstraintEncoding::Support);
  for (auto _ : state) {
    EncodedInstance enc = encode_instance(inst, config);
    benchmark::DoNotOptimize(enc.program.rules.size());
  }
}
BENCHMARK(bm_encode_latin_support)->Arg(5)->Arg(7)->Arg(9);

void bm_compile_latin_support(benchmark::State& state) {
  CspInstance inst =
      gen_latin((int)state.range(0), 0.3, 7, LatinFill::FromComplete);
  EncodedInstance enc = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Support));
  for (auto _ : state) {
    NogoodDb db = lower_and_compile(enc.program);
    benchmark::DoNotOptimize(db.size());
  }
}
BENCHMARK(bm_compile_latin_support)->Arg(5)->Arg(7);

void bm_root_propagation_php(benchmark::State& state) {
  CspInstance inst = gen_php((int)state.range(0));
  EncodedInstance enc = encode_instance(
      inst, config_of(VarEncoding::Range, ConstraintEncoding::Range));
  NogoodDb db = lower_and_compile(enc.program);
  for (auto _ : state) {
    EngineOptions opts;
    opts.use_restarts = false;
    Engine eng(db, opts);
    benchmark::DoNotOptimize(eng.propagate());
  }
}
BENCHMARK(bm_root_propagation_php)->Arg(8)->Arg(12);

void bm_solve_latin(benchmark::State& state) {
  CspInstance inst =
      gen_latin((int)state.range(0), 0.4, 11, LatinFill::FromComplete);
  EncodedInstance enc = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Support));
  NogoodDb db = lower_and_compile(enc.program);
  for (auto _ : state) {
    Engine eng(db);
    benchmark::DoNotOptimize(eng.solve());
  }
}
BENCHMARK(bm_solve_latin)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
