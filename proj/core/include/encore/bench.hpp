#ifndef ENCORE_BENCH_HPP
#define ENCORE_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "encore/encode.hpp"

namespace encore {

struct BenchSpec {
  std::string family = "php";  // php | latin | graceful
  std::vector<int> sizes;
  std::vector<std::string> encodings;
  double fill = 0.3;  // latin preassignment share
  uint64_t seed = 1;
  int64_t max_conflicts = -1;
  int64_t max_time_ms = -1;
  int threads = 0;  // 0: one per hardware thread
};

struct BenchRow {
  std::string family;
  int size = 0;
  std::string encoding;
  uint64_t seed = 1;
  std::string status;  // sat | unsat | limit | error
  EngineStats stats;
  size_t nogood_count = 0;
  int32_t prop_count = 0;
  bool verify_attempted = false;
  bool verified = false;
  std::string error;
};

// Short encoding names: S (value ladder, support rules), B and R (bound or
// range ladders and rules; arithmetic tables stay direct, pulling in value
// ladders when needed), optionally suffixed _H for an interval cap, plus
// direct and ksupport[:K]. Permutation strengthening rides along with the
// lettered names.
EncodingConfig named_encoding(const std::string& name, bool has_tables);

CspInstance bench_instance(const BenchSpec& spec, int size);

// Runs the whole size x encoding grid on a small worker pool. Rows come back
// in grid order regardless of which worker finished first. Satisfiable rows
// are re-checked against the instance; unsatisfiable ones against the
// enumerator when small enough.
std::vector<BenchRow> run_bench(const BenchSpec& spec, std::ostream* jsonl);

std::string bench_row_json(const BenchRow& row);

}  // namespace encore

#endif
