#include "encore/bench.hpp"

#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "encore/generators.hpp"
#include "encore/oracles.hpp"

namespace encore {

EncodingConfig named_encoding(const std::string& name, bool has_tables) {
  EncodingConfig config;
  std::string base = name;
  int cap = 0;
  if (auto us = name.find('_'); us != std::string::npos && name[0] != 'k') {
    base = name.substr(0, us);
    cap = std::stoi(name.substr(us + 1));
    if (cap < 1) throw EncodeError("interval cap must be positive");
  }
  if (base == "S") {
    config.var_encoding = VarEncoding::Direct;
    config.constraint_encoding = ConstraintEncoding::Support;
    config.permutation_strengthening = true;
    if (has_tables) config.table_encoding = ConstraintEncoding::Direct;
  } else if (base == "B") {
    config.var_encoding =
        has_tables ? VarEncoding::BoundHybrid : VarEncoding::Bound;
    config.constraint_encoding = ConstraintEncoding::Bound;
    config.permutation_strengthening = true;
    if (has_tables) config.table_encoding = ConstraintEncoding::Direct;
  } else if (base == "R") {
    config.var_encoding =
        has_tables ? VarEncoding::RangeHybrid : VarEncoding::Range;
    config.constraint_encoding = ConstraintEncoding::Range;
    config.permutation_strengthening = true;
    if (has_tables) config.table_encoding = ConstraintEncoding::Direct;
  } else if (base == "direct") {
    config.var_encoding = VarEncoding::Direct;
    config.constraint_encoding = ConstraintEncoding::Direct;
  } else if (base.rfind("ksupport", 0) == 0) {
    config.var_encoding = VarEncoding::Direct;
    config.constraint_encoding = ConstraintEncoding::KSupport;
    if (auto colon = base.find(':'); colon != std::string::npos)
      config.ksupport_k = std::stoi(base.substr(colon + 1));
  } else {
    throw EncodeError("unknown encoding name: " + name);
  }
  config.hall_cap = cap;
  return config;
}

CspInstance bench_instance(const BenchSpec& spec, int size) {
  if (spec.family == "php") return gen_php(size);
  if (spec.family == "latin")
    return gen_latin(size, spec.fill, spec.seed ^ (uint64_t)size * 0x9e3779b9u,
                     LatinFill::Random);
  if (spec.family == "graceful") return gen_graceful_double_wheel(size);
  throw EncodeError("unknown family: " + spec.family +
                    " (use php, latin or graceful)");
}

namespace {

bool has_table_constraint(const CspInstance& inst) {
  for (const Constraint& c : inst.constraints)
    if (c.kind == ConstraintKind::Table) return true;
  return false;
}

BenchRow run_one(const BenchSpec& spec, int size, const std::string& enc_name) {
  BenchRow row;
  row.family = spec.family;
  row.size = size;
  row.encoding = enc_name;
  row.seed = spec.seed;
  try {
    CspInstance inst = bench_instance(spec, size);
    EncodingConfig config = named_encoding(enc_name, has_table_constraint(inst));
    EncodedInstance enc = encode_instance(inst, config);
    NogoodDb db = lower_and_compile(enc.program);
    row.nogood_count = db.size();
    row.prop_count = db.num_props();
    EngineOptions opts;
    opts.seed = spec.seed;
    opts.max_conflicts = spec.max_conflicts;
    opts.max_time_ms = spec.max_time_ms;
    Engine eng(db, opts);
    SolveStatus st = eng.solve();
    row.stats = eng.stats();
    if (st == SolveStatus::Sat) {
      row.status = "sat";
      row.verify_attempted = true;
      row.verified = satisfies(inst, extract_csp_solution(eng.model(), enc));
    } else if (st == SolveStatus::Unsat) {
      row.status = "unsat";
      int64_t space = 1;
      for (const CspVariable& v : inst.variables) {
        space *= v.domain.size();
        if (space > 1'000'000) break;
      }
      if (space <= 1'000'000) {
        row.verify_attempted = true;
        try {
          row.verified = enumerate_solutions(inst).empty();
        } catch (const OracleError&) {
          row.verify_attempted = false;
        }
      }
    } else {
      row.status = "limit";
    }
  } catch (const std::exception& ex) {
    row.status = "error";
    row.error = ex.what();
  }
  return row;
}

}  // namespace

std::string bench_row_json(const BenchRow& row) {
  nlohmann::ordered_json j;
  j["family"] = row.family;
  j["size"] = row.size;
  j["encoding"] = row.encoding;
  j["seed"] = row.seed;
  j["status"] = row.status;
  j["decisions"] = row.stats.decisions;
  j["conflicts"] = row.stats.conflicts;
  j["propagations"] = row.stats.propagations;
  j["learned"] = row.stats.learned;
  j["restarts"] = row.stats.restarts;
  j["time_ms"] = row.stats.time_ms;
  j["nogoods"] = row.nogood_count;
  j["props"] = row.prop_count;
  j["verify_attempted"] = row.verify_attempted;
  j["verified"] = row.verified;
  if (!row.error.empty()) j["error"] = row.error;
  return j.dump();
}

std::vector<BenchRow> run_bench(const BenchSpec& spec, std::ostream* jsonl) {
  struct Task {
    int size;
    std::string encoding;
  };
  std::vector<Task> tasks;
  for (int size : spec.sizes)
    for (const std::string& enc : spec.encodings) tasks.push_back({size, enc});
  std::vector<BenchRow> rows(tasks.size());

  unsigned workers = spec.threads > 0
                         ? (unsigned)spec.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, (unsigned)std::max<size_t>(tasks.size(), 1));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      rows[i] = run_one(spec, tasks[i].size, tasks[i].encoding);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (jsonl)
    for (const BenchRow& row : rows) *jsonl << bench_row_json(row) << "\n";
  return rows;
}

}  // namespace encore
