#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "encore/bench.hpp"
#include "encore/csp_json.hpp"
#include "encore/encode.hpp"
#include "encore/program_text.hpp"
#include "encore/verify.hpp"

namespace {

encore::VarEncoding parse_var_encoding(const std::string& s) {
  if (s == "direct") return encore::VarEncoding::Direct;
  if (s == "bound") return encore::VarEncoding::Bound;
  if (s == "range") return encore::VarEncoding::Range;
  if (s == "bound-hybrid") return encore::VarEncoding::BoundHybrid;
  if (s == "range-hybrid") return encore::VarEncoding::RangeHybrid;
  throw CLI::ValidationError("--var-enc",
                             "expected direct, bound, range, bound-hybrid or "
                             "range-hybrid");
}

std::pair<encore::ConstraintEncoding, int> parse_con_encoding(
    const std::string& s) {
  if (s == "direct") return {encore::ConstraintEncoding::Direct, 0};
  if (s == "support") return {encore::ConstraintEncoding::Support, 0};
  if (s == "range") return {encore::ConstraintEncoding::Range, 0};
  if (s == "bound") return {encore::ConstraintEncoding::Bound, 0};
  if (s.rfind("ksupport", 0) == 0) {
    int k = 2;
    if (auto colon = s.find(':'); colon != std::string::npos)
      k = std::stoi(s.substr(colon + 1));
    return {encore::ConstraintEncoding::KSupport, k};
  }
  throw CLI::ValidationError(
      "--con-enc", "expected direct, support, ksupport[:K], range or bound");
}

encore::CspInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return encore::parse_instance(buffer.str());
}

struct EncodingFlags {
  std::string var_enc = "direct";
  std::string con_enc = "support";
  int hall_cap = 0;
  bool permutation_strengthening = false;

  encore::EncodingConfig config() const {
    encore::EncodingConfig c;
    c.var_encoding = parse_var_encoding(var_enc);
    auto [enc, k] = parse_con_encoding(con_enc);
    c.constraint_encoding = enc;
    if (k > 0) c.ksupport_k = k;
    c.hall_cap = hall_cap;
    c.permutation_strengthening = permutation_strengthening;
    return c;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--var-enc", var_enc,
                    "variable encoding: direct|bound|range|bound-hybrid|"
                    "range-hybrid")
        ->capture_default_str();
    cmd->add_option("--con-enc", con_enc,
                    "constraint encoding: direct|support|ksupport[:K]|range|"
                    "bound")
        ->capture_default_str();
    cmd->add_option("--hall-cap", hall_cap,
                    "cap detected interval width (0 = unlimited)")
        ->capture_default_str();
    cmd->add_flag("--permutation-strengthening", permutation_strengthening,
                  "add covering rules for permutation constraints");
  }
};

int do_encode(const std::string& instance_path, const EncodingFlags& flags,
              const std::string& out_path) {
  encore::CspInstance inst = load_instance(instance_path);
  encore::EncodedInstance enc = encore::encode_instance(inst, flags.config());
  std::string text = encore::serialize_program(enc.program);
  if (out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
  return 0;
}

int do_solve(const std::string& instance_path, const EncodingFlags& flags,
             uint64_t seed, int64_t max_time_ms, int64_t max_conflicts) {
  encore::CspInstance inst = load_instance(instance_path);
  encore::EncodedInstance enc = encore::encode_instance(inst, flags.config());
  encore::NogoodDb db = encore::lower_and_compile(enc.program);
  encore::EngineOptions opts;
  opts.seed = seed;
  opts.max_time_ms = max_time_ms;
  opts.max_conflicts = max_conflicts;
  encore::Engine eng(db, opts);
  encore::SolveStatus st = eng.solve();
  nlohmann::ordered_json j;
  j["status"] = st == encore::SolveStatus::Sat
                    ? "sat"
                    : st == encore::SolveStatus::Unsat ? "unsat" : "limit";
  j["decisions"] = eng.stats().decisions;
  j["conflicts"] = eng.stats().conflicts;
  j["propagations"] = eng.stats().propagations;
  j["learned"] = eng.stats().learned;
  j["time_ms"] = eng.stats().time_ms;
  j["seed"] = seed;
  std::cout << j.dump(2) << "\n";
  switch (st) {
    case encore::SolveStatus::Sat: return 10;
    case encore::SolveStatus::Unsat: return 20;
    case encore::SolveStatus::Limit: return 30;
  }
  return 30;
}

int do_verify(const std::string& which, encore::VerifyOptions opts) {
  bool all_ok = true;
  for (const encore::VerifyReport& rep : encore::run_verify(which, opts)) {
    std::cout << rep.name << ": trials=" << rep.trials
              << " failures=" << rep.failures << " weaker=" << rep.strict
              << (rep.ok() ? " ok" : " FAILED") << "\n";
    for (const std::string& note : rep.notes)
      std::cout << "  " << note << "\n";
    all_ok &= rep.ok();
  }
  return all_ok ? 0 : 1;
}

int do_bench(const encore::BenchSpec& spec, const std::string& jsonl_path) {
  std::ofstream jsonl;
  if (!jsonl_path.empty()) {
    jsonl.open(jsonl_path);
    if (!jsonl) throw std::runtime_error("cannot write " + jsonl_path);
  }
  auto rows = encore::run_bench(spec, jsonl_path.empty() ? nullptr : &jsonl);
  for (const encore::BenchRow& row : rows)
    std::cout << encore::bench_row_json(row) << "\n";
  for (const encore::BenchRow& row : rows)
    if (row.status == "error") return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nogood encodings of finite constraint networks"};
  app.require_subcommand(1);

  auto* encode = app.add_subcommand("encode", "translate an instance to rules");
  std::string enc_instance, enc_out;
  EncodingFlags enc_flags;
  encode->add_option("--instance", enc_instance, "instance JSON file")
      ->required();
  enc_flags.attach(encode);
  encode->add_option("--out", enc_out, "output file (- for stdout)")
      ->required();

  auto* solve = app.add_subcommand("solve", "encode and run the solver");
  std::string solve_instance;
  EncodingFlags solve_flags;
  uint64_t solve_seed = 1;
  int64_t solve_time = -1, solve_conflicts = -1;
  solve->add_option("--instance", solve_instance, "instance JSON file")
      ->required();
  solve_flags.attach(solve);
  solve->add_option("--seed", solve_seed, "decision tie-break seed")
      ->capture_default_str();
  solve->add_option("--max-time-ms", solve_time, "time budget (-1 unlimited)")
      ->capture_default_str();
  solve->add_option("--max-conflicts", solve_conflicts,
                    "conflict budget (-1 unlimited)")
      ->capture_default_str();

  auto* verify = app.add_subcommand(
      "verify", "compare propagation against slow consistency oracles");
  encore::VerifyOptions vopts;
  std::string check = "all";
  verify->add_option("--trials", vopts.trials, "instances per suite")
      ->capture_default_str();
  verify->add_option("--seed", vopts.seed, "corpus seed")
      ->capture_default_str();
  verify->add_option("--max-n", vopts.max_n, "largest variable count")
      ->capture_default_str();
  verify->add_option("--max-d", vopts.max_d, "largest domain size")
      ->capture_default_str();
  verify
      ->add_option("--check", check,
                   "which claim to check: 1 2 3 4 5 c2 c3 or all")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "run a family/encoding grid");
  encore::BenchSpec spec;
  std::string jsonl_path;
  bench->add_option("--family", spec.family, "php | latin | graceful")
      ->capture_default_str();
  bench->add_option("--grid", spec.sizes, "instance sizes")->required();
  bench
      ->add_option("--encodings", spec.encodings,
                   "short names: S B R B_H R_H direct ksupport[:K]")
      ->required();
  bench->add_option("--fill", spec.fill, "latin preassignment share")
      ->capture_default_str();
  bench->add_option("--seed", spec.seed, "generator and engine seed")
      ->capture_default_str();
  bench->add_option("--max-conflicts", spec.max_conflicts, "per-run budget")
      ->capture_default_str();
  bench->add_option("--max-time-ms", spec.max_time_ms, "per-run budget")
      ->capture_default_str();
  bench->add_option("--threads", spec.threads, "worker count (0 = auto)")
      ->capture_default_str();
  bench->add_option("--jsonl", jsonl_path, "append rows to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed()) return do_encode(enc_instance, enc_flags, enc_out);
    if (solve->parsed())
      return do_solve(solve_instance, solve_flags, solve_seed, solve_time,
                      solve_conflicts);
    if (verify->parsed()) return do_verify(check, vopts);
    if (bench->parsed()) return do_bench(spec, jsonl_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
