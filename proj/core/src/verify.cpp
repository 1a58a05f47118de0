#include "encore/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace encore {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return (int)(rng() % (uint64_t)(hi - lo + 1)) + lo;
}

bool chance(std::mt19937_64& rng, double p) {
  return (double)(rng() % 10000) < p * 10000.0;
}

std::vector<VarId> pick_scope(std::mt19937_64& rng, int n, int size) {
  std::vector<VarId> ids((size_t)n);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize((size_t)size);
  return ids;
}

void add_random_vars(CspInstance& inst, std::mt19937_64& rng, int n,
                     int max_d) {
  for (int i = 0; i < n; ++i) {
    int lo = pick(rng, -2, 3);
    int d = pick(rng, 2, max_d);
    inst.variables.push_back(
        {i, "v" + std::to_string(i + 1), Domain::interval(lo, lo + d - 1)});
  }
}

Constraint random_table(std::mt19937_64& rng, const CspInstance& inst,
                        int arity) {
  Constraint c;
  c.kind = ConstraintKind::Table;
  c.scope = pick_scope(rng, inst.num_vars(), arity);
  c.polarity =
      chance(rng, 0.7) ? TablePolarity::Allowed : TablePolarity::Forbidden;
  double density = 0.25 + (double)pick(rng, 0, 50) / 100.0;
  std::vector<int> t((size_t)arity);
  std::function<void(size_t)> walk = [&](size_t k) {
    if (k == (size_t)arity) {
      if (chance(rng, density)) c.tuples.push_back(t);
      return;
    }
    const Domain& d = inst.var(c.scope[k]).domain;
    for (int x = d.lo; x <= d.hi; ++x) {
      t[k] = x;
      walk(k + 1);
    }
  };
  walk(0);
  return c;
}

}  // namespace

CspInstance random_binary_table_instance(std::mt19937_64& rng, int max_n,
                                         int max_d) {
  CspInstance inst;
  int n = pick(rng, 2, max_n);
  add_random_vars(inst, rng, n, max_d);
  int tables = pick(rng, 1, n + 1);
  for (int i = 0; i < tables; ++i)
    inst.constraints.push_back(random_table(rng, inst, 2));
  return inst;
}

CspInstance random_ternary_table_instance(std::mt19937_64& rng, int max_d) {
  CspInstance inst;
  add_random_vars(inst, rng, 3, max_d);
  Constraint c = random_table(rng, inst, 3);
  c.polarity = TablePolarity::Allowed;
  inst.constraints.push_back(std::move(c));
  return inst;
}

CspInstance random_mixed_instance(std::mt19937_64& rng, int max_n, int max_d,
                                  bool alldiff_heavy) {
  CspInstance inst;
  int n = pick(rng, 3, max_n);
  add_random_vars(inst, rng, n, max_d);
  if (alldiff_heavy) {
    int groups = pick(rng, 1, 2);
    for (int g = 0; g < groups; ++g) {
      Constraint c;
      c.kind = ConstraintKind::AllDifferent;
      c.scope = pick_scope(rng, n, pick(rng, 2, n));
      inst.constraints.push_back(std::move(c));
    }
    if (chance(rng, 0.5))
      inst.constraints.push_back(random_table(rng, inst, pick(rng, 2, 3)));
  } else {
    int tables = pick(rng, 1, 2);
    for (int i = 0; i < tables; ++i)
      inst.constraints.push_back(
          random_table(rng, inst, std::min(pick(rng, 2, 3), n)));
    if (chance(rng, 0.4)) {
      Constraint c;
      c.kind = ConstraintKind::AllDifferent;
      c.scope = pick_scope(rng, n, pick(rng, 2, n));
      inst.constraints.push_back(std::move(c));
    }
  }
  return inst;
}

std::vector<Lit> sample_value_restrictions(std::mt19937_64& rng,
                                           const EncodedInstance& enc,
                                           DomainState& start) {
  std::vector<Lit> lits;
  for (const CspVariable& var : enc.instance.variables) {
    if (!chance(rng, 0.7)) continue;
    std::vector<int> values = var.domain.values();
    std::set<int> keep;
    for (int x : values)
      if (chance(rng, 0.6)) keep.insert(x);
    if (keep.empty()) keep.insert(values[(size_t)pick(
        rng, 0, (int)values.size() - 1)]);
    if ((int)keep.size() == var.domain.size()) continue;
    start.domains[(size_t)var.id] = Domain::from_values(keep);
    auto vl = restrict_to_values(enc, var.id, keep);
    lits.insert(lits.end(), vl.begin(), vl.end());
  }
  return lits;
}

std::vector<Lit> sample_interval_restrictions(std::mt19937_64& rng,
                                              const EncodedInstance& enc,
                                              DomainState& start) {
  std::vector<Lit> lits;
  for (const CspVariable& var : enc.instance.variables) {
    if (!chance(rng, 0.7)) continue;
    int lo = var.domain.lo, hi = var.domain.hi;
    int l0 = pick(rng, lo, hi);
    int u0 = pick(rng, l0, hi);
    if (l0 == lo && u0 == hi) continue;
    start.domains[(size_t)var.id] = Domain::interval(l0, u0);
    auto vl = restrict_to_interval(enc, var.id, l0, u0);
    lits.insert(lits.end(), vl.begin(), vl.end());
  }
  return lits;
}

PropagationSnapshot propagate_snapshot(const EncodedInstance& enc,
                                       const std::vector<Lit>& assumptions) {
  NogoodDb db = lower_and_compile(enc.program);
  EngineOptions opts;
  opts.use_restarts = false;
  Engine eng(db, opts);
  if (eng.assume(assumptions) == PropagationResult::Conflict)
    return {true, {}};
  PropagationSnapshot snap;
  for (const CspVariable& var : enc.instance.variables)
    snap.kept.push_back(extract_domain(eng, enc, var.id).value_set());
  return snap;
}

namespace {

std::string show_set(const std::set<int>& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int x : s) {
    if (!first) os << ",";
    os << x;
    first = false;
  }
  os << "}";
  return os.str();
}

void note_failure(VerifyReport& rep, int trial, const std::string& what) {
  ++rep.failures;
  if (rep.notes.size() < 3)
    rep.notes.push_back("trial " + std::to_string(trial) + ": " + what);
}

// Shared trial driver comparing propagation against an oracle fixpoint.
// mode picks the comparison: exact equality or containment (oracle at least
// as strong, for the weaker direct scheme).
enum class Strength { Equal, OracleAtLeast };

template <typename MakeInstance, typename Restrict, typename Oracle>
VerifyReport run_domain_suite(const std::string& name, VerifyOptions opts,
                              EncodingConfig config, Strength strength,
                              MakeInstance&& make, Restrict&& restrict,
                              Oracle&& oracle) {
  VerifyReport rep;
  rep.name = name;
  std::mt19937_64 rng(opts.seed);
  for (int trial = 0; trial < opts.trials; ++trial) {
    ++rep.trials;
    CspInstance inst = make(rng);
    EncodedInstance enc;
    DomainState start = DomainState::of(inst);
    std::vector<Lit> lits;
    try {
      enc = encode_instance(inst, config);
      lits = restrict(rng, enc, start);
    } catch (const std::exception& ex) {
      note_failure(rep, trial, std::string("encode: ") + ex.what());
      continue;
    }
    DomainState want = oracle(inst, start);
    PropagationSnapshot got;
    try {
      got = propagate_snapshot(enc, lits);
    } catch (const std::exception& ex) {
      note_failure(rep, trial, std::string("propagate: ") + ex.what());
      continue;
    }
    if (strength == Strength::Equal) {
      if (got.conflict != want.failed) {
        note_failure(rep, trial,
                     got.conflict ? "conflict but oracle survived"
                                  : "oracle failed but no conflict");
        continue;
      }
      if (got.conflict) continue;
      for (const CspVariable& var : inst.variables) {
        std::set<int> ws = want.domains[(size_t)var.id].value_set();
        if (got.kept[(size_t)var.id] != ws) {
          note_failure(rep, trial,
                       var.name + " kept " +
                           show_set(got.kept[(size_t)var.id]) + " vs oracle " +
                           show_set(ws));
          break;
        }
      }
      continue;
    }
    // OracleAtLeast: the oracle may prune strictly more, never less.
    if (got.conflict && !want.failed) {
      note_failure(rep, trial, "conflict beyond the oracle");
      continue;
    }
    if (!got.conflict && want.failed) {
      ++rep.strict;
      continue;
    }
    if (got.conflict) continue;
    bool stricter = false, bad = false;
    for (const CspVariable& var : inst.variables) {
      std::set<int> ws = want.domains[(size_t)var.id].value_set();
      const std::set<int>& gs = got.kept[(size_t)var.id];
      if (!std::includes(gs.begin(), gs.end(), ws.begin(), ws.end())) {
        note_failure(rep, trial,
                     var.name + " pruned beyond the oracle: kept " +
                         show_set(gs) + " vs " + show_set(ws));
        bad = true;
        break;
      }
      stricter |= gs.size() > ws.size();
    }
    if (!bad && stricter) ++rep.strict;
  }
  return rep;
}

}  // namespace

VerifyReport check_support_matches_arc(VerifyOptions opts) {
  EncodingConfig config;
  config.var_encoding = VarEncoding::Direct;
  config.constraint_encoding = ConstraintEncoding::Support;
  return run_domain_suite(
      "support-vs-arc", opts, config, Strength::Equal,
      [&](std::mt19937_64& rng) {
        return random_binary_table_instance(rng, opts.max_n, opts.max_d);
      },
      [](std::mt19937_64& rng, const EncodedInstance& enc, DomainState& s) {
        return sample_value_restrictions(rng, enc, s);
      },
      [](const CspInstance& inst, const DomainState& s) {
        return ac3_binary_decomposition(inst, s);
      });
}

VerifyReport check_direct_under_arc(VerifyOptions opts) {
  EncodingConfig config;
  config.var_encoding = VarEncoding::Direct;
  config.constraint_encoding = ConstraintEncoding::Direct;
  VerifyReport rep = run_domain_suite(
      "direct-under-arc", opts, config, Strength::OracleAtLeast,
      [&](std::mt19937_64& rng) {
        return random_binary_table_instance(rng, opts.max_n, opts.max_d);
      },
      [](std::mt19937_64& rng, const EncodedInstance& enc, DomainState& s) {
        return sample_value_restrictions(rng, enc, s);
      },
      [](const CspInstance& inst, const DomainState& s) {
        return ac3_binary_decomposition(inst, s);
      });
  // Deterministic witness: a single allowed pair leaves the forbidden-pair
  // scheme inert but arc consistency collapses both domains.
  CspInstance inst;
  inst.variables.push_back({0, "x", Domain::interval(1, 2)});
  inst.variables.push_back({1, "y", Domain::interval(1, 2)});
  Constraint c;
  c.kind = ConstraintKind::Table;
  c.scope = {0, 1};
  c.polarity = TablePolarity::Allowed;
  c.tuples = {{1, 1}};
  inst.constraints.push_back(std::move(c));
  ++rep.trials;
  EncodedInstance enc = encode_instance(inst, config);
  PropagationSnapshot got = propagate_snapshot(enc, {});
  DomainState want = ac3_binary_decomposition(inst, DomainState::of(inst));
  if (got.conflict || want.failed ||
      got.kept[0] != std::set<int>{1, 2} ||
      want.domains[0].value_set() != std::set<int>{1}) {
    note_failure(rep, rep.trials - 1, "handmade witness fell through");
  } else {
    ++rep.strict;
  }
  if (rep.strict == 0)
    note_failure(rep, rep.trials, "no strictly weaker trial observed");
  return rep;
}

VerifyReport check_pair_extension_conflicts(VerifyOptions opts) {
  VerifyReport rep;
  rep.name = "pair-extension";
  std::mt19937_64 rng(opts.seed);
  EncodingConfig config;
  config.var_encoding = VarEncoding::Direct;
  config.constraint_encoding = ConstraintEncoding::KSupport;
  config.ksupport_k = 2;
  for (int trial = 0; trial < opts.trials; ++trial) {
    ++rep.trials;
    CspInstance inst = random_ternary_table_instance(rng, opts.max_d);
    const Constraint& c = inst.constraints[0];
    size_t p1 = (size_t)pick(rng, 0, 2);
    size_t p2 = (size_t)pick(rng, 0, 1);
    if (p2 >= p1) ++p2;
    VarId v = c.scope[p1], w = c.scope[p2];
    int a = pick(rng, inst.var(v).domain.lo, inst.var(v).domain.hi);
    int b = pick(rng, inst.var(w).domain.lo, inst.var(w).domain.hi);
    bool want = relational_extension_exists(inst, 0, DomainState::of(inst),
                                            {{v, a}, {w, b}});
    EncodedInstance enc;
    PropagationSnapshot got;
    try {
      enc = encode_instance(inst, config);
      std::vector<Lit> lits;
      auto one = restrict_to_values(enc, v, {a});
      auto two = restrict_to_values(enc, w, {b});
      lits.insert(lits.end(), one.begin(), one.end());
      lits.insert(lits.end(), two.begin(), two.end());
      got = propagate_snapshot(enc, lits);
    } catch (const std::exception& ex) {
      note_failure(rep, trial, ex.what());
      continue;
    }
    if (got.conflict == want) {
      std::ostringstream os;
      os << "pin " << inst.var(v).name << "=" << a << ", " << inst.var(w).name
         << "=" << b << (want ? ": extension exists yet conflict"
                              : ": no extension yet no conflict");
      note_failure(rep, trial, os.str());
    }
  }
  return rep;
}

namespace {

VerifyReport interval_suite(const std::string& name, VerifyOptions opts,
                            VarEncoding var_enc, ConstraintEncoding con_enc,
                            bool alldiff_heavy, bool bound_flavor) {
  EncodingConfig config;
  config.var_encoding = var_enc;
  config.constraint_encoding = con_enc;
  return run_domain_suite(
      name, opts, config, Strength::Equal,
      [&, alldiff_heavy](std::mt19937_64& rng) {
        return random_mixed_instance(rng, opts.max_n, opts.max_d,
                                     alldiff_heavy);
      },
      [](std::mt19937_64& rng, const EncodedInstance& enc, DomainState& s) {
        return sample_interval_restrictions(rng, enc, s);
      },
      [bound_flavor](const CspInstance& inst, const DomainState& s) {
        return bound_flavor ? bound_consistent_fixpoint(inst, s)
                            : range_consistent_fixpoint(inst, s);
      });
}

}  // namespace

VerifyReport check_table_range_pruning(VerifyOptions opts) {
  return interval_suite("table-range", opts, VarEncoding::Range,
                        ConstraintEncoding::Range, false, false);
}

VerifyReport check_table_bound_pruning(VerifyOptions opts) {
  return interval_suite("table-bound", opts, VarEncoding::Bound,
                        ConstraintEncoding::Bound, false, true);
}

VerifyReport check_alldiff_range_pruning(VerifyOptions opts) {
  return interval_suite("alldiff-range", opts, VarEncoding::Range,
                        ConstraintEncoding::Range, true, false);
}

VerifyReport check_alldiff_bound_pruning(VerifyOptions opts) {
  return interval_suite("alldiff-bound", opts, VarEncoding::Bound,
                        ConstraintEncoding::Bound, true, true);
}

VerifyReport check_hall_cap_monotone(VerifyOptions opts) {
  VerifyReport rep;
  rep.name = "hall-cap-monotone";
  std::mt19937_64 rng(opts.seed);
  for (int trial = 0; trial < opts.trials; ++trial) {
    ++rep.trials;
    CspInstance inst = random_mixed_instance(rng, opts.max_n, opts.max_d, true);
    std::vector<int> caps = {1, 3, 0};  // 0 means uncapped
    std::vector<PropagationSnapshot> snaps;
    bool broken = false;
    uint64_t restriction_seed = rng();
    for (int cap : caps) {
      EncodingConfig config;
      config.var_encoding = VarEncoding::Range;
      config.constraint_encoding = ConstraintEncoding::Range;
      config.hall_cap = cap;
      try {
        EncodedInstance enc = encode_instance(inst, config);
        DomainState start = DomainState::of(inst);
        std::mt19937_64 rrng(restriction_seed);
        auto lits = sample_interval_restrictions(rrng, enc, start);
        snaps.push_back(propagate_snapshot(enc, lits));
      } catch (const std::exception& ex) {
        note_failure(rep, trial, ex.what());
        broken = true;
        break;
      }
    }
    if (broken) continue;
    for (size_t i = 0; i + 1 < snaps.size(); ++i) {
      const PropagationSnapshot& weak = snaps[i];
      const PropagationSnapshot& strong = snaps[i + 1];
      if (weak.conflict && !strong.conflict) {
        note_failure(rep, trial, "bigger cap lost a conflict");
        break;
      }
      if (weak.conflict || strong.conflict) continue;
      for (size_t v = 0; v < weak.kept.size(); ++v)
        if (!std::includes(weak.kept[v].begin(), weak.kept[v].end(),
                           strong.kept[v].begin(), strong.kept[v].end())) {
          note_failure(rep, trial, "bigger cap kept extra values");
          break;
        }
    }
  }
  return rep;
}

std::vector<VerifyReport> run_verify(const std::string& which,
                                     VerifyOptions opts) {
  std::vector<VerifyReport> out;
  auto wants = [&](const std::string& key) {
    return which == "all" || which == key;
  };
  if (wants("1")) out.push_back(check_direct_under_arc(opts));
  if (wants("2")) out.push_back(check_support_matches_arc(opts));
  if (wants("3")) out.push_back(check_pair_extension_conflicts(opts));
  if (wants("4")) out.push_back(check_table_range_pruning(opts));
  if (wants("5")) out.push_back(check_table_bound_pruning(opts));
  if (wants("c2")) out.push_back(check_alldiff_range_pruning(opts));
  if (wants("c3")) out.push_back(check_alldiff_bound_pruning(opts));
  if (out.empty())
    throw std::invalid_argument("unknown check: " + which +
                                " (use 1 2 3 4 5 c2 c3 or all)");
  return out;
}

}  // namespace encore
