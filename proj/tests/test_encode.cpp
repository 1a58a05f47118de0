#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "encore/cardinality.hpp"
#include "encore/encode.hpp"
#include "encore/oracles.hpp"

using namespace encore;

namespace {

CspInstance make_vars(const std::vector<std::pair<int, int>>& ranges) {
  CspInstance inst;
  for (size_t i = 0; i < ranges.size(); ++i)
    inst.variables.push_back({(VarId)i, "v" + std::to_string(i),
                              Domain::interval(ranges[i].first,
                                               ranges[i].second)});
  return inst;
}

Constraint table(std::vector<VarId> scope, TablePolarity pol,
                 std::vector<std::vector<int>> tuples) {
  Constraint c;
  c.kind = ConstraintKind::Table;
  c.scope = std::move(scope);
  c.polarity = pol;
  c.tuples = std::move(tuples);
  return c;
}

Constraint alldiff(std::vector<VarId> scope) {
  Constraint c;
  c.kind = ConstraintKind::AllDifferent;
  c.scope = std::move(scope);
  return c;
}

Constraint permutation(std::vector<VarId> scope) {
  Constraint c;
  c.kind = ConstraintKind::Permutation;
  c.scope = std::move(scope);
  return c;
}

EncodingConfig config_of(VarEncoding ve, ConstraintEncoding ce) {
  EncodingConfig cfg;
  cfg.var_encoding = ve;
  cfg.constraint_encoding = ce;
  return cfg;
}

std::vector<CspAssignment> sorted_solutions(const EncodedInstance& enc) {
  auto sols = solve_all(enc);
  std::sort(sols.begin(), sols.end());
  return sols;
}

size_t kind_count(const Program& p, ConstraintSpan s, RuleKind k) {
  size_t n = 0;
  for (size_t i = s.first; i < s.first + s.count; ++i)
    if (p.rules[i].kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("value ladders pin exactly one value") {
  Program p;
  encode_var_direct(p, 0, 1, 3);
  CHECK(p.rules.size() == 3);
  CHECK(p.var_info.at(0).has_value);

  auto sets = brute_force_answer_sets(translate_cardinality(p));
  REQUIRE(sets.size() == 3);
  std::set<uint32_t> projected;
  for (uint32_t s : sets) projected.insert(s & 0b111u);
  CHECK(projected == std::set<uint32_t>{1, 2, 4});

  Program single;
  encode_var_direct(single, 0, 5, 1);
  CHECK(single.rules.size() == 2);  // one value, nothing to count
  CHECK(brute_force_answer_sets(single).size() == 1);
}

TEST_CASE("bound ladders are monotone stairs") {
  Program p;
  encode_var_bound(p, 0, 1, 3);
  CHECK(p.rules.size() == 4);
  CHECK(p.var_info.at(0).has_bound);
  auto sets = brute_force_answer_sets(p);
  CHECK(sets == std::vector<uint32_t>{0b100, 0b110, 0b111});
}

TEST_CASE("range ladders mirror every interval") {
  Program p;
  encode_var_range(p, 0, 1, 3);
  CHECK(p.rules.size() == 12);
  CHECK(p.atom_count() == 6);

  AtomId full = p.find(AtomSym::range(0, 1, 3));
  REQUIRE(full >= 0);
  std::vector<AtomId> singles = {p.find(AtomSym::range(0, 1, 1)),
                                 p.find(AtomSym::range(0, 2, 2)),
                                 p.find(AtomSym::range(0, 3, 3))};
  auto sets = brute_force_answer_sets(p);
  REQUIRE(sets.size() == 3);
  for (uint32_t s : sets) {
    CHECK(((s >> full) & 1u) == 1u);
    int pinned = 0;
    for (AtomId a : singles) pinned += (s >> a) & 1u;
    CHECK(pinned == 1);
  }
}

TEST_CASE("hybrid links keep both ladders in step") {
  SUBCASE("bounds define ranges") {
    Program p;
    encode_var_bound(p, 0, 1, 3);
    link_bound_range(p, 0);
    CHECK(p.rules.size() == 4 + 15);
    CHECK(p.var_info.at(0).bound_range_linked);
    auto sets = brute_force_answer_sets(p);
    REQUIRE(sets.size() == 3);
    AtomId b1 = p.find(AtomSym::bound(0, 1));
    AtomId r11 = p.find(AtomSym::range(0, 1, 1));
    AtomId r13 = p.find(AtomSym::range(0, 1, 3));
    for (uint32_t s : sets) {
      CHECK(((s >> r13) & 1u) == 1u);
      CHECK(((s >> b1) & 1u) == ((s >> r11) & 1u));
    }
  }
  SUBCASE("ranges define values") {
    Program p;
    encode_var_range(p, 0, 1, 3);
    link_range_direct(p, 0);
    CHECK(p.var_info.at(0).has_value);
    auto sets = brute_force_answer_sets(p);
    REQUIRE(sets.size() == 3);
    std::vector<AtomId> es = {p.find(AtomSym::value(0, 1)),
                              p.find(AtomSym::value(0, 2)),
                              p.find(AtomSym::value(0, 3))};
    for (uint32_t s : sets) {
      int pinned = 0;
      for (AtomId a : es) pinned += (s >> a) & 1u;
      CHECK(pinned == 1);
    }
  }
}

TEST_CASE("ladders refuse malformed registrations") {
  Program p;
  CHECK_THROWS_WITH_AS(encode_var_direct(p, 0, 1, 0),
                       "variable has an empty domain", EncodeError);
  encode_var_direct(p, 0, 1, 3);
  CHECK_THROWS_WITH_AS(encode_var_bound(p, 0, 2, 3),
                       "conflicting ladder shapes for one variable",
                       EncodeError);
  CHECK_NOTHROW(encode_var_bound(p, 0, 1, 3));  // same shape, second ladder
  CHECK(p.var_info.at(0).has_value);
  CHECK(p.var_info.at(0).has_bound);
}

TEST_CASE("direct tables forbid exactly the complement") {
  auto inst = make_vars({{1, 3}, {1, 3}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 1}, {2, 3}}));
  auto enc =
      encode_instance(inst, config_of(VarEncoding::Direct,
                                      ConstraintEncoding::Direct));
  CHECK(enc.constraint_rules[0].count == 7);
  CHECK(kind_count(enc.program, enc.constraint_rules[0],
                   RuleKind::Integrity) == 7);
  CHECK(sorted_solutions(enc) ==
        std::vector<CspAssignment>{{1, 1}, {2, 3}});

  inst.constraints[0].polarity = TablePolarity::Forbidden;
  auto flipped =
      encode_instance(inst, config_of(VarEncoding::Direct,
                                      ConstraintEncoding::Direct));
  CHECK(flipped.constraint_rules[0].count == 2);
  CHECK(sorted_solutions(flipped).size() == 7);
}

TEST_CASE("support tables name the allowed partners") {
  auto inst = make_vars({{1, 3}, {1, 3}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 1}, {2, 3}}));
  auto enc =
      encode_instance(inst, config_of(VarEncoding::Direct,
                                      ConstraintEncoding::Support));
  auto span = enc.constraint_rules[0];
  CHECK(span.count == 6);
  size_t unsupported = 0;
  for (size_t i = span.first; i < span.first + span.count; ++i) {
    CHECK(enc.program.rules[i].kind == RuleKind::Integrity);
    if (enc.program.rules[i].body.size() == 1) ++unsupported;
  }
  CHECK(unsupported == 2);  // v0=3 and v1=2 have no partner at all
  CHECK(sorted_solutions(enc) ==
        std::vector<CspAssignment>{{1, 1}, {2, 3}});
}

TEST_CASE("support refuses wide scopes") {
  auto inst = make_vars({{1, 2}, {1, 2}, {1, 2}});
  inst.constraints.push_back(
      table({0, 1, 2}, TablePolarity::Allowed, {{1, 1, 1}}));
  CHECK_THROWS_WITH_AS(
      encode_instance(inst, config_of(VarEncoding::Direct,
                                      ConstraintEncoding::Support)),
      "support encoding is binary", EncodeError);
}

TEST_CASE("k-support splits tuples into guarded completions") {
  auto inst = make_vars({{1, 2}, {1, 2}, {1, 2}});
  inst.constraints.push_back(table({0, 1, 2}, TablePolarity::Allowed,
                                   {{1, 1, 1}, {2, 2, 2}, {1, 2, 1}}));
  auto direct =
      encode_instance(inst, config_of(VarEncoding::Direct,
                                      ConstraintEncoding::Direct));
  auto want = sorted_solutions(direct);
  REQUIRE(want.size() == 3);

  for (int k = 1; k <= 2; ++k) {
    auto cfg = config_of(VarEncoding::Direct, ConstraintEncoding::KSupport);
    cfg.ksupport_k = k;
    auto enc = encode_instance(inst, cfg);
    CHECK(sorted_solutions(enc) == want);
    if (k == 2) {
      size_t sup_atoms = 0;
      for (AtomId a = 0; a < enc.program.atom_count(); ++a)
        if (enc.program.symbol(a).type == AtomType::Support) ++sup_atoms;
      CHECK(sup_atoms == 9);
    }
  }
}

TEST_CASE("k-support bounds its parameter") {
  auto inst = make_vars({{1, 2}, {1, 2}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 2}}));

  Program p;
  encode_var_direct(p, 0, 1, 2);
  encode_var_direct(p, 1, 1, 2);
  CHECK_THROWS_WITH_AS(
      encode_table_ksupport(p, inst, inst.constraints[0], 0),
      "k-support needs 1 <= k < arity", EncodeError);
  CHECK_THROWS_WITH_AS(
      encode_table_ksupport(p, inst, inst.constraints[0], 2),
      "k-support needs 1 <= k < arity", EncodeError);

  auto cfg = config_of(VarEncoding::Direct, ConstraintEncoding::KSupport);
  cfg.ksupport_k = 0;
  CHECK_THROWS_WITH_AS(encode_instance(inst, cfg),
                       "k-support parameter must be positive", EncodeError);
  cfg.ksupport_k = 7;  // clamped below the arity
  CHECK(sorted_solutions(encode_instance(inst, cfg)) ==
        std::vector<CspAssignment>{{1, 2}});

  // Unary tables have nothing to split and fall back to the direct form.
  auto unary = make_vars({{1, 3}});
  unary.constraints.push_back(table({0}, TablePolarity::Allowed, {{2}}));
  auto cfg1 = config_of(VarEncoding::Direct, ConstraintEncoding::KSupport);
  auto enc1 = encode_instance(unary, cfg1);
  CHECK(enc1.constraint_rules[0].count == 2);
  CHECK(sorted_solutions(enc1) == std::vector<CspAssignment>{{2}});
}

TEST_CASE("interval conflicts come from maximal boxes") {
  auto inst = make_vars({{1, 3}, {1, 3}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{3, 3}}));

  auto cfg = config_of(VarEncoding::Range, ConstraintEncoding::Range);
  auto enc = encode_instance(inst, cfg);
  CHECK(enc.constraint_rules[0].count == 2);
  CHECK(sorted_solutions(enc) == std::vector<CspAssignment>{{3, 3}});

  cfg.maximal_boxes_only = false;
  auto every = encode_instance(inst, cfg);
  CHECK(every.constraint_rules[0].count == 27);
  CHECK(sorted_solutions(every) == std::vector<CspAssignment>{{3, 3}});
}

TEST_CASE("bound boxes drop the redundant lower literal") {
  auto inst = make_vars({{1, 3}, {1, 3}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{3, 3}}));
  auto enc = encode_instance(
      inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
  auto span = enc.constraint_rules[0];
  REQUIRE(span.count == 2);

  std::set<std::set<std::pair<AtomId, bool>>> bodies;
  for (size_t i = span.first; i < span.first + span.count; ++i) {
    std::set<std::pair<AtomId, bool>> body;
    for (const BodyLiteral& l : enc.program.rules[i].body)
      body.insert({l.atom, l.positive});
    bodies.insert(body);
  }
  const Program& p = enc.program;
  auto b = [&](VarId v, int i) {
    AtomId a = p.find(AtomSym::bound(v, i));
    REQUIRE(a >= 0);
    return std::pair<AtomId, bool>{a, true};
  };
  // Upper bounds alone describe boxes flush with the domain's low end.
  CHECK(bodies == std::set<std::set<std::pair<AtomId, bool>>>{
                      {b(0, 3), b(1, 2)}, {b(0, 2), b(1, 3)}});
  CHECK(sorted_solutions(enc) == std::vector<CspAssignment>{{3, 3}});
}

TEST_CASE("all different encodings agree on the solutions") {
  auto inst = make_vars({{1, 3}, {1, 3}, {1, 3}});
  inst.constraints.push_back(alldiff({0, 1, 2}));

  auto direct = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
  CHECK(direct.constraint_rules[0].count == 9);
  auto want = sorted_solutions(direct);
  CHECK(want.size() == 6);

  auto support = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Support));
  CHECK(support.constraint_rules[0].count == 3);
  CHECK(kind_count(support.program, support.constraint_rules[0],
                   RuleKind::CardinalityIntegrity) == 3);
  CHECK(sorted_solutions(support) == want);

  auto range = encode_instance(
      inst, config_of(VarEncoding::Range, ConstraintEncoding::Range));
  CHECK(range.constraint_rules[0].count == 5);  // the full interval is free
  CHECK(sorted_solutions(range) == want);

  auto capped_cfg = config_of(VarEncoding::Range, ConstraintEncoding::Range);
  capped_cfg.hall_cap = 1;
  auto capped = encode_instance(inst, capped_cfg);
  CHECK(capped.constraint_rules[0].count == 3);
  CHECK(sorted_solutions(capped) == want);

  auto bound = encode_instance(
      inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
  CHECK(sorted_solutions(bound) == want);
}

TEST_CASE("bound all different links each ladder once") {
  auto inst = make_vars({{1, 3}, {1, 3}, {1, 3}});
  inst.constraints.push_back(alldiff({0, 1, 2}));
  inst.constraints.push_back(alldiff({0, 1, 2}));
  auto enc = encode_instance(
      inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
  // First constraint pays for three ladder links, the second reuses them.
  CHECK(enc.constraint_rules[0].count == 3 * 15 + 5);
  CHECK(enc.constraint_rules[1].count == 5);
}

TEST_CASE("permutation strengthening adds covering rules") {
  auto inst = make_vars({{1, 3}, {1, 3}, {1, 3}});
  inst.constraints.push_back(permutation({0, 1, 2}));

  SUBCASE("value form adds one integrity per value") {
    auto off = encode_instance(
        inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
    CHECK(off.constraint_rules[0].count == 9);
    auto cfg = config_of(VarEncoding::Direct, ConstraintEncoding::Direct);
    cfg.permutation_strengthening = true;
    auto on = encode_instance(inst, cfg);
    CHECK(on.constraint_rules[0].count == 12);
    auto span = on.constraint_rules[0];
    for (size_t i = span.first + 9; i < span.first + span.count; ++i) {
      CHECK(on.program.rules[i].kind == RuleKind::Integrity);
      for (const BodyLiteral& l : on.program.rules[i].body)
        CHECK_FALSE(l.positive);
    }
    CHECK(sorted_solutions(on) == sorted_solutions(off));
  }
  SUBCASE("interval form adds one counting rule per interval") {
    auto off = encode_instance(
        inst, config_of(VarEncoding::Range, ConstraintEncoding::Range));
    CHECK(off.constraint_rules[0].count == 5);
    auto cfg = config_of(VarEncoding::Range, ConstraintEncoding::Range);
    cfg.permutation_strengthening = true;
    auto on = encode_instance(inst, cfg);
    CHECK(on.constraint_rules[0].count == 11);
    CHECK(sorted_solutions(on) == sorted_solutions(off));
  }
}

TEST_CASE("interval strengthening skips gapped value universes") {
  auto inst = make_vars({{1, 2}, {1, 2}, {4, 4}});
  inst.constraints.push_back(permutation({0, 1, 2}));

  auto cfg = config_of(VarEncoding::Range, ConstraintEncoding::Range);
  auto off = encode_instance(inst, cfg);
  cfg.permutation_strengthening = true;
  auto on = encode_instance(inst, cfg);
  CHECK(on.constraint_rules[0].count == off.constraint_rules[0].count);
  CHECK(sorted_solutions(on) ==
        std::vector<CspAssignment>{{1, 2, 4}, {2, 1, 4}});

  // The value form has no contiguity to lose.
  auto vcfg = config_of(VarEncoding::Direct, ConstraintEncoding::Direct);
  vcfg.permutation_strengthening = true;
  auto von = encode_instance(inst, vcfg);
  CHECK(von.constraint_rules[0].count == 2 + 3);
  CHECK(sorted_solutions(von) ==
        std::vector<CspAssignment>{{1, 2, 4}, {2, 1, 4}});
}

TEST_CASE("uncoverable intervals trip an always violated rule") {
  auto inst = make_vars({{1, 2}, {3, 3}, {3, 3}});
  inst.constraints.push_back(permutation({0, 1, 2}));
  auto cfg = config_of(VarEncoding::Range, ConstraintEncoding::Range);
  cfg.permutation_strengthening = true;
  auto enc = encode_instance(inst, cfg);

  AtomId whole = enc.program.find(AtomSym::range(0, 1, 2));
  REQUIRE(whole >= 0);
  bool tripwire = false;
  auto span = enc.constraint_rules[0];
  for (size_t i = span.first; i < span.first + span.count; ++i) {
    const Rule& r = enc.program.rules[i];
    if (r.kind == RuleKind::Integrity && r.body.size() == 1 &&
        r.body[0].atom == whole && r.body[0].positive)
      tripwire = true;
  }
  CHECK(tripwire);
  CHECK(solve_all(enc).empty());
}

TEST_CASE("constraint encodings demand the right ladder") {
  auto tbl = make_vars({{1, 2}, {1, 2}});
  tbl.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 2}, {2, 1}}));

  CHECK_THROWS_WITH_AS(
      encode_instance(tbl, config_of(VarEncoding::Bound,
                                     ConstraintEncoding::Support)),
      doctest::Contains("needs a value ladder"), EncodeError);
  CHECK_THROWS_WITH_AS(
      encode_instance(tbl, config_of(VarEncoding::Direct,
                                     ConstraintEncoding::Range)),
      "range constraint encoding needs a range variable encoding",
      EncodeError);
  CHECK_THROWS_WITH_AS(
      encode_instance(tbl, config_of(VarEncoding::Range,
                                     ConstraintEncoding::Bound)),
      "bound constraint encoding needs a bound variable encoding",
      EncodeError);

  // A table override is part of the bargain: forcing tables direct under a
  // pure bound ladder must be rejected up front.
  auto cfg = config_of(VarEncoding::Bound, ConstraintEncoding::Bound);
  cfg.table_encoding = ConstraintEncoding::Direct;
  CHECK_THROWS_WITH_AS(encode_instance(tbl, cfg),
                       doctest::Contains("needs a value ladder"), EncodeError);

  auto mixed = make_vars({{1, 3}, {1, 3}, {1, 3}});
  mixed.constraints.push_back(alldiff({0, 1, 2}));
  mixed.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 2}, {2, 1}, {3, 3}}));
  auto hybrid = config_of(VarEncoding::RangeHybrid, ConstraintEncoding::Range);
  hybrid.table_encoding = ConstraintEncoding::Direct;
  auto enc = encode_instance(mixed, hybrid);
  CHECK(kind_count(enc.program, enc.constraint_rules[0],
                   RuleKind::CardinalityIntegrity) ==
        enc.constraint_rules[0].count);
  CHECK(kind_count(enc.program, enc.constraint_rules[1],
                   RuleKind::Integrity) == enc.constraint_rules[1].count);
  auto sols = sorted_solutions(enc);
  CHECK(sols == std::vector<CspAssignment>{{1, 2, 3}, {2, 1, 3}});
}

TEST_CASE("constraint spans tile the rule list") {
  auto inst = make_vars({{1, 3}, {1, 3}, {1, 3}});
  inst.constraints.push_back(alldiff({0, 1, 2}));
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Forbidden, {{1, 1}}));
  auto enc = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
  REQUIRE(enc.constraint_rules.size() == 2);
  CHECK(enc.constraint_rules[0].first == 3 * 3);  // after the ladders
  CHECK(enc.constraint_rules[1].first ==
        enc.constraint_rules[0].first + enc.constraint_rules[0].count);
  CHECK(enc.constraint_rules[1].first + enc.constraint_rules[1].count ==
        enc.program.rules.size());
}

TEST_CASE("solution extraction needs a pinned model") {
  auto inst = make_vars({{1, 2}});
  auto enc = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
  const Program& p = enc.program;
  AtomId e1 = p.find(AtomSym::value(0, 1));
  AtomId e2 = p.find(AtomSym::value(0, 2));
  REQUIRE(e1 >= 0);
  REQUIRE(e2 >= 0);

  Model m{std::vector<TruthValue>((size_t)p.atom_count(),
                                  TruthValue::False)};
  CHECK_THROWS_WITH_AS(extract_csp_solution(m, enc),
                       "model does not pin variable 0: no value", EncodeError);
  m.values[(size_t)e1] = TruthValue::True;
  m.values[(size_t)e2] = TruthValue::True;
  CHECK_THROWS_WITH_AS(extract_csp_solution(m, enc),
                       "model does not pin variable 0: several values",
                       EncodeError);
  m.values[(size_t)e2] = TruthValue::False;
  CHECK(extract_csp_solution(m, enc) == CspAssignment{1});
}

TEST_CASE("domains read back from the engine state") {
  SUBCASE("value ladder keeps surviving values") {
    auto inst = make_vars({{1, 4}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
    NogoodDb db = lower_and_compile(enc.program);
    Engine eng(db);
    auto lits = restrict_to_values(enc, 0, {1, 3});
    REQUIRE(eng.assume(lits) == PropagationResult::Fixpoint);
    CHECK(extract_domain(eng, enc, 0) == Domain::from_values({1, 3}));
  }
  SUBCASE("a wiped value ladder is an error") {
    auto inst = make_vars({{1, 3}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
    NogoodDb empty(enc.program.atom_count(), 0);
    Engine eng(empty);
    for (int i = 1; i <= 3; ++i)
      eng.decide(Lit::f(enc.program.find(AtomSym::value(0, i))));
    CHECK_THROWS_WITH_AS(extract_domain(eng, enc, 0),
                         "model does not pin variable 0: all values pruned",
                         EncodeError);
  }
  SUBCASE("bound ladder reads endpoints only") {
    auto inst = make_vars({{1, 4}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
    NogoodDb db = lower_and_compile(enc.program);
    Engine eng(db);
    auto lits = restrict_to_interval(enc, 0, 2, 3);
    REQUIRE(eng.assume(lits) == PropagationResult::Fixpoint);
    CHECK(extract_domain(eng, enc, 0) == Domain::interval(2, 3));
  }
  SUBCASE("crossed bounds are an error") {
    auto inst = make_vars({{1, 3}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
    NogoodDb empty(enc.program.atom_count(), 0);
    Engine eng(empty);
    for (int i = 1; i <= 3; ++i)
      eng.decide(Lit::f(enc.program.find(AtomSym::bound(0, i))));
    CHECK_THROWS_WITH_AS(extract_domain(eng, enc, 0),
                         "model does not pin variable 0: bounds crossed",
                         EncodeError);
  }
}

TEST_CASE("interval restrictions render per ladder") {
  SUBCASE("range ladder pins the interval and denies the flanks") {
    auto inst = make_vars({{1, 4}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Range, ConstraintEncoding::Range));
    const Program& p = enc.program;
    auto lits = restrict_to_interval(enc, 0, 2, 3);
    std::set<Lit> got(lits.begin(), lits.end());
    std::set<Lit> want = {
        Lit::t(p.find(AtomSym::range(0, 2, 3))),
        Lit::f(p.find(AtomSym::range(0, 1, 1))),
        Lit::f(p.find(AtomSym::range(0, 4, 4)))};
    CHECK(got == want);
    CHECK_THROWS_WITH_AS(restrict_to_interval(enc, 0, 5, 9),
                         "interval restriction is empty", EncodeError);
  }
  SUBCASE("value ladder falls back to value exclusions") {
    auto inst = make_vars({{1, 4}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
    CHECK(restrict_to_interval(enc, 0, 2, 3) ==
          restrict_to_values(enc, 0, {2, 3}));
    CHECK(restrict_to_interval(enc, 0, 2, 3).size() == 2);
  }
  SUBCASE("value restrictions need value atoms") {
    auto inst = make_vars({{1, 4}});
    auto enc = encode_instance(
        inst, config_of(VarEncoding::Bound, ConstraintEncoding::Bound));
    CHECK_THROWS_WITH_AS(restrict_to_values(enc, 0, {2}),
                         "value restrictions need a value ladder",
                         EncodeError);
  }
}

TEST_CASE("enumeration blocks one csp solution at a time") {
  auto inst = make_vars({{1, 2}, {1, 2}});
  auto enc = encode_instance(
      inst, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
  CHECK(sorted_solutions(enc) ==
        std::vector<CspAssignment>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK_THROWS_WITH_AS(solve_all(enc, 3),
                       "more models than the enumeration cap", EncodeError);

  auto hard = make_vars({{1, 2}, {1, 2}, {1, 2}});
  hard.constraints.push_back(alldiff({0, 1, 2}));
  auto henc = encode_instance(
      hard, config_of(VarEncoding::Direct, ConstraintEncoding::Direct));
  EngineOptions opts;
  opts.max_conflicts = 1;
  CHECK_THROWS_WITH_AS(solve_all(henc, 1 << 20, opts),
                       "hit a solver limit while enumerating", EncodeError);
}

TEST_CASE("oversized tables are refused, not ground out") {
  auto inst = make_vars({{1, 2100}, {1, 2100}});
  inst.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 1}}));
  Program p;
  encode_var_direct(p, 0, 1, 2100);
  encode_var_direct(p, 1, 1, 2100);
  CHECK_THROWS_WITH_AS(encode_table_direct(p, inst, inst.constraints[0]),
                       "table too large to complement", EncodeError);

  auto wide = make_vars({{1, 63}, {1, 63}});
  wide.constraints.push_back(
      table({0, 1}, TablePolarity::Allowed, {{1, 1}}));
  Program q;
  encode_var_range(q, 0, 1, 63);
  encode_var_range(q, 1, 1, 63);
  CHECK_THROWS_WITH_AS(encode_table_range(q, wide, wide.constraints[0]),
                       "table too large for interval conflict analysis",
                       EncodeError);
}

TEST_CASE("cardinality lowering is spliced in before compilation") {
  Program plain;
  encode_var_bound(plain, 0, 1, 3);  // no counting involved
  CHECK(lower_and_compile(plain).size() == compile(plain).size());

  Program counted;
  encode_var_direct(counted, 0, 1, 3);
  REQUIRE(counted.has_cardinalities());
  NogoodDb db = lower_and_compile(counted);
  CHECK(db.size() > 0);
}
