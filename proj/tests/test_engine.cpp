#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "encore/engine.hpp"
#include "encore/oracles.hpp"

using namespace encore;

namespace {

std::set<Lit> as_set(std::span<const Lit> lits) {
  return {lits.begin(), lits.end()};
}

}  // namespace

TEST_CASE("unit nogoods propagate at level zero") {
  NogoodDb db(3, 0);
  db.add({Lit::f(0)});            // 0 must hold
  db.add({Lit::t(0), Lit::t(1)}); // hence 1 must not

  Engine eng(db);
  CHECK(eng.propagate() == PropagationResult::Fixpoint);
  CHECK(eng.value(0) == TruthValue::True);
  CHECK(eng.value(1) == TruthValue::False);
  CHECK(eng.value(2) == TruthValue::Unassigned);
  CHECK(eng.level() == 0);
  CHECK(eng.stats().learned == 0);
}

TEST_CASE("watches find replacement literals") {
  NogoodDb db(4, 0);
  db.add({Lit::t(0), Lit::t(1), Lit::t(2), Lit::t(3)});

  Engine eng(db);
  eng.decide(Lit::t(0));
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  eng.decide(Lit::t(1));
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  eng.decide(Lit::t(2));
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  // Three of four hold, the last flips.
  CHECK(eng.value(3) == TruthValue::False);
}

TEST_CASE("conflict analysis stops at the first unique implication point") {
  // After deciding 0 and 1, the first nogood forces 2 out and the second is
  // then violated. The decision pair is the learned reason.
  NogoodDb db(3, 0);
  db.add({Lit::t(0), Lit::t(1), Lit::t(2)});
  db.add({Lit::t(0), Lit::t(1), Lit::f(2)});

  Engine eng(db);
  eng.decide(Lit::t(0));
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  eng.decide(Lit::t(1));
  REQUIRE(eng.propagate() == PropagationResult::Conflict);
  REQUIRE(eng.has_pending_conflict());

  Engine::LearnResult lr = eng.analyze_conflict();
  CHECK(as_set(lr.nogood) == std::set<Lit>{Lit::t(0), Lit::t(1)});
  CHECK(lr.backjump_level == 1);
}

TEST_CASE("learned nogoods resolve through implied literals") {
  // d1: prop 0. The chain forces 1 then 2; nogood {0,1,2} then breaks.
  NogoodDb db(3, 0);
  db.add({Lit::t(0), Lit::f(1)});
  db.add({Lit::t(1), Lit::f(2)});
  db.add({Lit::t(0), Lit::t(1), Lit::t(2)});

  Engine eng(db);
  eng.decide(Lit::t(0));
  REQUIRE(eng.propagate() == PropagationResult::Conflict);
  Engine::LearnResult lr = eng.analyze_conflict();
  // Resolving back to the decision yields the unit nogood.
  CHECK(as_set(lr.nogood) == std::set<Lit>{Lit::t(0)});
  CHECK(lr.backjump_level == 0);
}

TEST_CASE("backjumping unwinds the trail and saves phases") {
  NogoodDb db(4, 0);
  db.add({Lit::t(0), Lit::f(1)});

  Engine eng(db);
  eng.decide(Lit::t(0));
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  CHECK(eng.value(1) == TruthValue::True);
  eng.decide(Lit::f(2));
  CHECK(eng.level() == 2);
  CHECK(eng.trail().size() == 3);

  eng.backjump(0);
  CHECK(eng.level() == 0);
  CHECK(eng.trail().empty());
  CHECK(eng.value(0) == TruthValue::Unassigned);
  CHECK(eng.value(1) == TruthValue::Unassigned);
}

TEST_CASE("assumptions live below the first decision level") {
  NogoodDb db(3, 0);
  db.add({Lit::t(0), Lit::t(1)});

  SUBCASE("consistent assumptions persist") {
    Engine eng(db);
    std::vector<Lit> assume{Lit::t(0)};
    CHECK(eng.assume(assume) == PropagationResult::Fixpoint);
    CHECK(eng.value(1) == TruthValue::False);
    CHECK(eng.level() == 0);
    CHECK(eng.solve() == SolveStatus::Sat);
    CHECK(eng.model().holds(0));
  }
  SUBCASE("contradicted assumptions are a conflict outcome") {
    Engine eng(db);
    std::vector<Lit> assume{Lit::t(0), Lit::t(1)};
    CHECK(eng.assume(assume) == PropagationResult::Conflict);
    CHECK(eng.has_pending_conflict());
    CHECK(eng.solve() == SolveStatus::Unsat);
  }
  SUBCASE("assuming after a decision is a usage error") {
    Engine eng(db);
    eng.decide(Lit::t(2));
    std::vector<Lit> assume{Lit::t(0)};
    CHECK_THROWS_AS(eng.assume(assume), std::logic_error);
  }
}

TEST_CASE("deciding an assigned proposition is a usage error") {
  NogoodDb db(2, 0);
  db.add({Lit::f(0)});
  Engine eng(db);
  REQUIRE(eng.propagate() == PropagationResult::Fixpoint);
  CHECK_THROWS_AS(eng.decide(Lit::t(0)), std::logic_error);
}

TEST_CASE("solve finds a model or refutes the store") {
  SUBCASE("satisfiable") {
    NogoodDb db(3, 0);
    db.add({Lit::t(0), Lit::t(1)});
    db.add({Lit::f(0), Lit::f(1)});
    Engine eng(db);
    REQUIRE(eng.solve() == SolveStatus::Sat);
    Model m = eng.model();
    CHECK(m.holds(0) != m.holds(1));
  }
  SUBCASE("unsatisfiable after learning") {
    NogoodDb db(2, 0);
    db.add({Lit::t(0), Lit::t(1)});
    db.add({Lit::t(0), Lit::f(1)});
    db.add({Lit::f(0), Lit::t(1)});
    db.add({Lit::f(0), Lit::f(1)});
    Engine eng(db);
    CHECK(eng.solve() == SolveStatus::Unsat);
    CHECK(eng.stats().conflicts == 2);
    CHECK(eng.stats().learned == 1);
    // Once refuted, the engine stays refuted.
    CHECK(eng.solve() == SolveStatus::Unsat);
  }
  SUBCASE("trivially empty store") {
    NogoodDb db(2, 0);
    Engine eng(db);
    CHECK(eng.solve() == SolveStatus::Sat);
  }
}

TEST_CASE("conflict budgets cut the search off") {
  NogoodDb db(2, 0);
  db.add({Lit::t(0), Lit::t(1)});
  db.add({Lit::t(0), Lit::f(1)});
  db.add({Lit::f(0), Lit::t(1)});
  db.add({Lit::f(0), Lit::f(1)});
  EngineOptions opts;
  opts.max_conflicts = 1;
  Engine eng(db, opts);
  CHECK(eng.solve() == SolveStatus::Limit);
  CHECK(eng.stats().conflicts == 1);
}

TEST_CASE("model enumeration via blocking nogoods") {
  // 0 and 1 may not both hold; 2 is free: six models.
  NogoodDb db(3, 0);
  db.add({Lit::t(0), Lit::t(1)});

  Engine eng(db);
  size_t found = 0;
  while (eng.solve() == SolveStatus::Sat) {
    Model m = eng.model();
    ++found;
    std::vector<Lit> block;
    for (PropId p = 0; p < 3; ++p)
      block.push_back(Lit::make(p, m.values[(size_t)p] == TruthValue::True));
    eng.add_nogood(block);
  }
  CHECK(found == brute_force_nogood_solutions(db).size());
  CHECK(found == 6);
}

TEST_CASE("runs are reproducible for a fixed seed") {
  NogoodDb db(6, 0);
  db.add({Lit::t(0), Lit::t(1), Lit::t(2)});
  db.add({Lit::f(2), Lit::f(3), Lit::f(4)});
  db.add({Lit::t(1), Lit::f(4), Lit::t(5)});
  db.add({Lit::f(0), Lit::t(3), Lit::f(5)});

  EngineOptions opts;
  opts.seed = 42;
  Engine one(db, opts);
  Engine two(db, opts);
  CHECK(one.solve() == two.solve());
  CHECK(one.stats().decisions == two.stats().decisions);
  CHECK(one.stats().propagations == two.stats().propagations);
  for (PropId p = 0; p < 6; ++p) CHECK(one.value(p) == two.value(p));
}

TEST_CASE("restarts keep learned nogoods") {
  // A pigeonhole-shaped store small enough to refute but large enough to
  // restart a few times under a tiny restart base.
  const int holes = 4, pigeons = 5;
  NogoodDb db(pigeons * holes, 0);
  auto at = [&](int p, int h) { return (PropId)(p * holes + h); };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<Lit> none;
    for (int h = 0; h < holes; ++h) none.push_back(Lit::f(at(p, h)));
    db.add(none);
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        db.add({Lit::t(at(p1, h)), Lit::t(at(p2, h))});

  EngineOptions opts;
  opts.restart_base = 2;
  Engine eng(db, opts);
  CHECK(eng.solve() == SolveStatus::Unsat);
  CHECK(eng.stats().restarts > 0);
  CHECK(eng.stats().learned > 0);
}
