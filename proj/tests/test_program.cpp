#include <stdexcept>
#include <string>

#include "doctest.h"
#include "encore/program.hpp"
#include "encore/program_text.hpp"

using namespace encore;

TEST_CASE("interning is stable and lookup never creates atoms") {
  Program p;
  AtomId a = p.intern(AtomSym::value(0, 1));
  AtomId b = p.intern(AtomSym::range(0, 1, 2));
  CHECK(a != b);
  CHECK(p.intern(AtomSym::value(0, 1)) == a);
  CHECK(p.atom_count() == 2);

  CHECK(p.find(AtomSym::value(0, 1)) == a);
  CHECK(p.find(AtomSym::bound(0, 1)) == -1);
  CHECK(p.atom_count() == 2);
  CHECK(p.symbol(b) == AtomSym::range(0, 1, 2));
}

TEST_CASE("atom names render by type") {
  CHECK(atom_name(AtomSym::value(3, 2)) == "e(v3,2)");
  CHECK(atom_name(AtomSym::range(0, 1, 4)) == "r(v0,1,4)");
  CHECK(atom_name(AtomSym::bound(7, 1)) == "b(v7,1)");
  CHECK(atom_name(AtomSym::support(12)) == "sup(12)");
  CHECK(atom_name(AtomSym::counter(5, 2)) == "cnt(5,2)");
  CHECK(atom_name(AtomSym::aux(0)) == "aux(0)");
}

TEST_CASE("builders canonicalize bodies and heads") {
  Program p;
  AtomId a = p.intern(AtomSym::aux(0));
  AtomId b = p.intern(AtomSym::aux(1));
  AtomId c = p.intern(AtomSym::aux(2));

  p.add_normal(a, {{c, true}, {b, false}, {c, true}});
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].body ==
        std::vector<BodyLiteral>{{b, false}, {c, true}});

  p.add_choice({c, b, c}, {});
  CHECK(p.rules[1].heads == std::vector<AtomId>{b, c});

  CHECK_THROWS_AS(p.add_choice({}, {}), std::logic_error);
  CHECK_THROWS_AS(p.add_integrity({}), std::logic_error);
}

TEST_CASE("cardinality rules validate their bound") {
  Program p;
  AtomId a = p.intern(AtomSym::aux(0));
  AtomId b = p.intern(AtomSym::aux(1));

  CHECK_THROWS_AS(p.add_cardinality(0, {{a, true}}), std::logic_error);
  CHECK_FALSE(p.has_cardinalities());

  // A bound beyond the literal count can never trigger.
  CHECK_FALSE(p.add_cardinality(3, {{a, true}, {b, true}}));
  CHECK(p.rules.empty());

  CHECK(p.add_cardinality(2, {{a, true}, {b, false}}));
  CHECK(p.has_cardinalities());
  CHECK(p.rules[0].bound == 2);
}

TEST_CASE("counter slots never overlap") {
  Program p;
  CHECK(p.fresh_counter_slot(4) == 0);
  CHECK(p.fresh_counter_slot(2) == 4);
  CHECK(p.fresh_counter_slot(1) == 6);
  CHECK(p.fresh_support() == 0);
  CHECK(p.fresh_support() == 1);
  CHECK(p.fresh_aux() == 0);
}

TEST_CASE("tightness follows the positive dependency graph") {
  SUBCASE("negation does not create loops") {
    Program p;
    AtomId a = p.intern(AtomSym::aux(0));
    AtomId b = p.intern(AtomSym::aux(1));
    p.add_normal(a, {{b, false}});
    p.add_normal(b, {{a, false}});
    CHECK(is_tight(p));
  }
  SUBCASE("a positive cycle through normal rules") {
    Program p;
    AtomId a = p.intern(AtomSym::aux(0));
    AtomId b = p.intern(AtomSym::aux(1));
    p.add_normal(a, {{b, true}});
    p.add_normal(b, {{a, true}});
    CHECK_FALSE(is_tight(p));
  }
  SUBCASE("choice heads depend on their positive body too") {
    Program p;
    AtomId a = p.intern(AtomSym::aux(0));
    AtomId b = p.intern(AtomSym::aux(1));
    p.add_choice({a}, {{b, true}});
    p.add_normal(b, {{a, true}});
    CHECK_FALSE(is_tight(p));
  }
  SUBCASE("self support is a loop") {
    Program p;
    AtomId a = p.intern(AtomSym::aux(0));
    p.add_normal(a, {{a, true}});
    CHECK_FALSE(is_tight(p));
  }
  SUBCASE("cardinality rules must be translated first") {
    Program p;
    AtomId a = p.intern(AtomSym::aux(0));
    AtomId b = p.intern(AtomSym::aux(1));
    p.add_cardinality(1, {{a, true}, {b, true}});
    CHECK_THROWS_WITH_AS(is_tight(p),
                         "tightness asks for a cardinality free program",
                         std::logic_error);
  }
}

TEST_CASE("programs serialize one rule per line") {
  Program p;
  AtomId e1 = p.intern(AtomSym::value(0, 1));
  AtomId e2 = p.intern(AtomSym::value(0, 2));
  AtomId b1 = p.intern(AtomSym::bound(1, 1));
  p.add_choice({e1, e2}, {});
  p.add_normal(e1, {{b1, true}});
  p.add_normal(b1, {});
  p.add_integrity({{e1, true}, {e2, true}});
  p.add_cardinality(2, {{e1, true}, {b1, false}});

  CHECK(serialize_program(p) ==
        "{e(v0,1); e(v0,2)}.\n"
        "e(v0,1) :- b(v1,1).\n"
        "b(v1,1).\n"
        ":- e(v0,1), e(v0,2).\n"
        ":- 2 {e(v0,1); not b(v1,1)}.\n");
}

TEST_CASE("parsing inverts serialization") {
  const char* text =
      "{e(v0,1); e(v0,2)}.\n"
      "e(v0,1) :- b(v1,1), not r(v2,1,3).\n"
      "sup(3) :- cnt(0,2).\n"
      "aux(1) :- not aux(0).\n"
      ":- 1 {e(v0,2); not sup(3)}.\n"
      ":- e(v0,1).\n";
  Program p = parse_program(text);
  CHECK(serialize_program(p) == text);
  CHECK(p.atom_count() == 8);
  CHECK(p.rules.size() == 6);
  CHECK(p.rules[4].kind == RuleKind::CardinalityIntegrity);
  CHECK(p.find(AtomSym::support(3)) >= 0);
  CHECK(p.find(AtomSym::counter(0, 2)) >= 0);
}

TEST_CASE("parse errors carry the offending line") {
  CHECK_THROWS_WITH_AS(parse_program("e(v0,1)"),
                       doctest::Contains("line 1"), ProgramParseError);
  CHECK_THROWS_WITH_AS(parse_program("e(v0,1).\nq(v0,1).\n"),
                       doctest::Contains("line 2: unknown atom name 'q'"),
                       ProgramParseError);
  CHECK_THROWS_WITH_AS(parse_program(":- 2 {e(v0,1)}.\n"),
                       doctest::Contains("cardinality bound exceeds"),
                       ProgramParseError);
  CHECK_THROWS_WITH_AS(parse_program("e(x,1).\n"),
                       doctest::Contains("expected a variable"),
                       ProgramParseError);
}
