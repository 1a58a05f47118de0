#ifndef ENCORE_PROGRAM_HPP
#define ENCORE_PROGRAM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "encore/csp.hpp"

namespace encore {

// Ground atoms are structured symbols, not strings. Value/Range/Bound carry
// a variable id plus domain indices, Counter atoms are keyed by a program
// wide literal slot so two counter chains never collide, Support and Aux
// atoms are plain serial numbers.
enum class AtomType : uint8_t { Value, Range, Bound, Support, Counter, Aux };

struct AtomSym {
  AtomType type = AtomType::Aux;
  int32_t a = 0, b = 0, c = 0;

  static AtomSym value(VarId v, int i) { return {AtomType::Value, v, i, 0}; }
  static AtomSym range(VarId v, int l, int u) {
    return {AtomType::Range, v, l, u};
  }
  static AtomSym bound(VarId v, int i) { return {AtomType::Bound, v, i, 0}; }
  static AtomSym support(int k) { return {AtomType::Support, k, 0, 0}; }
  static AtomSym counter(int slot, int j) {
    return {AtomType::Counter, slot, j, 0};
  }
  static AtomSym aux(int k) { return {AtomType::Aux, k, 0, 0}; }

  bool operator==(const AtomSym& o) const {
    return type == o.type && a == o.a && b == o.b && c == o.c;
  }
};

struct AtomSymHash {
  size_t operator()(const AtomSym& s) const {
    uint64_t h = (uint64_t)s.type;
    for (uint64_t x : {(uint64_t)(uint32_t)s.a, (uint64_t)(uint32_t)s.b,
                       (uint64_t)(uint32_t)s.c})
      h = h * 0x9e3779b97f4a7c15ull + (x + 1);
    return (size_t)h;
  }
};

using AtomId = int32_t;

struct BodyLiteral {
  AtomId atom = 0;
  bool positive = true;

  bool operator==(const BodyLiteral& o) const {
    return atom == o.atom && positive == o.positive;
  }
  bool operator<(const BodyLiteral& o) const {
    return atom != o.atom ? atom < o.atom : positive < o.positive;
  }
};

enum class RuleKind : uint8_t { Normal, Choice, Integrity, CardinalityIntegrity };

struct Rule {
  RuleKind kind = RuleKind::Normal;
  std::vector<AtomId> heads;        // Normal: one, Choice: one or more
  std::vector<BodyLiteral> body;    // CardinalityIntegrity: the counted set
  int bound = 0;                    // CardinalityIntegrity only
};

// Which ladders exist for a variable after encoding, and how its domain was
// shifted: index i stands for value i + offset.
struct VarEncodingInfo {
  int offset = 0;  // value = index + offset, index ranges over 1..size
  int size = 0;
  bool has_value = false;
  bool has_range = false;
  bool has_bound = false;
  bool bound_range_linked = false;  // range atoms already defined from bounds
};

class Program {
 public:
  AtomId intern(const AtomSym& sym);
  // Lookup without interning; -1 when the symbol was never used.
  AtomId find(const AtomSym& sym) const;
  const AtomSym& symbol(AtomId id) const { return atoms_.at((size_t)id); }
  int32_t atom_count() const { return (int32_t)atoms_.size(); }

  // Builders keep the stated invariants: normal rules have exactly one head,
  // integrities none, and a cardinality whose bound exceeds the literal
  // count is unsatisfiable-free and silently dropped.
  void add_normal(AtomId head, std::vector<BodyLiteral> body);
  void add_choice(std::vector<AtomId> heads, std::vector<BodyLiteral> body);
  void add_integrity(std::vector<BodyLiteral> body);
  bool add_cardinality(int bound, std::vector<BodyLiteral> lits);

  void add_fact(AtomId head) { add_normal(head, {}); }

  bool has_cardinalities() const;
  int fresh_support() { return next_support_++; }
  int fresh_aux() { return next_aux_++; }
  int fresh_counter_slot(int width);

  std::vector<Rule> rules;
  std::map<VarId, VarEncodingInfo> var_info;

 private:
  std::vector<AtomSym> atoms_;
  std::unordered_map<AtomSym, AtomId, AtomSymHash> index_;
  int next_support_ = 0;
  int next_aux_ = 0;
  int next_counter_slot_ = 0;
};

// True when the positive atom dependency graph is acyclic. Heads of choice
// rules depend on their positive body atoms too. Cardinality rules must be
// translated away first; calling this on a program that still has them is a
// logic error.
bool is_tight(const Program& p);

std::string atom_name(const AtomSym& sym);

}  // namespace encore

#endif
