#include "encore/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace encore {

namespace {

constexpr size_t kMaxSupportArity = 8;
constexpr int kMaxSupportWidth = 8;
constexpr int64_t kEnumNodeBudget = 10'000'000;
constexpr int32_t kMaxBruteProps = 18;

bool is_distinctness(const Constraint& c) {
  return c.kind == ConstraintKind::AllDifferent ||
         c.kind == ConstraintKind::Permutation;
}

bool tuple_listed(const Constraint& c, const std::vector<int>& vals) {
  for (const auto& t : c.tuples)
    if (t == vals) return true;
  return false;
}

bool table_allows(const Constraint& c, const std::vector<int>& vals) {
  return tuple_listed(c, vals) == (c.polarity == TablePolarity::Allowed);
}

}  // namespace

DomainState DomainState::of(const CspInstance& inst) {
  DomainState s;
  for (const CspVariable& v : inst.variables) s.domains.push_back(v.domain);
  return s;
}

bool DomainState::operator==(const DomainState& o) const {
  if (failed != o.failed) return false;
  if (failed) return true;
  return domains == o.domains;
}

// ---------------------------------------------------------------------------
// Arc consistency on the binary decomposition

namespace {

struct BinaryRelation {
  VarId a = 0, b = 0;
  const Constraint* table = nullptr;  // null means "a != b"

  bool check(int x, int y) const {
    if (!table) return x != y;
    return table_allows(*table, {x, y});
  }
  bool check_rev(int y, int x) const {
    if (!table) return x != y;
    return table_allows(*table, {x, y});
  }
};

// Remove values of d (the "first" side when forward) lacking a partner.
bool revise(const BinaryRelation& rel, bool forward, Domain& mine,
            const Domain& other, bool& wiped) {
  bool changed = false;
  for (int x : mine.values()) {
    bool supported = false;
    for (int y : other.values()) {
      bool ok = forward ? rel.check(x, y) : rel.check_rev(x, y);
      if (ok) {
        supported = true;
        break;
      }
    }
    if (supported) continue;
    changed = true;
    if (!mine.remove(x)) {
      wiped = true;
      return true;
    }
  }
  return changed;
}

}  // namespace

DomainState ac3_binary_decomposition(const CspInstance& inst,
                                     DomainState start) {
  std::vector<BinaryRelation> rels;
  for (const Constraint& c : inst.constraints) {
    if (c.kind == ConstraintKind::Table) {
      if (c.scope.size() != 2)
        throw OracleError("arc consistency oracle handles binary tables only");
      rels.push_back({c.scope[0], c.scope[1], &c});
    } else {
      for (size_t i = 0; i < c.scope.size(); ++i)
        for (size_t j = i + 1; j < c.scope.size(); ++j)
          rels.push_back({c.scope[i], c.scope[j], nullptr});
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const BinaryRelation& rel : rels) {
      bool wiped = false;
      changed |= revise(rel, true, start.domains[(size_t)rel.a],
                        start.domains[(size_t)rel.b], wiped);
      if (!wiped)
        changed |= revise(rel, false, start.domains[(size_t)rel.b],
                          start.domains[(size_t)rel.a], wiped);
      if (wiped) {
        start.failed = true;
        return start;
      }
    }
  }
  return start;
}

// ---------------------------------------------------------------------------
// Hull-support search shared by the range and bound pruners

namespace {

void check_support_guards(const Constraint& c,
                          const std::vector<Domain>& doms) {
  if (c.scope.size() > kMaxSupportArity)
    throw OracleError("constraint scope too wide for the naive oracle");
  for (VarId v : c.scope)
    if (doms[(size_t)v].hi - doms[(size_t)v].lo + 1 > kMaxSupportWidth)
      throw OracleError("domain too wide for the naive oracle");
}

// Is there a tuple through vals[fixed] = value with every other position
// ranging over the interval hull of its current domain?
struct HullSupport {
  const Constraint& c;
  const std::vector<Domain>& doms;
  size_t fixed;
  std::vector<int> vals;

  bool exists(int value) {
    vals.assign(c.scope.size(), 0);
    vals[fixed] = value;
    return walk(0);
  }

  bool distinct_so_far(size_t k) const {
    for (size_t j = 0; j < k; ++j)
      if (vals[j] == vals[k]) return false;
    return true;
  }

  bool walk(size_t k) {
    bool dis = is_distinctness(c);
    if (k == c.scope.size()) return dis || table_allows(c, vals);
    if (k == fixed)
      return (!dis || distinct_so_far(k)) && walk(k + 1);
    const Domain& d = doms[(size_t)c.scope[k]];
    for (int x = d.lo; x <= d.hi; ++x) {
      vals[k] = x;
      if (dis && !distinct_so_far(k)) continue;
      if (walk(k + 1)) return true;
    }
    return false;
  }
};

}  // namespace

DomainState range_consistent_domains(const CspInstance& inst,
                                     size_t constraint, DomainState start) {
  const Constraint& c = inst.constraints.at(constraint);
  check_support_guards(c, start.domains);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < c.scope.size(); ++k) {
      Domain& d = start.domains[(size_t)c.scope[k]];
      HullSupport search{c, start.domains, k, {}};
      for (int x : d.values()) {
        if (search.exists(x)) continue;
        changed = true;
        if (!d.remove(x)) {
          start.failed = true;
          return start;
        }
      }
    }
  }
  return start;
}

DomainState bound_consistent_domains(const CspInstance& inst,
                                     size_t constraint, DomainState start) {
  const Constraint& c = inst.constraints.at(constraint);
  check_support_guards(c, start.domains);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < c.scope.size(); ++k) {
      Domain& d = start.domains[(size_t)c.scope[k]];
      HullSupport search{c, start.domains, k, {}};
      // Endpoints only; anything strictly inside stays, supported or not.
      while (!search.exists(d.min())) {
        changed = true;
        if (!d.remove(d.min())) {
          start.failed = true;
          return start;
        }
      }
      while (!search.exists(d.max())) {
        changed = true;
        if (!d.remove(d.max())) {
          start.failed = true;
          return start;
        }
      }
    }
  }
  return start;
}

namespace {

template <typename Step>
DomainState prune_rounds(const CspInstance& inst, DomainState state,
                         Step&& step) {
  bool changed = true;
  while (changed && !state.failed) {
    changed = false;
    for (size_t ci = 0; ci < inst.constraints.size(); ++ci) {
      DomainState next = step(ci, state);
      if (next.failed) return next;
      if (!(next == state)) {
        changed = true;
        state = std::move(next);
      }
    }
  }
  return state;
}

}  // namespace

DomainState range_consistent_fixpoint(const CspInstance& inst,
                                      DomainState start) {
  return prune_rounds(inst, std::move(start),
                      [&](size_t ci, const DomainState& s) {
                        return range_consistent_domains(inst, ci, s);
                      });
}

DomainState bound_consistent_fixpoint(const CspInstance& inst,
                                      DomainState start) {
  return prune_rounds(inst, std::move(start),
                      [&](size_t ci, const DomainState& s) {
                        return bound_consistent_domains(inst, ci, s);
                      });
}

// ---------------------------------------------------------------------------
// Relational extension

bool relational_extension_exists(
    const CspInstance& inst, size_t constraint, const DomainState& state,
    const std::vector<std::pair<VarId, int>>& partial) {
  const Constraint& c = inst.constraints.at(constraint);
  check_support_guards(c, state.domains);
  std::vector<int> vals(c.scope.size(), 0);
  std::vector<char> pinned(c.scope.size(), 0);
  for (auto [v, x] : partial) {
    auto it = std::find(c.scope.begin(), c.scope.end(), v);
    if (it == c.scope.end())
      throw OracleError("partial assignment names a variable off scope");
    size_t k = (size_t)(it - c.scope.begin());
    if (pinned[k]) throw OracleError("partial assignment repeats a variable");
    if (!state.domains[(size_t)v].contains(x))
      throw OracleError("partial assignment uses a pruned value");
    pinned[k] = 1;
    vals[k] = x;
  }
  bool dis = is_distinctness(c);
  std::function<bool(size_t)> walk = [&](size_t k) -> bool {
    auto ok_here = [&] {
      if (!dis) return true;
      for (size_t j = 0; j < k; ++j)
        if (vals[j] == vals[k]) return false;
      return true;
    };
    if (k == c.scope.size()) return dis || table_allows(c, vals);
    if (pinned[k]) return ok_here() && walk(k + 1);
    for (int x : state.domains[(size_t)c.scope[k]].values()) {
      vals[k] = x;
      if (dis && !ok_here()) continue;
      if (walk(k + 1)) return true;
    }
    return false;
  };
  return walk(0);
}

// ---------------------------------------------------------------------------
// Solution enumeration

namespace {

struct Enumerator {
  const CspInstance& inst;
  std::vector<std::vector<size_t>> by_var;  // constraints touching each var
  CspAssignment vals;
  std::vector<char> assigned;
  std::vector<CspAssignment> out;
  int64_t nodes = 0;

  explicit Enumerator(const CspInstance& i)
      : inst(i),
        by_var((size_t)i.num_vars()),
        vals((size_t)i.num_vars(), 0),
        assigned((size_t)i.num_vars(), 0) {
    for (size_t ci = 0; ci < inst.constraints.size(); ++ci)
      for (VarId v : inst.constraints[ci].scope)
        by_var[(size_t)v].push_back(ci);
  }

  bool prefix_ok(VarId v) {
    for (size_t ci : by_var[(size_t)v]) {
      const Constraint& c = inst.constraints[ci];
      if (is_distinctness(c)) {
        for (VarId w : c.scope)
          if (w != v && assigned[(size_t)w] && vals[(size_t)w] == vals[(size_t)v])
            return false;
        continue;
      }
      bool total = true;
      for (VarId w : c.scope) total &= assigned[(size_t)w] != 0;
      if (c.polarity == TablePolarity::Forbidden) {
        if (!total) continue;  // no sound partial cut on forbidden lists
        std::vector<int> t;
        for (VarId w : c.scope) t.push_back(vals[(size_t)w]);
        if (tuple_listed(c, t)) return false;
        continue;
      }
      // Allowed table: some listed tuple must match the assigned part.
      bool open = false;
      for (const auto& t : c.tuples) {
        bool fits = true;
        for (size_t k = 0; k < c.scope.size() && fits; ++k)
          if (assigned[(size_t)c.scope[k]] && t[k] != vals[(size_t)c.scope[k]])
            fits = false;
        if (fits) {
          open = true;
          break;
        }
      }
      if (!open) return false;
    }
    return true;
  }

  void walk(VarId v) {
    if (++nodes > kEnumNodeBudget)
      throw OracleError("enumeration node budget exceeded");
    if (v == inst.num_vars()) {
      out.push_back(vals);
      return;
    }
    for (int x = inst.var(v).domain.lo; x <= inst.var(v).domain.hi; ++x) {
      vals[(size_t)v] = x;
      assigned[(size_t)v] = 1;
      if (prefix_ok(v)) walk(v + 1);
    }
    assigned[(size_t)v] = 0;
  }
};

}  // namespace

std::vector<CspAssignment> enumerate_solutions(const CspInstance& inst) {
  Enumerator en(inst);
  en.walk(0);
  return en.out;
}

// ---------------------------------------------------------------------------
// Propositional brute force

namespace {

struct MaskedRule {
  RuleKind kind;
  uint32_t pos = 0, neg = 0;
  std::vector<AtomId> heads;
};

}  // namespace

std::vector<uint32_t> brute_force_answer_sets(const Program& p) {
  if (p.has_cardinalities())
    throw OracleError("lower cardinality rules before brute forcing");
  int32_t n = p.atom_count();
  if (n > kMaxBruteProps)
    throw OracleError("too many atoms for brute force");
  std::vector<MaskedRule> rules;
  for (const Rule& r : p.rules) {
    MaskedRule mr;
    mr.kind = r.kind;
    mr.heads = r.heads;
    for (const BodyLiteral& l : r.body)
      (l.positive ? mr.pos : mr.neg) |= 1u << l.atom;
    rules.push_back(std::move(mr));
  }
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    bool bad = false;
    for (const MaskedRule& r : rules)
      if (r.kind == RuleKind::Integrity && (x & r.pos) == r.pos &&
          (x & r.neg) == 0) {
        bad = true;
        break;
      }
    if (bad) continue;
    // Least model of the reduct: choice heads need membership in x, normal
    // heads fire regardless once their positive part is derived.
    uint32_t closure = 0;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const MaskedRule& r : rules) {
        if (r.kind == RuleKind::Integrity) continue;
        if ((x & r.neg) != 0) continue;
        if ((closure & r.pos) != r.pos) continue;
        for (AtomId h : r.heads) {
          uint32_t bit = 1u << h;
          if (closure & bit) continue;
          if (r.kind == RuleKind::Choice && !(x & bit)) continue;
          closure |= bit;
          grew = true;
        }
      }
    }
    if (closure == x) out.push_back(x);
  }
  return out;
}

std::vector<uint32_t> brute_force_nogood_solutions(const NogoodDb& db) {
  int32_t n = db.num_props();
  if (n > kMaxBruteProps)
    throw OracleError("too many propositions for brute force");
  std::vector<std::pair<uint32_t, uint32_t>> masks;
  for (size_t i = 0; i < db.size(); ++i) {
    uint32_t want = 0, avoid = 0;
    for (Lit l : db.nogood(i))
      (l.truth() ? want : avoid) |= 1u << l.prop();
    masks.push_back({want, avoid});
  }
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    bool violated = false;
    for (auto [want, avoid] : masks)
      if ((x & want) == want && (x & avoid) == 0) {
        violated = true;
        break;
      }
    if (!violated) out.push_back(x);
  }
  return out;
}

bool solutions_equal_answer_sets(const Program& p) {
  NogoodDb db = compile(p);
  if (db.num_props() > kMaxBruteProps)
    throw OracleError("too many propositions for brute force");
  std::vector<uint32_t> sets = brute_force_answer_sets(p);
  uint32_t atom_mask =
      p.atom_count() >= 32 ? ~0u : (1u << p.atom_count()) - 1;
  std::set<uint32_t> projected;
  for (uint32_t x : brute_force_nogood_solutions(db))
    projected.insert(x & atom_mask);
  return projected == std::set<uint32_t>(sets.begin(), sets.end());
}

}  // namespace encore
