#include "encore/encode.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "encore/cardinality.hpp"

namespace encore {

namespace {

constexpr int64_t kBoxBudget = 4'000'000;   // candidate boxes per table
constexpr int64_t kCellBudget = 4'000'000;  // enumerated cells per table

BodyLiteral pos(AtomId a) { return {a, true}; }
BodyLiteral neg(AtomId a) { return {a, false}; }

VarEncodingInfo& register_var(Program& p, VarId v, int lo, int d) {
  if (d < 1) throw EncodeError("variable has an empty domain");
  VarEncodingInfo& info = p.var_info[v];
  if (info.size != 0 && (info.size != d || info.offset != lo - 1))
    throw EncodeError("conflicting ladder shapes for one variable");
  info.offset = lo - 1;
  info.size = d;
  return info;
}

const VarEncodingInfo& info_of(const Program& p, VarId v) {
  auto it = p.var_info.find(v);
  if (it == p.var_info.end())
    throw EncodeError("variable has no ladder yet");
  return it->second;
}

// Index of an actual value on v's ladder (1..d).
int vidx(const Program& p, VarId v, int value) {
  return value - info_of(p, v).offset;
}

AtomId e_atom(Program& p, VarId v, int i) {
  return p.intern(AtomSym::value(v, i));
}
AtomId r_atom(Program& p, VarId v, int l, int u) {
  return p.intern(AtomSym::range(v, l, u));
}
AtomId b_atom(Program& p, VarId v, int i) {
  return p.intern(AtomSym::bound(v, i));
}

}  // namespace

void encode_var_direct(Program& p, VarId v, int lo, int d) {
  VarEncodingInfo& info = register_var(p, v, lo, d);
  info.has_value = true;
  std::vector<AtomId> heads;
  std::vector<BodyLiteral> all;
  for (int i = 1; i <= d; ++i) {
    heads.push_back(e_atom(p, v, i));
    all.push_back(pos(heads.back()));
  }
  p.add_choice(heads, {});
  std::vector<BodyLiteral> none;
  for (AtomId h : heads) none.push_back(neg(h));
  p.add_integrity(none);
  p.add_cardinality(2, all);  // dropped when d == 1
}

void encode_var_bound(Program& p, VarId v, int lo, int d) {
  VarEncodingInfo& info = register_var(p, v, lo, d);
  info.has_bound = true;
  std::vector<AtomId> heads;
  for (int i = 1; i <= d; ++i) heads.push_back(b_atom(p, v, i));
  p.add_choice(heads, {});
  // b(v,i) says "v <= i", so the ladder may only rise.
  for (int i = 1; i <= d - 1; ++i)
    p.add_integrity({pos(heads[(size_t)i - 1]), neg(heads[(size_t)i])});
  p.add_integrity({neg(heads[(size_t)d - 1])});
}

void encode_var_range(Program& p, VarId v, int lo, int d) {
  VarEncodingInfo& info = register_var(p, v, lo, d);
  info.has_range = true;
  // r(v,l,u) says "v inside [l,u]"; an interval holds unless a flank of the
  // domain already took the variable. The full interval is a fact.
  for (int l = 1; l <= d; ++l)
    for (int u = l; u <= d; ++u) {
      std::vector<BodyLiteral> body;
      if (l >= 2) body.push_back(neg(r_atom(p, v, 1, l - 1)));
      if (u <= d - 1) body.push_back(neg(r_atom(p, v, u + 1, d)));
      p.add_normal(r_atom(p, v, l, u), std::move(body));
    }
  for (int l = 1; l <= d; ++l)
    for (int u = l; u <= d; ++u) {
      if (l >= 2)
        p.add_integrity({pos(r_atom(p, v, l, u)), neg(r_atom(p, v, l - 1, u))});
      if (u <= d - 1)
        p.add_integrity({pos(r_atom(p, v, l, u)), neg(r_atom(p, v, l, u + 1))});
    }
}

void link_range_direct(Program& p, VarId v) {
  VarEncodingInfo& info = p.var_info.at(v);
  info.has_value = true;
  for (int i = 1; i <= info.size; ++i) {
    p.add_normal(e_atom(p, v, i), {pos(r_atom(p, v, i, i))});
    p.add_integrity({pos(e_atom(p, v, i)), neg(r_atom(p, v, i, i))});
  }
}

void link_bound_direct(Program& p, VarId v) {
  VarEncodingInfo& info = p.var_info.at(v);
  info.has_value = true;
  for (int i = 1; i <= info.size; ++i) {
    std::vector<BodyLiteral> body = {pos(b_atom(p, v, i))};
    if (i >= 2) body.push_back(neg(b_atom(p, v, i - 1)));
    p.add_normal(e_atom(p, v, i), std::move(body));
    p.add_integrity({pos(e_atom(p, v, i)), neg(b_atom(p, v, i))});
    if (i >= 2)
      p.add_integrity({pos(e_atom(p, v, i)), pos(b_atom(p, v, i - 1))});
  }
}

void link_bound_range(Program& p, VarId v) {
  VarEncodingInfo& info = p.var_info.at(v);
  info.has_range = true;
  info.bound_range_linked = true;
  int d = info.size;
  for (int l = 1; l <= d; ++l)
    for (int u = l; u <= d; ++u) {
      std::vector<BodyLiteral> body = {pos(b_atom(p, v, u))};
      if (l >= 2) body.push_back(neg(b_atom(p, v, l - 1)));
      p.add_normal(r_atom(p, v, l, u), std::move(body));
      if (l >= 2)
        p.add_integrity({pos(r_atom(p, v, l, u)), pos(b_atom(p, v, l - 1))});
      p.add_integrity({pos(r_atom(p, v, l, u)), neg(b_atom(p, v, u))});
    }
}

namespace {

// Per-position value boxes of a constraint scope, in actual values.
struct ScopeBox {
  std::vector<int> lo, hi;
  size_t arity() const { return lo.size(); }

  int64_t cells() const {
    int64_t n = 1;
    for (size_t k = 0; k < lo.size(); ++k) {
      n *= hi[k] - lo[k] + 1;
      if (n > kCellBudget) return kCellBudget + 1;
    }
    return n;
  }
};

ScopeBox scope_box(const CspInstance& inst, const Constraint& c) {
  ScopeBox b;
  for (VarId v : c.scope) {
    const Domain& d = inst.var(v).domain;
    b.lo.push_back(d.lo);
    b.hi.push_back(d.hi);
  }
  return b;
}

uint64_t pack_tuple(const ScopeBox& b, const std::vector<int>& t) {
  uint64_t key = 0;
  for (size_t k = 0; k < b.arity(); ++k)
    key = key * (uint64_t)(b.hi[k] - b.lo[k] + 2) +
          (uint64_t)(t[k] - b.lo[k]);
  return key;
}

struct TableRelation {
  const Constraint* c = nullptr;
  ScopeBox box;
  std::vector<std::vector<int>> tuples;  // deduplicated
  std::unordered_set<uint64_t> keys;

  bool listed(const std::vector<int>& t) const {
    return keys.count(pack_tuple(box, t)) > 0;
  }
  bool allows(const std::vector<int>& t) const {
    return listed(t) == (c->polarity == TablePolarity::Allowed);
  }
};

TableRelation relation_of(const CspInstance& inst, const Constraint& c) {
  TableRelation rel;
  rel.c = &c;
  rel.box = scope_box(inst, c);
  rel.tuples = c.tuples;
  std::sort(rel.tuples.begin(), rel.tuples.end());
  rel.tuples.erase(std::unique(rel.tuples.begin(), rel.tuples.end()),
                   rel.tuples.end());
  for (const auto& t : rel.tuples) rel.keys.insert(pack_tuple(rel.box, t));
  return rel;
}

// Walks every assignment of the box in lexicographic order.
template <typename F>
void for_each_cell(const ScopeBox& box, F&& fn) {
  std::vector<int> t = box.lo;
  if (t.empty()) return;
  for (;;) {
    fn(t);
    size_t k = box.arity();
    while (k > 0) {
      --k;
      if (t[k] < box.hi[k]) {
        ++t[k];
        for (size_t j = k + 1; j < box.arity(); ++j) t[j] = box.lo[j];
        break;
      }
      if (k == 0) return;
    }
  }
}

// Sub-boxes are interval choices per position, again lexicographic.
struct SubBox {
  std::vector<int> lo, hi;
};

template <typename F>
void for_each_sub_box(const ScopeBox& box, F&& fn) {
  size_t m = box.arity();
  SubBox sub{box.lo, box.lo};
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == m) {
      fn(sub);
      return;
    }
    for (int l = box.lo[k]; l <= box.hi[k]; ++l)
      for (int u = l; u <= box.hi[k]; ++u) {
        sub.lo[k] = l;
        sub.hi[k] = u;
        rec(k + 1);
      }
  };
  rec(0);
}

int64_t sub_box_count(const ScopeBox& box) {
  int64_t n = 1;
  for (size_t k = 0; k < box.arity(); ++k) {
    int64_t d = box.hi[k] - box.lo[k] + 1;
    n *= d * (d + 1) / 2;
    if (n > kBoxBudget) return kBoxBudget + 1;
  }
  return n;
}

bool tuple_in_sub(const std::vector<int>& t, const SubBox& sub) {
  for (size_t k = 0; k < t.size(); ++k)
    if (t[k] < sub.lo[k] || t[k] > sub.hi[k]) return false;
  return true;
}

// A box conflicts when no cell inside it is allowed by the relation.
bool sub_conflicting(const TableRelation& rel, const SubBox& sub) {
  int64_t inside = 0;
  for (const auto& t : rel.tuples)
    if (tuple_in_sub(t, sub)) ++inside;
  if (rel.c->polarity == TablePolarity::Allowed) return inside == 0;
  int64_t cells = 1;
  for (size_t k = 0; k < sub.lo.size(); ++k)
    cells *= sub.hi[k] - sub.lo[k] + 1;
  return inside == cells;
}

// Conflict is anti-monotone under shrinking, so a box is maximal exactly
// when every one-step widening stops conflicting.
bool sub_maximal(const TableRelation& rel, const SubBox& sub) {
  SubBox probe = sub;
  for (size_t k = 0; k < sub.lo.size(); ++k) {
    if (sub.lo[k] > rel.box.lo[k]) {
      --probe.lo[k];
      bool wide = sub_conflicting(rel, probe);
      ++probe.lo[k];
      if (wide) return false;
    }
    if (sub.hi[k] < rel.box.hi[k]) {
      ++probe.hi[k];
      bool wide = sub_conflicting(rel, probe);
      --probe.hi[k];
      if (wide) return false;
    }
  }
  return true;
}

template <typename F>
void for_each_conflict_box(const CspInstance& inst, const Constraint& c,
                           bool maximal_only, F&& emit) {
  TableRelation rel = relation_of(inst, c);
  if (sub_box_count(rel.box) > kBoxBudget)
    throw EncodeError("table too large for interval conflict analysis");
  for_each_sub_box(rel.box, [&](const SubBox& sub) {
    if (!sub_conflicting(rel, sub)) return;
    if (maximal_only && !sub_maximal(rel, sub)) return;
    emit(sub);
  });
}

}  // namespace

void encode_table_direct(Program& p, const CspInstance& inst,
                         const Constraint& c) {
  TableRelation rel = relation_of(inst, c);
  auto forbid = [&](const std::vector<int>& t) {
    std::vector<BodyLiteral> body;
    for (size_t k = 0; k < c.scope.size(); ++k)
      body.push_back(pos(e_atom(p, c.scope[k], vidx(p, c.scope[k], t[k]))));
    p.add_integrity(std::move(body));
  };
  if (c.polarity == TablePolarity::Forbidden) {
    for (const auto& t : rel.tuples) forbid(t);
    return;
  }
  if (rel.box.cells() > kCellBudget)
    throw EncodeError("table too large to complement");
  for_each_cell(rel.box, [&](const std::vector<int>& t) {
    if (!rel.listed(t)) forbid(t);
  });
}

void encode_table_support(Program& p, const CspInstance& inst,
                          const Constraint& c) {
  if (c.scope.size() != 2) throw EncodeError("support encoding is binary");
  TableRelation rel = relation_of(inst, c);
  // Both directions: a value needs a supporting partner value, else it is
  // wrong outright.
  for (int dir = 0; dir < 2; ++dir) {
    VarId v = c.scope[(size_t)dir];
    VarId w = c.scope[(size_t)(1 - dir)];
    int vlo = rel.box.lo[(size_t)dir], vhi = rel.box.hi[(size_t)dir];
    int wlo = rel.box.lo[(size_t)(1 - dir)], whi = rel.box.hi[(size_t)(1 - dir)];
    for (int a = vlo; a <= vhi; ++a) {
      std::vector<BodyLiteral> body = {pos(e_atom(p, v, vidx(p, v, a)))};
      for (int bval = wlo; bval <= whi; ++bval) {
        std::vector<int> t(2);
        t[(size_t)dir] = a;
        t[(size_t)(1 - dir)] = bval;
        if (rel.allows(t)) body.push_back(neg(e_atom(p, w, vidx(p, w, bval))));
      }
      p.add_integrity(std::move(body));
    }
  }
}

void encode_table_ksupport(Program& p, const CspInstance& inst,
                           const Constraint& c, int k) {
  size_t m = c.scope.size();
  if (k < 1 || (size_t)k >= m)
    throw EncodeError("k-support needs 1 <= k < arity");
  TableRelation rel = relation_of(inst, c);
  {
    int64_t work = rel.box.cells();
    int64_t subsets = 1;
    for (size_t i = 0; i < (size_t)k; ++i)
      subsets = subsets * (int64_t)(m - i) / (int64_t)(i + 1);
    if (work > kCellBudget / std::max<int64_t>(subsets, 1))
      throw EncodeError("table too large for k-support");
  }
  // Every k-assignment must reach some completing assignment of the other
  // positions; a fresh support atom names each completion.
  std::vector<size_t> sel((size_t)k);
  for (size_t i = 0; i < (size_t)k; ++i) sel[i] = i;
  for (;;) {
    std::vector<size_t> rest;
    for (size_t i = 0; i < m; ++i)
      if (std::find(sel.begin(), sel.end(), i) == sel.end())
        rest.push_back(i);
    ScopeBox sel_box, rest_box;
    for (size_t i : sel) {
      sel_box.lo.push_back(rel.box.lo[i]);
      sel_box.hi.push_back(rel.box.hi[i]);
    }
    for (size_t i : rest) {
      rest_box.lo.push_back(rel.box.lo[i]);
      rest_box.hi.push_back(rel.box.hi[i]);
    }
    for_each_cell(sel_box, [&](const std::vector<int>& chosen) {
      std::vector<int> full(m);
      for (size_t i = 0; i < sel.size(); ++i) full[sel[i]] = chosen[i];
      std::vector<BodyLiteral> guard;
      for (size_t i = 0; i < sel.size(); ++i) {
        VarId v = c.scope[sel[i]];
        guard.push_back(pos(e_atom(p, v, vidx(p, v, chosen[i]))));
      }
      for_each_cell(rest_box, [&](const std::vector<int>& fill) {
        for (size_t i = 0; i < rest.size(); ++i) full[rest[i]] = fill[i];
        if (!rel.allows(full)) return;
        AtomId sup = p.intern(AtomSym::support(p.fresh_support()));
        std::vector<BodyLiteral> body;
        for (size_t i = 0; i < rest.size(); ++i) {
          VarId v = c.scope[rest[i]];
          body.push_back(pos(e_atom(p, v, vidx(p, v, fill[i]))));
        }
        p.add_normal(sup, std::move(body));
        guard.push_back(neg(sup));
      });
      p.add_integrity(std::move(guard));
    });
    // next k-subset in lexicographic order
    size_t i = (size_t)k;
    while (i > 0 && sel[i - 1] == m - ((size_t)k - i) - 1) --i;
    if (i == 0) break;
    ++sel[i - 1];
    for (size_t j = i; j < (size_t)k; ++j) sel[j] = sel[j - 1] + 1;
  }
}

void encode_table_range(Program& p, const CspInstance& inst,
                        const Constraint& c, bool maximal_only) {
  for_each_conflict_box(inst, c, maximal_only, [&](const SubBox& sub) {
    std::vector<BodyLiteral> body;
    for (size_t k = 0; k < c.scope.size(); ++k) {
      VarId v = c.scope[k];
      body.push_back(pos(
          r_atom(p, v, vidx(p, v, sub.lo[k]), vidx(p, v, sub.hi[k]))));
    }
    p.add_integrity(std::move(body));
  });
}

void encode_table_bound(Program& p, const CspInstance& inst,
                        const Constraint& c, bool maximal_only) {
  // Boxes rendered over half open prefixes: inside [l,u] is b(v,u) and not
  // b(v,l-1), where the l = lo case needs no lower literal.
  for_each_conflict_box(inst, c, maximal_only, [&](const SubBox& sub) {
    std::vector<BodyLiteral> body;
    for (size_t k = 0; k < c.scope.size(); ++k) {
      VarId v = c.scope[k];
      int li = vidx(p, v, sub.lo[k]), ui = vidx(p, v, sub.hi[k]);
      body.push_back(pos(b_atom(p, v, ui)));
      if (li >= 2) body.push_back(neg(b_atom(p, v, li - 1)));
    }
    p.add_integrity(std::move(body));
  });
}

void encode_alldiff_direct(Program& p, const CspInstance& inst,
                           const Constraint& c) {
  for (size_t i = 0; i < c.scope.size(); ++i)
    for (size_t j = i + 1; j < c.scope.size(); ++j) {
      VarId v = c.scope[i], w = c.scope[j];
      const Domain& dv = inst.var(v).domain;
      const Domain& dw = inst.var(w).domain;
      int lo = std::max(dv.lo, dw.lo), hi = std::min(dv.hi, dw.hi);
      for (int a = lo; a <= hi; ++a)
        p.add_integrity({pos(e_atom(p, v, vidx(p, v, a))),
                         pos(e_atom(p, w, vidx(p, w, a)))});
    }
}

void encode_alldiff_support(Program& p, const CspInstance& inst,
                            const Constraint& c) {
  int lo = INT32_MAX, hi = INT32_MIN;
  for (VarId v : c.scope) {
    lo = std::min(lo, inst.var(v).domain.lo);
    hi = std::max(hi, inst.var(v).domain.hi);
  }
  for (int a = lo; a <= hi; ++a) {
    std::vector<BodyLiteral> lits;
    for (VarId v : c.scope)
      if (inst.var(v).domain.lo <= a && a <= inst.var(v).domain.hi)
        lits.push_back(pos(e_atom(p, v, vidx(p, v, a))));
    p.add_cardinality(2, lits);
  }
}

void encode_alldiff_range(Program& p, const CspInstance& inst,
                          const Constraint& c, int hall_cap) {
  int lo = INT32_MAX, hi = INT32_MIN;
  for (VarId v : c.scope) {
    lo = std::min(lo, inst.var(v).domain.lo);
    hi = std::max(hi, inst.var(v).domain.hi);
  }
  // An interval of w values admits at most w of the variables. Each literal
  // clips the interval to its variable's box, which preserves the meaning
  // and keeps every atom on-ladder.
  for (int l = lo; l <= hi; ++l)
    for (int u = l; u <= hi; ++u) {
      int width = u - l + 1;
      if (hall_cap > 0 && width > hall_cap) continue;
      std::vector<BodyLiteral> lits;
      for (VarId v : c.scope) {
        const Domain& dv = inst.var(v).domain;
        int cl = std::max(l, dv.lo), cu = std::min(u, dv.hi);
        if (cl > cu) continue;
        lits.push_back(pos(r_atom(p, v, vidx(p, v, cl), vidx(p, v, cu))));
      }
      p.add_cardinality(width + 1, lits);
    }
}

void encode_alldiff_bound(Program& p, const CspInstance& inst,
                          const Constraint& c, int hall_cap) {
  for (VarId v : c.scope)
    if (!p.var_info.at(v).bound_range_linked) link_bound_range(p, v);
  encode_alldiff_range(p, inst, c, hall_cap);
}

namespace {

// Union of the scope boxes as sorted disjoint intervals.
std::vector<std::pair<int, int>> scope_value_union(const CspInstance& inst,
                                                   const Constraint& c) {
  std::vector<std::pair<int, int>> spans;
  for (VarId v : c.scope)
    spans.push_back({inst.var(v).domain.lo, inst.var(v).domain.hi});
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<int, int>> merged;
  for (auto [l, u] : spans) {
    if (!merged.empty() && l <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, u);
    else
      merged.push_back({l, u});
  }
  return merged;
}

void permutation_value_strengthening(Program& p, const CspInstance& inst,
                                     const Constraint& c) {
  // Every value of the union must be taken by someone.
  for (auto [lo, hi] : scope_value_union(inst, c))
    for (int a = lo; a <= hi; ++a) {
      std::vector<BodyLiteral> body;
      for (VarId v : c.scope)
        if (inst.var(v).domain.lo <= a && a <= inst.var(v).domain.hi)
          body.push_back(neg(e_atom(p, v, vidx(p, v, a))));
      p.add_integrity(std::move(body));
    }
}

void permutation_interval_strengthening(Program& p, const CspInstance& inst,
                                        const Constraint& c, int hall_cap) {
  auto merged = scope_value_union(inst, c);
  if (merged.size() != 1) return;  // gapped codomain, nothing sound to add
  int lo = merged[0].first, hi = merged[0].second;
  int n = hi - lo + 1;
  // Dual counting: an interval of w values hosts at least w variables, so at
  // most n - w sit outside it.
  for (int l = lo; l <= hi; ++l)
    for (int u = l; u <= hi; ++u) {
      int width = u - l + 1;
      if (hall_cap > 0 && width > hall_cap) continue;
      int bound = n - width + 1;
      std::vector<BodyLiteral> lits;
      for (VarId v : c.scope) {
        const Domain& dv = inst.var(v).domain;
        int cl = std::max(l, dv.lo), cu = std::min(u, dv.hi);
        if (cl > cu) {
          --bound;  // this variable sits outside no matter what
          continue;
        }
        lits.push_back(neg(r_atom(p, v, vidx(p, v, cl), vidx(p, v, cu))));
      }
      if (bound <= 0) {
        // Too few candidate variables to cover the interval at all. Trip an
        // atom that every total assignment satisfies.
        VarId v0 = c.scope[0];
        const VarEncodingInfo& i0 = info_of(p, v0);
        if (i0.has_bound)
          p.add_integrity({pos(b_atom(p, v0, i0.size))});
        else
          p.add_integrity({pos(r_atom(p, v0, 1, i0.size))});
        continue;
      }
      p.add_cardinality(bound, lits);
    }
}

}  // namespace

void encode_permutation(Program& p, const CspInstance& inst,
                        const Constraint& c, const EncodingConfig& config) {
  switch (config.constraint_encoding) {
    case ConstraintEncoding::Direct:
      encode_alldiff_direct(p, inst, c);
      break;
    case ConstraintEncoding::Support:
    case ConstraintEncoding::KSupport:
      encode_alldiff_support(p, inst, c);
      break;
    case ConstraintEncoding::Range:
      encode_alldiff_range(p, inst, c, config.hall_cap);
      break;
    case ConstraintEncoding::Bound:
      encode_alldiff_bound(p, inst, c, config.hall_cap);
      break;
  }
  if (!config.permutation_strengthening) return;
  switch (config.constraint_encoding) {
    case ConstraintEncoding::Direct:
    case ConstraintEncoding::Support:
    case ConstraintEncoding::KSupport:
      permutation_value_strengthening(p, inst, c);
      break;
    case ConstraintEncoding::Range:
    case ConstraintEncoding::Bound:
      permutation_interval_strengthening(p, inst, c, config.hall_cap);
      break;
  }
}

namespace {

ConstraintEncoding resolved_encoding(const EncodingConfig& config,
                                     const Constraint& c) {
  if (c.kind == ConstraintKind::Table && config.table_encoding)
    return *config.table_encoding;
  return config.constraint_encoding;
}

void check_ladder_cover(const CspInstance& inst, const EncodingConfig& config) {
  bool value = config.var_encoding == VarEncoding::Direct ||
               config.var_encoding == VarEncoding::BoundHybrid ||
               config.var_encoding == VarEncoding::RangeHybrid;
  bool bound = config.var_encoding == VarEncoding::Bound ||
               config.var_encoding == VarEncoding::BoundHybrid;
  bool range = config.var_encoding == VarEncoding::Range ||
               config.var_encoding == VarEncoding::RangeHybrid;
  for (const Constraint& c : inst.constraints) {
    switch (resolved_encoding(config, c)) {
      case ConstraintEncoding::Direct:
      case ConstraintEncoding::Support:
      case ConstraintEncoding::KSupport:
        if (!value)
          throw EncodeError(
              "constraint encoding needs a value ladder; use the direct or a "
              "hybrid variable encoding");
        break;
      case ConstraintEncoding::Range:
        if (!range)
          throw EncodeError(
              "range constraint encoding needs a range variable encoding");
        break;
      case ConstraintEncoding::Bound:
        if (!bound)
          throw EncodeError(
              "bound constraint encoding needs a bound variable encoding");
        break;
    }
  }
}

}  // namespace

EncodedInstance encode_instance(const CspInstance& inst,
                                const EncodingConfig& config) {
  auto errs = validate(inst);
  if (!errs.empty()) throw EncodeError("invalid instance: " + errs.front());
  if (config.ksupport_k < 1)
    throw EncodeError("k-support parameter must be positive");
  check_ladder_cover(inst, config);

  EncodedInstance out;
  out.instance = inst;
  out.config = config;
  Program& p = out.program;

  for (const CspVariable& var : inst.variables) {
    int lo = var.domain.lo;
    int d = var.domain.hi - var.domain.lo + 1;
    switch (config.var_encoding) {
      case VarEncoding::Direct:
        encode_var_direct(p, var.id, lo, d);
        break;
      case VarEncoding::Bound:
        encode_var_bound(p, var.id, lo, d);
        break;
      case VarEncoding::Range:
        encode_var_range(p, var.id, lo, d);
        break;
      case VarEncoding::BoundHybrid:
        encode_var_bound(p, var.id, lo, d);
        link_bound_direct(p, var.id);
        break;
      case VarEncoding::RangeHybrid:
        encode_var_range(p, var.id, lo, d);
        link_range_direct(p, var.id);
        break;
    }
  }

  for (const Constraint& c : inst.constraints) {
    ConstraintSpan span;
    span.first = p.rules.size();
    ConstraintEncoding enc = resolved_encoding(config, c);
    if (c.kind == ConstraintKind::Table) {
      switch (enc) {
        case ConstraintEncoding::Direct:
          encode_table_direct(p, inst, c);
          break;
        case ConstraintEncoding::Support:
          encode_table_support(p, inst, c);
          break;
        case ConstraintEncoding::KSupport: {
          // Unary tables have no split to support; keep them direct.
          if (c.scope.size() < 2) {
            encode_table_direct(p, inst, c);
          } else {
            int k = std::min(config.ksupport_k, (int)c.scope.size() - 1);
            encode_table_ksupport(p, inst, c, k);
          }
          break;
        }
        case ConstraintEncoding::Range:
          encode_table_range(p, inst, c, config.maximal_boxes_only);
          break;
        case ConstraintEncoding::Bound:
          encode_table_bound(p, inst, c, config.maximal_boxes_only);
          break;
      }
    } else if (c.kind == ConstraintKind::AllDifferent) {
      switch (enc) {
        case ConstraintEncoding::Direct:
          encode_alldiff_direct(p, inst, c);
          break;
        case ConstraintEncoding::Support:
        case ConstraintEncoding::KSupport:
          encode_alldiff_support(p, inst, c);
          break;
        case ConstraintEncoding::Range:
          encode_alldiff_range(p, inst, c, config.hall_cap);
          break;
        case ConstraintEncoding::Bound:
          encode_alldiff_bound(p, inst, c, config.hall_cap);
          break;
      }
    } else {
      encode_permutation(p, inst, c, config);
    }
    span.count = p.rules.size() - span.first;
    out.constraint_rules.push_back(span);
  }
  return out;
}

namespace {

enum class Granularity { Value, Bound, Range };

Granularity granularity_of(const EncodedInstance& enc) {
  switch (enc.config.var_encoding) {
    case VarEncoding::Bound:
      return Granularity::Bound;
    case VarEncoding::Range:
      return Granularity::Range;
    default:
      return Granularity::Value;
  }
}

AtomId find_checked(const Program& p, const AtomSym& s) {
  AtomId a = p.find(s);
  if (a < 0) throw EncodeError("ladder atom missing: " + atom_name(s));
  return a;
}
AtomId find_e(const Program& p, VarId v, int i) {
  return find_checked(p, AtomSym::value(v, i));
}
AtomId find_r(const Program& p, VarId v, int l, int u) {
  return find_checked(p, AtomSym::range(v, l, u));
}
AtomId find_b(const Program& p, VarId v, int i) {
  return find_checked(p, AtomSym::bound(v, i));
}

[[noreturn]] void readback_fail(VarId v, const char* what) {
  std::ostringstream os;
  os << "model does not pin variable " << v << ": " << what;
  throw EncodeError(os.str());
}

}  // namespace

CspAssignment extract_csp_solution(const Model& m, const EncodedInstance& enc) {
  const Program& p = enc.program;
  CspAssignment out((size_t)enc.instance.num_vars(), 0);
  Granularity g = granularity_of(enc);
  for (const CspVariable& var : enc.instance.variables) {
    const VarEncodingInfo& info = p.var_info.at(var.id);
    int hit = 0, idx = 0;
    for (int i = 1; i <= info.size; ++i) {
      bool here = false;
      switch (g) {
        case Granularity::Value:
          here = m.holds(find_e(p, var.id, i));
          break;
        case Granularity::Range:
          here = m.holds(find_r(p, var.id, i, i));
          break;
        case Granularity::Bound: {
          bool ub = m.holds(find_b(p, var.id, i));
          bool below = i >= 2 && m.holds(find_b(p, var.id, i - 1));
          here = ub && !below;
          break;
        }
      }
      if (here) {
        ++hit;
        idx = i;
      }
    }
    if (hit != 1) readback_fail(var.id, hit ? "several values" : "no value");
    out[(size_t)var.id] = idx + info.offset;
  }
  return out;
}

Domain extract_domain(const Engine& eng, const EncodedInstance& enc, VarId v) {
  const Program& p = enc.program;
  const VarEncodingInfo& info = p.var_info.at(v);
  Granularity g = granularity_of(enc);
  if (g == Granularity::Bound) {
    int lo = 1, hi = info.size;
    for (int i = 1; i <= info.size; ++i) {
      TruthValue t = eng.value(find_b(p, v, i));
      if (t == TruthValue::False) lo = i + 1;
      if (t == TruthValue::True) {
        hi = i;
        break;
      }
    }
    if (lo > hi) readback_fail(v, "bounds crossed");
    return Domain::interval(lo + info.offset, hi + info.offset);
  }
  std::set<int> kept;
  for (int i = 1; i <= info.size; ++i) {
    AtomId a = g == Granularity::Value ? find_e(p, v, i) : find_r(p, v, i, i);
    if (eng.value(a) != TruthValue::False) kept.insert(i + info.offset);
  }
  if (kept.empty()) readback_fail(v, "all values pruned");
  return Domain::from_values(kept);
}

std::vector<Lit> restrict_to_values(const EncodedInstance& enc, VarId v,
                                    const std::set<int>& keep) {
  const Program& p = enc.program;
  const VarEncodingInfo& info = p.var_info.at(v);
  if (!info.has_value)
    throw EncodeError("value restrictions need a value ladder");
  std::vector<Lit> lits;
  for (int i = 1; i <= info.size; ++i)
    if (!keep.count(i + info.offset))
      lits.push_back(Lit::f(find_e(p, v, i)));
  return lits;
}

std::vector<Lit> restrict_to_interval(const EncodedInstance& enc, VarId v,
                                      int lo, int hi) {
  const Program& p = enc.program;
  const VarEncodingInfo& info = p.var_info.at(v);
  int d = info.size;
  int l0 = std::max(lo - info.offset, 1);
  int u0 = std::min(hi - info.offset, d);
  if (l0 > u0) throw EncodeError("interval restriction is empty");
  std::vector<Lit> lits;
  switch (enc.config.var_encoding) {
    case VarEncoding::Range:
    case VarEncoding::RangeHybrid:
      lits.push_back(Lit::t(find_r(p, v, l0, u0)));
      if (l0 >= 2) lits.push_back(Lit::f(find_r(p, v, 1, l0 - 1)));
      if (u0 <= d - 1) lits.push_back(Lit::f(find_r(p, v, u0 + 1, d)));
      break;
    case VarEncoding::Bound:
    case VarEncoding::BoundHybrid:
      lits.push_back(Lit::t(find_b(p, v, u0)));
      if (l0 >= 2) lits.push_back(Lit::f(find_b(p, v, l0 - 1)));
      break;
    case VarEncoding::Direct: {
      std::set<int> keep;
      for (int i = l0; i <= u0; ++i) keep.insert(i + info.offset);
      return restrict_to_values(enc, v, keep);
    }
  }
  return lits;
}

std::vector<Lit> model_blocking_lits(const Model& m,
                                     const EncodedInstance& enc) {
  const Program& p = enc.program;
  CspAssignment sol = extract_csp_solution(m, enc);
  std::vector<Lit> lits;
  for (const CspVariable& var : enc.instance.variables) {
    const VarEncodingInfo& info = p.var_info.at(var.id);
    int i = sol[(size_t)var.id] - info.offset;
    switch (granularity_of(enc)) {
      case Granularity::Value:
        lits.push_back(Lit::t(find_e(p, var.id, i)));
        break;
      case Granularity::Range:
        lits.push_back(Lit::t(find_r(p, var.id, i, i)));
        break;
      case Granularity::Bound:
        lits.push_back(Lit::t(find_b(p, var.id, i)));
        if (i >= 2) lits.push_back(Lit::f(find_b(p, var.id, i - 1)));
        break;
    }
  }
  return lits;
}

NogoodDb lower_and_compile(const Program& p) {
  if (!p.has_cardinalities()) return compile(p);
  return compile(translate_cardinality(p));
}

std::vector<CspAssignment> solve_all(const EncodedInstance& enc,
                                     size_t max_models, EngineOptions opts) {
  NogoodDb db = lower_and_compile(enc.program);
  Engine eng(db, opts);
  std::vector<CspAssignment> out;
  for (;;) {
    SolveStatus st = eng.solve();
    if (st == SolveStatus::Unsat) return out;
    if (st == SolveStatus::Limit)
      throw EncodeError("hit a solver limit while enumerating");
    Model m = eng.model();
    out.push_back(extract_csp_solution(m, enc));
    if (out.size() > max_models)
      throw EncodeError("more models than the enumeration cap");
    eng.add_nogood(model_blocking_lits(m, enc));
  }
}

}  // namespace encore
