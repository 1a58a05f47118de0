#include "encore/csp.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace encore {

Domain Domain::interval(int lo, int hi) {
  if (lo > hi) throw CspError("empty domain interval");
  Domain d;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Domain Domain::from_values(const std::set<int>& values) {
  if (values.empty()) throw CspError("empty domain value set");
  Domain d;
  d.lo = *values.begin();
  d.hi = *values.rbegin();
  for (int v = d.lo + 1; v < d.hi; ++v)
    if (!values.count(v)) d.removed.insert(v);
  return d;
}

bool Domain::remove(int v) {
  if (!contains(v)) return true;
  if (size() == 1) return false;
  if (v == lo) {
    ++lo;
    while (removed.count(lo)) removed.erase(lo++);
  } else if (v == hi) {
    --hi;
    while (removed.count(hi)) removed.erase(hi--);
  } else {
    removed.insert(v);
  }
  return true;
}

std::vector<int> Domain::values() const {
  std::vector<int> out;
  out.reserve((size_t)size());
  for (int v = lo; v <= hi; ++v)
    if (!removed.count(v)) out.push_back(v);
  return out;
}

std::set<int> Domain::value_set() const {
  std::set<int> out;
  for (int v = lo; v <= hi; ++v)
    if (!removed.count(v)) out.insert(v);
  return out;
}

bool Domain::operator==(const Domain& other) const {
  return lo == other.lo && hi == other.hi && removed == other.removed;
}

namespace {

std::string constraint_label(const CspInstance& inst, size_t ci) {
  std::ostringstream os;
  os << "constraint " << ci;
  switch (inst.constraints[ci].kind) {
    case ConstraintKind::AllDifferent: os << " (alldifferent)"; break;
    case ConstraintKind::Permutation: os << " (permutation)"; break;
    case ConstraintKind::Table: os << " (table)"; break;
  }
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const CspInstance& inst) {
  std::vector<std::string> errs;
  const int n = inst.num_vars();
  std::unordered_set<std::string> names;
  for (int i = 0; i < n; ++i) {
    const CspVariable& v = inst.variables[(size_t)i];
    if (v.id != i) {
      std::ostringstream os;
      os << "variable at position " << i << " has id " << v.id
         << " (ids must be dense and in order)";
      errs.push_back(os.str());
    }
    if (v.name.empty())
      errs.push_back("variable " + std::to_string(i) + " has an empty name");
    else if (!names.insert(v.name).second)
      errs.push_back("duplicate variable name '" + v.name + "'");
    if (v.domain.lo > v.domain.hi)
      errs.push_back("variable " + std::to_string(i) + " has an empty domain");
    // Instance domains are plain intervals; holes only appear later, in
    // pruned domain states.
    if (!v.domain.removed.empty())
      errs.push_back("variable " + std::to_string(i) +
                     " declares a domain with holes");
  }
  for (size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    const Constraint& c = inst.constraints[ci];
    const std::string label = constraint_label(inst, ci);
    bool scope_ok = !c.scope.empty();
    if (c.scope.empty()) errs.push_back(label + " has an empty scope");
    std::unordered_set<int> seen;
    for (VarId v : c.scope) {
      if (v < 0 || v >= n) {
        errs.push_back(label + " references unknown variable " +
                       std::to_string(v));
        scope_ok = false;
      } else if (!seen.insert(v).second) {
        errs.push_back(label + " repeats variable " + std::to_string(v));
        scope_ok = false;
      }
    }
    if (c.kind == ConstraintKind::Table) {
      for (const auto& t : c.tuples) {
        if (t.size() != c.scope.size()) {
          errs.push_back(label + " has a tuple of arity " +
                         std::to_string(t.size()) + ", expected " +
                         std::to_string(c.scope.size()));
          continue;
        }
        if (!scope_ok) continue;
        for (size_t k = 0; k < t.size(); ++k) {
          const Domain& d = inst.var(c.scope[k]).domain;
          if (t[k] < d.lo || t[k] > d.hi) {
            std::ostringstream os;
            os << label << " tuple value " << t[k] << " lies outside ["
               << d.lo << "," << d.hi << "] of variable " << c.scope[k];
            errs.push_back(os.str());
          }
        }
      }
    } else if (c.tuples.size() || c.polarity != TablePolarity::Allowed) {
      if (c.tuples.size())
        errs.push_back(label + " carries tuples but is not a table");
    }
    if (c.kind == ConstraintKind::Permutation && scope_ok) {
      std::set<int> universe;
      for (VarId v : c.scope) {
        auto vals = inst.var(v).domain.value_set();
        universe.insert(vals.begin(), vals.end());
      }
      if (universe.size() != c.scope.size()) {
        std::ostringstream os;
        os << label << " ranges over " << universe.size() << " values but has "
           << c.scope.size() << " variables";
        errs.push_back(os.str());
      }
    }
  }
  return errs;
}

bool constraint_satisfied(const Constraint& c, const CspAssignment& a) {
  switch (c.kind) {
    case ConstraintKind::AllDifferent:
    case ConstraintKind::Permutation: {
      std::unordered_set<int> used;
      for (VarId v : c.scope)
        if (!used.insert(a[(size_t)v]).second) return false;
      // Distinctness plus the validated |scope| == |universe| makes a
      // permutation onto its universe; nothing more to check here.
      return true;
    }
    case ConstraintKind::Table: {
      std::vector<int> t(c.scope.size());
      for (size_t k = 0; k < t.size(); ++k) t[k] = a[(size_t)c.scope[k]];
      bool listed = std::find(c.tuples.begin(), c.tuples.end(), t) !=
                    c.tuples.end();
      return c.polarity == TablePolarity::Allowed ? listed : !listed;
    }
  }
  return false;
}

bool satisfies(const CspInstance& inst, const CspAssignment& a) {
  if ((int)a.size() != inst.num_vars())
    throw CspError("assignment is not total");
  for (int i = 0; i < inst.num_vars(); ++i)
    if (!inst.variables[(size_t)i].domain.contains(a[(size_t)i]))
      throw CspError("assignment leaves the domain of variable " +
                     std::to_string(i));
  for (const Constraint& c : inst.constraints)
    if (!constraint_satisfied(c, a)) return false;
  return true;
}

}  // namespace encore
