#ifndef ENCORE_CSP_HPP
#define ENCORE_CSP_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace encore {

using VarId = int;

// Finite integer domain: a closed interval [lo, hi] minus a set of removed
// values. Removed values are kept strictly inside the interval; removing an
// endpoint slides the endpoint instead. A Domain is never empty.
struct Domain {
  int lo = 1;
  int hi = 1;
  std::set<int> removed;

  static Domain interval(int lo, int hi);
  static Domain from_values(const std::set<int>& values);

  bool contains(int v) const {
    return v >= lo && v <= hi && !removed.count(v);
  }
  int size() const { return hi - lo + 1 - (int)removed.size(); }
  int min() const { return lo; }
  int max() const { return hi; }

  // Removes v if present. Returns false when v is the last value, in which
  // case the domain is left untouched (callers track wipeout themselves).
  bool remove(int v);

  std::vector<int> values() const;
  std::set<int> value_set() const;

  bool operator==(const Domain& other) const;
};

enum class ConstraintKind { AllDifferent, Permutation, Table };
enum class TablePolarity { Allowed, Forbidden };

struct Constraint {
  ConstraintKind kind = ConstraintKind::AllDifferent;
  std::vector<VarId> scope;
  // Table constraints only:
  TablePolarity polarity = TablePolarity::Allowed;
  std::vector<std::vector<int>> tuples;
};

struct CspVariable {
  VarId id = 0;
  std::string name;
  Domain domain;
};

struct CspInstance {
  std::vector<CspVariable> variables;  // ids are dense, 0..n-1, in order
  std::vector<Constraint> constraints;

  int num_vars() const { return (int)variables.size(); }
  const CspVariable& var(VarId v) const { return variables.at((size_t)v); }
};

// Total assignment, indexed by variable id.
using CspAssignment = std::vector<int>;

struct CspError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural checks: dense ids, names unique and nonempty, scopes in range
// and duplicate free, table tuples of matching arity inside the scope's
// domain boxes, permutation scopes as wide as their value universe.
// Returns one message per problem; empty means valid.
std::vector<std::string> validate(const CspInstance& inst);

// Does a total assignment satisfy every constraint? Throws CspError when the
// assignment is not total or a value falls outside its variable's domain.
bool satisfies(const CspInstance& inst, const CspAssignment& a);

// Single constraint check against a total assignment (no domain checks).
bool constraint_satisfied(const Constraint& c, const CspAssignment& a);

}  // namespace encore

#endif
