#ifndef ENCORE_ORACLES_HPP
#define ENCORE_ORACLES_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "encore/csp.hpp"
#include "encore/nogood.hpp"
#include "encore/program.hpp"

// Slow reference implementations used to judge the propagation machinery.
// Everything here favours being obviously right over being fast, and each
// entry point refuses inputs beyond a small size guard instead of grinding.

namespace encore {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domains under pruning. failed means some domain wiped out; the remaining
// entries are whatever was left standing when that happened.
struct DomainState {
  std::vector<Domain> domains;
  bool failed = false;

  static DomainState of(const CspInstance& inst);
  bool operator==(const DomainState& o) const;
};

// Arc consistency on the binary decomposition: binary tables as given,
// all-different and permutation as pairwise disequalities. Errors on tables
// of other arities.
DomainState ac3_binary_decomposition(const CspInstance& inst,
                                     DomainState start);

// One constraint pruned to range consistency: a value survives when the
// constraint has a tuple through it inside the interval hulls of the other
// current domains. May punch holes.
DomainState range_consistent_domains(const CspInstance& inst,
                                     size_t constraint, DomainState start);

// One constraint pruned to bound consistency: endpoints shrink until both
// have hull support; interior holes are never touched.
DomainState bound_consistent_domains(const CspInstance& inst,
                                     size_t constraint, DomainState start);

// Rounds of per-constraint pruning until nothing changes.
DomainState range_consistent_fixpoint(const CspInstance& inst,
                                      DomainState start);
DomainState bound_consistent_fixpoint(const CspInstance& inst,
                                      DomainState start);

// Can the partial assignment (pairs of scope variable and value, values
// inside current domains) be completed on the constraint's scope using
// current domain values?
bool relational_extension_exists(
    const CspInstance& inst, size_t constraint, const DomainState& state,
    const std::vector<std::pair<VarId, int>>& partial);

// All solutions in lexicographic variable-by-variable order. Backtracking
// with prefix checks; gives up past a fixed node budget.
std::vector<CspAssignment> enumerate_solutions(const CspInstance& inst);

// Answer sets of a lowered, choice-aware program with at most 18 atoms, as
// bitmasks over atom ids, ascending.
std::vector<uint32_t> brute_force_answer_sets(const Program& p);

// Total assignments violating no stored nogood, over at most 18
// propositions, as bitmasks over proposition ids, ascending.
std::vector<uint32_t> brute_force_nogood_solutions(const NogoodDb& db);

// Compiles p and checks that nogood solutions, projected to atoms, are
// exactly the answer sets.
bool solutions_equal_answer_sets(const Program& p);

}  // namespace encore

#endif
