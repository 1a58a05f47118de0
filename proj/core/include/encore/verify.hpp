#ifndef ENCORE_VERIFY_HPP
#define ENCORE_VERIFY_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "encore/encode.hpp"
#include "encore/oracles.hpp"

// Randomized checking of the propagation strength claims: encode a random
// instance, push a random restriction in as assumptions, propagate, and
// compare the surviving domains against the matching slow consistency
// algorithm.

namespace encore {

struct VerifyOptions {
  int trials = 200;
  uint64_t seed = 1;
  int max_n = 5;
  int max_d = 5;
};

struct VerifyReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  int strict = 0;  // trials where propagation was strictly weaker
  std::vector<std::string> notes;

  bool ok() const { return failures == 0; }
};

// Random instance families the suites draw from.
CspInstance random_binary_table_instance(std::mt19937_64& rng, int max_n,
                                         int max_d);
CspInstance random_ternary_table_instance(std::mt19937_64& rng, int max_d);
CspInstance random_mixed_instance(std::mt19937_64& rng, int max_n, int max_d,
                                  bool alldiff_heavy);

// Restriction samplers; the sampled pruning is applied to `start` and
// returned as assumption literals for the encoded side.
std::vector<Lit> sample_value_restrictions(std::mt19937_64& rng,
                                           const EncodedInstance& enc,
                                           DomainState& start);
std::vector<Lit> sample_interval_restrictions(std::mt19937_64& rng,
                                              const EncodedInstance& enc,
                                              DomainState& start);

// Assume-and-propagate, then read every variable's surviving values.
struct PropagationSnapshot {
  bool conflict = false;
  std::vector<std::set<int>> kept;  // by variable id; empty when conflict
};
PropagationSnapshot propagate_snapshot(const EncodedInstance& enc,
                                       const std::vector<Lit>& assumptions);

// Support encodings propagate exactly like arc consistency; direct ones may
// be weaker but never prune more. Pair extension ties k-support conflicts to
// inextensible partial assignments. The range and bound suites compare
// interval encodings against the matching slow pruners, for tables and for
// all-different scopes.
VerifyReport check_support_matches_arc(VerifyOptions opts);
VerifyReport check_direct_under_arc(VerifyOptions opts);
VerifyReport check_pair_extension_conflicts(VerifyOptions);
VerifyReport check_table_range_pruning(VerifyOptions opts);
VerifyReport check_table_bound_pruning(VerifyOptions opts);
VerifyReport check_alldiff_range_pruning(VerifyOptions opts);
VerifyReport check_alldiff_bound_pruning(VerifyOptions opts);

// Extra containment suite: smaller interval caps must never out-prune
// larger ones, with the uncapped encoding strongest.
VerifyReport check_hall_cap_monotone(VerifyOptions opts);

// which: 1 2 3 4 5 c2 c3 or all.
std::vector<VerifyReport> run_verify(const std::string& which,
                                     VerifyOptions opts);

}  // namespace encore

#endif
