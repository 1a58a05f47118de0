#ifndef ENCORE_GENERATORS_HPP
#define ENCORE_GENERATORS_HPP

#include <cstdint>

#include "encore/csp.hpp"

namespace encore {

// n pigeons into n-1 holes, one all-different over the pigeons. Unsolvable
// by construction; n >= 2.
CspInstance gen_php(int pigeons);

enum class LatinFill {
  FromComplete,  // pin cells of a scrambled cyclic square (always solvable)
  Random,        // pin random values, dodging row/column duplicates
};

// n x n Latin square completion: one permutation per row and per column,
// with floor(fill * n * n) preassigned cells as singleton domains.
CspInstance gen_latin(int n, double fill, uint64_t seed, LatinFill mode);

// Graceful labelling of the double wheel: two n-cycles plus a hub joined to
// every cycle node. Node labels are all-different in [1, 4n+1], edge labels
// a permutation of [1, 4n], and one allowed table per edge ties each edge
// label to the absolute difference of its endpoint labels. n >= 3.
CspInstance gen_graceful_double_wheel(int n);

}  // namespace encore

#endif
