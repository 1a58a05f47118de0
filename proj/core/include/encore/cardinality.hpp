#ifndef ENCORE_CARDINALITY_HPP
#define ENCORE_CARDINALITY_HPP

#include "encore/program.hpp"

namespace encore {

// Replaces every ":- k {l1; ...; ln}" by a unary counter chain over normal
// rules, linear in n*k:
//   cnt(i,1) :- li.
//   cnt(i,j) :- cnt(i+1,j).
//   cnt(i,j+1) :- li, cnt(i+1,j).
//   :- cnt(1,k).
// cnt(i,j) reads "at least j of the literals from position i on hold". The
// first argument is a program wide literal slot, so chains from different
// cardinalities never share atoms. Schema instances that would reach past
// position n are dropped; cnt(n,j>1) then has no rule and compiles to false.
// Answer sets, restricted to the original atoms, are preserved.
Program translate_cardinality(const Program& p);

}  // namespace encore

#endif
