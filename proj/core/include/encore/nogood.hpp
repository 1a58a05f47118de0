#ifndef ENCORE_NOGOOD_HPP
#define ENCORE_NOGOOD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "encore/program.hpp"

namespace encore {

// Propositions are atoms followed by rule bodies: prop p < num_atoms() is
// atom p, anything above stands for a shared body.
using PropId = int32_t;

// A signed proposition, packed minisat style: 2*prop + truth.
struct Lit {
  int32_t code = 0;

  static Lit make(PropId p, bool truth) { return {p * 2 + (truth ? 1 : 0)}; }
  static Lit t(PropId p) { return make(p, true); }
  static Lit f(PropId p) { return make(p, false); }
  PropId prop() const { return code >> 1; }
  bool truth() const { return code & 1; }
  Lit negated() const { return {code ^ 1}; }

  bool operator==(const Lit& o) const { return code == o.code; }
  bool operator<(const Lit& o) const { return code < o.code; }
};

// A nogood is a set of signed propositions that must not all hold. The store
// keeps literal sets sorted and deduplicated; sets with a complementary pair
// can never be violated and are dropped on add.
class NogoodDb {
 public:
  NogoodDb(int32_t num_atoms, int32_t num_bodies)
      : num_atoms_(num_atoms), num_bodies_(num_bodies) {}

  int32_t num_atoms() const { return num_atoms_; }
  int32_t num_bodies() const { return num_bodies_; }
  int32_t num_props() const { return num_atoms_ + num_bodies_; }
  PropId atom_prop(AtomId a) const { return a; }
  PropId body_prop(int32_t body) const { return num_atoms_ + body; }
  bool is_body_prop(PropId p) const { return p >= num_atoms_; }

  size_t size() const { return offsets_.size(); }
  std::span<const Lit> nogood(size_t i) const {
    size_t begin = offsets_[i];
    size_t end = i + 1 < offsets_.size() ? offsets_[i + 1] : pool_.size();
    return {pool_.data() + begin, end - begin};
  }

  bool add(std::vector<Lit> lits);

  // The canonical literal list of each interned body, for inspection.
  const std::vector<std::vector<BodyLiteral>>& bodies() const {
    return bodies_;
  }
  std::vector<std::vector<BodyLiteral>>& bodies() { return bodies_; }

  std::string dump(size_t i) const;
  std::string dump_lit(Lit l) const;

 private:
  int32_t num_atoms_ = 0;
  int32_t num_bodies_ = 0;
  std::vector<Lit> pool_;
  std::vector<size_t> offsets_;
  std::vector<std::vector<BodyLiteral>> bodies_;
};

// Completion nogoods of a tight, cardinality free program. Every rule body
// gets an equivalence with a body proposition, every non-choice atom an
// equivalence with the disjunction of its bodies. Atoms named in a choice
// head keep the forcing clauses of their normal rules and a single support
// nogood over all their bodies, but are otherwise free. Throws logic_error
// on cardinality rules or a non-tight program ("loop nogoods unsupported").
NogoodDb compile(const Program& p);

}  // namespace encore

#endif
