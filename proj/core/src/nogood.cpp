#include "encore/nogood.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace encore {

bool NogoodDb::add(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i)
    if (lits[i].prop() == lits[i - 1].prop()) return false;  // tautology
  offsets_.push_back(pool_.size());
  pool_.insert(pool_.end(), lits.begin(), lits.end());
  return true;
}

std::string NogoodDb::dump_lit(Lit l) const {
  std::ostringstream os;
  os << (l.truth() ? "T " : "F ");
  if (is_body_prop(l.prop()))
    os << "body(" << l.prop() - num_atoms_ << ")";
  else
    os << "a(" << l.prop() << ")";
  return os.str();
}

std::string NogoodDb::dump(size_t i) const {
  std::ostringstream os;
  os << "{";
  auto ng = nogood(i);
  for (size_t k = 0; k < ng.size(); ++k) {
    if (k) os << ", ";
    os << dump_lit(ng[k]);
  }
  os << "}";
  return os.str();
}

namespace {

struct BodyKeyHash {
  size_t operator()(const std::vector<BodyLiteral>& body) const {
    size_t h = 1469598103934665603ull;
    for (const BodyLiteral& l : body) {
      h = (h ^ (size_t)(l.atom * 2 + l.positive)) * 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

NogoodDb compile(const Program& p) {
  if (p.has_cardinalities())
    throw std::logic_error("cardinality rules must be lowered before nogoods");
  if (!is_tight(p)) throw std::logic_error("loop nogoods unsupported");

  // Intern bodies. Builders canonicalize, but rules can be pushed raw.
  std::unordered_map<std::vector<BodyLiteral>, int32_t, BodyKeyHash> body_ids;
  std::vector<std::vector<BodyLiteral>> bodies;
  std::vector<int32_t> rule_body((size_t)p.rules.size(), -1);
  for (size_t ri = 0; ri < p.rules.size(); ++ri) {
    std::vector<BodyLiteral> key = p.rules[ri].body;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto it = body_ids.find(key);
    if (it == body_ids.end()) {
      it = body_ids.emplace(key, (int32_t)bodies.size()).first;
      bodies.push_back(key);
    }
    rule_body[ri] = it->second;
  }

  NogoodDb db(p.atom_count(), (int32_t)bodies.size());
  db.bodies() = bodies;

  // Body equivalences: the body proposition holds exactly when every literal
  // of the body does.
  for (int32_t bi = 0; bi < (int32_t)bodies.size(); ++bi) {
    Lit beta_t = Lit::t(db.body_prop(bi));
    Lit beta_f = Lit::f(db.body_prop(bi));
    std::vector<Lit> big;
    big.reserve(bodies[(size_t)bi].size() + 1);
    for (const BodyLiteral& l : bodies[(size_t)bi]) {
      Lit sigma = Lit::make(db.atom_prop(l.atom), l.positive);
      big.push_back(sigma);
      db.add({sigma.negated(), beta_t});
    }
    big.push_back(beta_f);
    db.add(std::move(big));
  }

  // Gather defining bodies per atom, keeping first-seen order.
  int32_t natoms = p.atom_count();
  std::vector<std::vector<int32_t>> normal_bodies((size_t)natoms);
  std::vector<std::vector<int32_t>> choice_bodies((size_t)natoms);
  std::vector<bool> in_choice((size_t)natoms, false);
  auto push_unique = [](std::vector<int32_t>& v, int32_t x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  };
  for (size_t ri = 0; ri < p.rules.size(); ++ri) {
    const Rule& r = p.rules[ri];
    if (r.kind == RuleKind::Normal) {
      push_unique(normal_bodies[(size_t)r.heads[0]], rule_body[ri]);
    } else if (r.kind == RuleKind::Choice) {
      for (AtomId h : r.heads) {
        in_choice[(size_t)h] = true;
        push_unique(choice_bodies[(size_t)h], rule_body[ri]);
      }
    } else {
      db.add({Lit::t(db.body_prop(rule_body[ri]))});
    }
  }

  for (AtomId a = 0; a < natoms; ++a) {
    Lit at = Lit::t(db.atom_prop(a));
    Lit af = Lit::f(db.atom_prop(a));
    // A true normal body forces its head, whether or not the head is also
    // subject to a choice.
    for (int32_t bi : normal_bodies[(size_t)a])
      db.add({Lit::t(db.body_prop(bi)), af});
    // Support: a true atom needs some body to hold. Choice atoms count their
    // choice bodies as support but are never forced by them.
    std::vector<Lit> support{at};
    for (int32_t bi : normal_bodies[(size_t)a])
      support.push_back(Lit::f(db.body_prop(bi)));
    if (in_choice[(size_t)a])
      for (int32_t bi : choice_bodies[(size_t)a])
        support.push_back(Lit::f(db.body_prop(bi)));
    db.add(std::move(support));
  }
  return db;
}

}  // namespace encore
