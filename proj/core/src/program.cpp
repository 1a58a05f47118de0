#include "encore/program.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace encore {

AtomId Program::intern(const AtomSym& sym) {
  auto it = index_.find(sym);
  if (it != index_.end()) return it->second;
  AtomId id = (AtomId)atoms_.size();
  atoms_.push_back(sym);
  index_.emplace(sym, id);
  return id;
}

AtomId Program::find(const AtomSym& sym) const {
  auto it = index_.find(sym);
  return it == index_.end() ? -1 : it->second;
}

namespace {

void canonicalize(std::vector<BodyLiteral>& body) {
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
}

}  // namespace

void Program::add_normal(AtomId head, std::vector<BodyLiteral> body) {
  canonicalize(body);
  Rule r;
  r.kind = RuleKind::Normal;
  r.heads = {head};
  r.body = std::move(body);
  rules.push_back(std::move(r));
}

void Program::add_choice(std::vector<AtomId> heads,
                         std::vector<BodyLiteral> body) {
  if (heads.empty()) throw std::logic_error("choice rule without heads");
  canonicalize(body);
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  Rule r;
  r.kind = RuleKind::Choice;
  r.heads = std::move(heads);
  r.body = std::move(body);
  rules.push_back(std::move(r));
}

void Program::add_integrity(std::vector<BodyLiteral> body) {
  if (body.empty()) throw std::logic_error("integrity rule without body");
  canonicalize(body);
  Rule r;
  r.kind = RuleKind::Integrity;
  r.body = std::move(body);
  rules.push_back(std::move(r));
}

bool Program::add_cardinality(int bound, std::vector<BodyLiteral> lits) {
  if (bound <= 0) throw std::logic_error("cardinality bound must be positive");
  canonicalize(lits);
  if (bound > (int)lits.size()) return false;  // vacuous, can never trigger
  Rule r;
  r.kind = RuleKind::CardinalityIntegrity;
  r.bound = bound;
  r.body = std::move(lits);
  rules.push_back(std::move(r));
  return true;
}

bool Program::has_cardinalities() const {
  for (const Rule& r : rules)
    if (r.kind == RuleKind::CardinalityIntegrity) return true;
  return false;
}

int Program::fresh_counter_slot(int width) {
  int slot = next_counter_slot_;
  next_counter_slot_ += width;
  return slot;
}

bool is_tight(const Program& p) {
  if (p.has_cardinalities())
    throw std::logic_error("tightness asks for a cardinality free program");
  // Edges head -> positive body atom; DFS with an explicit stack.
  std::vector<std::vector<AtomId>> succ((size_t)p.atom_count());
  for (const Rule& r : p.rules) {
    if (r.kind == RuleKind::Integrity) continue;
    for (AtomId h : r.heads)
      for (const BodyLiteral& l : r.body)
        if (l.positive) succ[(size_t)h].push_back(l.atom);
  }
  enum : uint8_t { White, Grey, Black };
  std::vector<uint8_t> color((size_t)p.atom_count(), White);
  std::vector<std::pair<AtomId, size_t>> stack;
  for (AtomId root = 0; root < p.atom_count(); ++root) {
    if (color[(size_t)root] != White) continue;
    stack.push_back({root, 0});
    color[(size_t)root] = Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < succ[(size_t)node].size()) {
        AtomId child = succ[(size_t)node][next++];
        if (color[(size_t)child] == Grey) return false;
        if (color[(size_t)child] == White) {
          color[(size_t)child] = Grey;
          stack.push_back({child, 0});
        }
      } else {
        color[(size_t)node] = Black;
        stack.pop_back();
      }
    }
  }
  return true;
}

std::string atom_name(const AtomSym& sym) {
  std::ostringstream os;
  switch (sym.type) {
    case AtomType::Value: os << "e(v" << sym.a << "," << sym.b << ")"; break;
    case AtomType::Range:
      os << "r(v" << sym.a << "," << sym.b << "," << sym.c << ")";
      break;
    case AtomType::Bound: os << "b(v" << sym.a << "," << sym.b << ")"; break;
    case AtomType::Support: os << "sup(" << sym.a << ")"; break;
    case AtomType::Counter:
      os << "cnt(" << sym.a << "," << sym.b << ")";
      break;
    case AtomType::Aux: os << "aux(" << sym.a << ")"; break;
  }
  return os.str();
}

}  // namespace encore
