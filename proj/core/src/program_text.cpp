#include "encore/program_text.hpp"

#include <cctype>
#include <sstream>

namespace encore {

namespace {

void write_body(std::ostringstream& os, const Program& p,
                const std::vector<BodyLiteral>& body) {
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) os << ", ";
    if (!body[i].positive) os << "not ";
    os << atom_name(p.symbol(body[i].atom));
  }
}

}  // namespace

std::string serialize_program(const Program& p) {
  std::ostringstream os;
  for (const Rule& r : p.rules) {
    switch (r.kind) {
      case RuleKind::Normal:
        os << atom_name(p.symbol(r.heads[0]));
        if (!r.body.empty()) {
          os << " :- ";
          write_body(os, p, r.body);
        }
        break;
      case RuleKind::Choice:
        os << "{";
        for (size_t i = 0; i < r.heads.size(); ++i) {
          if (i) os << "; ";
          os << atom_name(p.symbol(r.heads[i]));
        }
        os << "}";
        if (!r.body.empty()) {
          os << " :- ";
          write_body(os, p, r.body);
        }
        break;
      case RuleKind::Integrity:
        os << ":- ";
        write_body(os, p, r.body);
        break;
      case RuleKind::CardinalityIntegrity:
        os << ":- " << r.bound << " {";
        for (size_t i = 0; i < r.body.size(); ++i) {
          if (i) os << "; ";
          if (!r.body[i].positive) os << "not ";
          os << atom_name(p.symbol(r.body[i].atom));
        }
        os << "}";
        break;
    }
    os << ".\n";
  }
  return os.str();
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  size_t line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw ProgramParseError(os.str());
  }
  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
      ++pos;
  }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  bool eat(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) != w) return false;
    pos += w.size();
    return true;
  }
  int integer() {
    skip_ws();
    size_t start = pos;
    if (peek() == '-') ++pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1))
      fail("expected an integer");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

AtomSym parse_atom(Cursor& c) {
  c.skip_ws();
  size_t start = c.pos;
  while (c.pos < c.text.size() &&
         std::isalpha((unsigned char)c.text[c.pos]))
    ++c.pos;
  std::string_view head = c.text.substr(start, c.pos - start);
  if (!c.eat('(')) c.fail("expected '(' after atom name");
  auto var_index = [&]() {
    c.skip_ws();
    if (c.peek() != 'v') c.fail("expected a variable like v0");
    ++c.pos;
    return c.integer();
  };
  AtomSym sym;
  if (head == "e") {
    int v = var_index();
    if (!c.eat(',')) c.fail("expected ','");
    sym = AtomSym::value(v, c.integer());
  } else if (head == "r") {
    int v = var_index();
    if (!c.eat(',')) c.fail("expected ','");
    int l = c.integer();
    if (!c.eat(',')) c.fail("expected ','");
    sym = AtomSym::range(v, l, c.integer());
  } else if (head == "b") {
    int v = var_index();
    if (!c.eat(',')) c.fail("expected ','");
    sym = AtomSym::bound(v, c.integer());
  } else if (head == "sup") {
    sym = AtomSym::support(c.integer());
  } else if (head == "cnt") {
    int slot = c.integer();
    if (!c.eat(',')) c.fail("expected ','");
    sym = AtomSym::counter(slot, c.integer());
  } else if (head == "aux") {
    sym = AtomSym::aux(c.integer());
  } else {
    c.fail("unknown atom name '" + std::string(head) + "'");
  }
  if (!c.eat(')')) c.fail("expected ')'");
  return sym;
}

BodyLiteral parse_literal(Cursor& c, Program& p) {
  bool positive = !c.eat_word("not ");
  return {p.intern(parse_atom(c)), positive};
}

std::vector<BodyLiteral> parse_body(Cursor& c, Program& p) {
  std::vector<BodyLiteral> body;
  body.push_back(parse_literal(c, p));
  while (c.eat(',')) body.push_back(parse_literal(c, p));
  return body;
}

}  // namespace

Program parse_program(std::string_view text) {
  Program p;
  Cursor c{text};
  while (true) {
    c.skip_ws();
    while (c.peek() == '\n') {
      ++c.pos;
      ++c.line;
      c.skip_ws();
    }
    if (c.at_end()) break;
    if (c.eat_word(":-")) {
      c.skip_ws();
      if (std::isdigit((unsigned char)c.peek())) {
        int bound = c.integer();
        if (!c.eat('{')) c.fail("expected '{' after the bound");
        std::vector<BodyLiteral> lits;
        lits.push_back(parse_literal(c, p));
        while (c.eat(';')) lits.push_back(parse_literal(c, p));
        if (!c.eat('}')) c.fail("expected '}'");
        if (!p.add_cardinality(bound, std::move(lits)))
          c.fail("cardinality bound exceeds the literal count");
      } else {
        p.add_integrity(parse_body(c, p));
      }
    } else if (c.eat('{')) {
      std::vector<AtomId> heads;
      heads.push_back(p.intern(parse_atom(c)));
      while (c.eat(';')) heads.push_back(p.intern(parse_atom(c)));
      if (!c.eat('}')) c.fail("expected '}'");
      std::vector<BodyLiteral> body;
      if (c.eat_word(":-")) body = parse_body(c, p);
      p.add_choice(std::move(heads), std::move(body));
    } else {
      AtomId head = p.intern(parse_atom(c));
      std::vector<BodyLiteral> body;
      if (c.eat_word(":-")) body = parse_body(c, p);
      p.add_normal(head, std::move(body));
    }
    if (!c.eat('.')) c.fail("expected '.' at the end of a rule");
  }
  return p;
}

}  // namespace encore
