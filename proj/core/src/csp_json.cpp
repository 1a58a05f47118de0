#include "encore/csp_json.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace encore {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw CspParseError(msg); }

// nlohmann reports byte offsets; turn them into line:column for humans.
std::string location_of(std::string_view text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

int get_int(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field)) fail(where + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_number_integer())
    fail(where + ": field '" + field + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const char* field,
                       const std::string& where) {
  if (!j.contains(field)) fail(where + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_string()) fail(where + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

CspInstance parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "JSON syntax error at " << location_of(text, e.byte) << ": "
       << e.what();
    throw CspParseError(os.str());
  }
  if (!root.is_object()) fail("top level value must be an object");
  if (!root.contains("variables") || !root["variables"].is_array())
    fail("missing array field 'variables'");
  if (!root.contains("constraints") || !root["constraints"].is_array())
    fail("missing array field 'constraints'");

  CspInstance inst;
  for (size_t i = 0; i < root["variables"].size(); ++i) {
    const json& jv = root["variables"][i];
    std::string where = "variables[" + std::to_string(i) + "]";
    if (!jv.is_object()) fail(where + ": must be an object");
    CspVariable v;
    v.id = get_int(jv, "id", where);
    v.name = get_string(jv, "name", where);
    int lo = get_int(jv, "lo", where);
    int hi = get_int(jv, "hi", where);
    if (lo > hi) fail(where + ": lo exceeds hi");
    v.domain = Domain::interval(lo, hi);
    inst.variables.push_back(std::move(v));
  }
  for (size_t i = 0; i < root["constraints"].size(); ++i) {
    const json& jc = root["constraints"][i];
    std::string where = "constraints[" + std::to_string(i) + "]";
    if (!jc.is_object()) fail(where + ": must be an object");
    Constraint c;
    std::string kind = get_string(jc, "kind", where);
    if (kind == "alldifferent")
      c.kind = ConstraintKind::AllDifferent;
    else if (kind == "permutation")
      c.kind = ConstraintKind::Permutation;
    else if (kind == "table")
      c.kind = ConstraintKind::Table;
    else
      fail(where + ": unknown kind '" + kind + "'");
    if (!jc.contains("scope") || !jc["scope"].is_array())
      fail(where + ": missing array field 'scope'");
    for (const json& s : jc["scope"]) {
      if (!s.is_number_integer()) fail(where + ": scope entries are ids");
      c.scope.push_back(s.get<int>());
    }
    if (c.kind == ConstraintKind::Table) {
      std::string pol = jc.contains("polarity")
                            ? get_string(jc, "polarity", where)
                            : "allowed";
      if (pol == "allowed")
        c.polarity = TablePolarity::Allowed;
      else if (pol == "forbidden")
        c.polarity = TablePolarity::Forbidden;
      else
        fail(where + ": unknown polarity '" + pol + "'");
      if (!jc.contains("tuples") || !jc["tuples"].is_array())
        fail(where + ": table needs an array field 'tuples'");
      for (const json& jt : jc["tuples"]) {
        if (!jt.is_array()) fail(where + ": tuples must be arrays");
        std::vector<int> t;
        for (const json& x : jt) {
          if (!x.is_number_integer())
            fail(where + ": tuple entries must be integers");
          t.push_back(x.get<int>());
        }
        c.tuples.push_back(std::move(t));
      }
    } else if (jc.contains("tuples") || jc.contains("polarity")) {
      fail(where + ": only tables take 'tuples' or 'polarity'");
    }
    inst.constraints.push_back(std::move(c));
  }

  std::vector<std::string> errs = validate(inst);
  if (!errs.empty()) fail("invalid instance: " + errs.front());
  return inst;
}

std::string serialize_instance(const CspInstance& inst) {
  std::vector<std::string> errs = validate(inst);
  if (!errs.empty()) throw CspError("cannot serialize: " + errs.front());

  json root;
  root["variables"] = json::array();
  for (const CspVariable& v : inst.variables) {
    json jv;
    jv["id"] = v.id;
    jv["name"] = v.name;
    jv["lo"] = v.domain.lo;
    jv["hi"] = v.domain.hi;
    root["variables"].push_back(jv);
  }
  root["constraints"] = json::array();
  for (const Constraint& c : inst.constraints) {
    json jc;
    switch (c.kind) {
      case ConstraintKind::AllDifferent: jc["kind"] = "alldifferent"; break;
      case ConstraintKind::Permutation: jc["kind"] = "permutation"; break;
      case ConstraintKind::Table: jc["kind"] = "table"; break;
    }
    jc["scope"] = c.scope;
    if (c.kind == ConstraintKind::Table) {
      jc["polarity"] =
          c.polarity == TablePolarity::Allowed ? "allowed" : "forbidden";
      auto tuples = c.tuples;
      std::sort(tuples.begin(), tuples.end());
      tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
      jc["tuples"] = tuples;
    }
    root["constraints"].push_back(jc);
  }
  return root.dump(2) + "\n";
}

}  // namespace encore
