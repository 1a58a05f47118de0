#ifndef ENCORE_CSP_JSON_HPP
#define ENCORE_CSP_JSON_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "encore/csp.hpp"

namespace encore {

struct CspParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads an instance from its JSON form:
//   {"variables": [{"id": 0, "name": "x", "lo": 1, "hi": 3}, ...],
//    "constraints": [{"kind": "alldifferent", "scope": [0, 1]},
//                    {"kind": "table", "scope": [0, 1],
//                     "polarity": "allowed", "tuples": [[1, 2], ...]}, ...]}
// Syntax errors report line and column, schema errors name the field.
// The parsed instance is validated; problems raise CspParseError too.
CspInstance parse_instance(std::string_view text);

// Canonical serialization: UTF-8, two space indent, object keys sorted,
// variables ordered by id, table tuples sorted and deduplicated. Structurally
// equal instances serialize to identical bytes. Requires a valid instance.
std::string serialize_instance(const CspInstance& inst);

}  // namespace encore

#endif
