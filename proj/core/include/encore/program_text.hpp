#ifndef ENCORE_PROGRAM_TEXT_HPP
#define ENCORE_PROGRAM_TEXT_HPP

#include <string>
#include <string_view>

#include "encore/program.hpp"

namespace encore {

// Plain text ground format, one rule per line:
//   e(v0,2) :- b(v0,2), not b(v0,1).
//   {e(v0,1); e(v0,2)}.
//   :- e(v0,1), e(v1,1).
//   :- 2 {r(v0,1,2); r(v1,1,2); r(v2,1,2)}.
// Facts drop the ":-". Output order follows the rule list, so serialization
// is deterministic.
std::string serialize_program(const Program& p);

struct ProgramParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inverse of serialize_program, up to atom ids (atoms are re-interned in
// order of first appearance). Counter and support serials are taken from the
// text as written.
Program parse_program(std::string_view text);

}  // namespace encore

#endif
