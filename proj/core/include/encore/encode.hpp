#ifndef ENCORE_ENCODE_HPP
#define ENCORE_ENCODE_HPP

#include <optional>
#include <set>
#include <stdexcept>

#include "encore/csp.hpp"
#include "encore/engine.hpp"
#include "encore/nogood.hpp"
#include "encore/program.hpp"

namespace encore {

enum class VarEncoding { Direct, Bound, Range, BoundHybrid, RangeHybrid };
enum class ConstraintEncoding { Direct, Support, KSupport, Range, Bound };

struct EncodingConfig {
  VarEncoding var_encoding = VarEncoding::Direct;
  ConstraintEncoding constraint_encoding = ConstraintEncoding::Support;
  int ksupport_k = 2;      // clamped below each constraint's arity
  int hall_cap = 0;        // cap on detected interval length; 0 = no cap
  bool permutation_strengthening = false;
  bool maximal_boxes_only = true;  // conflict boxes for table range/bound
  // Force a particular encoding for table constraints (the graceful
  // labelling model keeps its arithmetic tables direct under every config).
  std::optional<ConstraintEncoding> table_encoding;
};

struct EncodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintSpan {
  size_t first = 0;
  size_t count = 0;
};

struct EncodedInstance {
  CspInstance instance;
  EncodingConfig config;
  Program program;
  std::vector<ConstraintSpan> constraint_rules;  // one span per constraint
};

// Variable ladders. Domains are shifted per variable: index i in [1,d]
// stands for value i + offset, recorded in program.var_info.
void encode_var_direct(Program& p, VarId v, int lo, int d);
void encode_var_bound(Program& p, VarId v, int lo, int d);
void encode_var_range(Program& p, VarId v, int lo, int d);

// Hybrid links tying two ladders of one variable together.
void link_range_direct(Program& p, VarId v);
void link_bound_direct(Program& p, VarId v);
void link_bound_range(Program& p, VarId v);

// Constraint schemas. All of them read current ladder metadata from
// program.var_info and shift values accordingly.
void encode_table_direct(Program& p, const CspInstance&, const Constraint& c);
void encode_table_support(Program& p, const CspInstance&, const Constraint& c);
void encode_table_ksupport(Program& p, const CspInstance&, const Constraint& c,
                           int k);
void encode_table_range(Program& p, const CspInstance&, const Constraint& c,
                        bool maximal_only = true);
void encode_table_bound(Program& p, const CspInstance&, const Constraint& c,
                        bool maximal_only = true);
void encode_alldiff_direct(Program& p, const CspInstance&, const Constraint&);
void encode_alldiff_support(Program& p, const CspInstance&, const Constraint&);
void encode_alldiff_range(Program& p, const CspInstance&, const Constraint&,
                          int hall_cap = 0);
void encode_alldiff_bound(Program& p, const CspInstance&, const Constraint&,
                          int hall_cap = 0);
void encode_permutation(Program& p, const CspInstance&, const Constraint&,
                        const EncodingConfig& config);

EncodedInstance encode_instance(const CspInstance&, const EncodingConfig&);

// Readback. Granularity follows the variable encoding: value ladder when one
// exists, otherwise the bound or range ladder.
CspAssignment extract_csp_solution(const Model& m, const EncodedInstance& enc);
Domain extract_domain(const Engine& e, const EncodedInstance& enc, VarId v);

// Assumption literals for consistency experiments: keep only the listed
// values (value ladder) or the listed interval (range/bound ladders work
// directly, a value ladder falls back to excluding values outside).
std::vector<Lit> restrict_to_values(const EncodedInstance& enc, VarId v,
                                    const std::set<int>& keep);
std::vector<Lit> restrict_to_interval(const EncodedInstance& enc, VarId v,
                                      int lo, int hi);

// One literal set per variable pinning its value in m; adding it as a nogood
// excludes exactly the CSP solution of m, not just the propositional model.
std::vector<Lit> model_blocking_lits(const Model& m,
                                     const EncodedInstance& enc);

// Translates cardinality rules away when present, then compiles.
NogoodDb lower_and_compile(const Program& p);

// Enumerates CSP solutions of an encoded instance by repeated solving with
// blocking nogoods. Throws EncodeError past max_models.
std::vector<CspAssignment> solve_all(const EncodedInstance& enc,
                                     size_t max_models = 1 << 20,
                                     EngineOptions opts = {});

}  // namespace encore

#endif
