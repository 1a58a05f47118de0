#ifndef ENCORE_ENGINE_HPP
#define ENCORE_ENGINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "encore/nogood.hpp"

namespace encore {

enum class TruthValue : int8_t { Unassigned, False, True };

inline TruthValue truth_of(bool b) {
  return b ? TruthValue::True : TruthValue::False;
}

enum class PropagationResult { Fixpoint, Conflict };
enum class SolveStatus { Sat, Unsat, Limit };

struct EngineOptions {
  uint64_t seed = 1;
  int64_t max_conflicts = -1;  // < 0: unlimited
  int64_t max_time_ms = -1;    // < 0: unlimited
  bool use_restarts = true;    // Luby schedule
  int64_t restart_base = 64;
  double activity_decay = 0.95;
};

struct EngineStats {
  int64_t decisions = 0;
  int64_t conflicts = 0;
  int64_t propagations = 0;  // trail literals consumed by the propagator
  int64_t restarts = 0;
  int64_t learned = 0;
  double time_ms = 0.0;
};

struct Model {
  std::vector<TruthValue> values;
  bool holds(PropId p) const {
    return values[(size_t)p] == TruthValue::True;
  }
};

// Conflict driven search over a nogood store: two watched literals per
// nogood, first unique implication point learning, phase saving, an activity
// order decaying by a fixed factor with ties broken towards the smallest
// proposition, and Luby restarts. Runs are deterministic for a fixed seed.
// Learned nogoods are kept forever.
//
// The engine snapshots the store at construction; later changes to the db
// are not seen. Assumptions live at decision level 0 and stay in force for
// the lifetime of the engine (learned nogoods may depend on them).
class Engine {
 public:
  explicit Engine(const NogoodDb& db, EngineOptions opts = {});

  // Asserts that each literal holds, at level 0. Returns Conflict when the
  // assumptions contradict the store or each other; this is an outcome, not
  // an error. Propagates to fixpoint on success.
  PropagationResult assume(std::span<const Lit> assumptions);

  PropagationResult propagate();

  // Starts a new decision level and asserts l. The proposition must be
  // unassigned.
  void decide(Lit l);
  void backjump(int target_level);

  struct LearnResult {
    std::vector<Lit> nogood;
    int backjump_level = 0;
  };
  // 1UIP analysis of the pending conflict (level > 0 required). Does not
  // change the assignment; solve() applies the result itself.
  LearnResult analyze_conflict();

  SolveStatus solve();

  // Installs an extra nogood (e.g. to exclude a found model) and rewinds to
  // level 0 so solving can resume.
  void add_nogood(std::vector<Lit> lits);

  TruthValue value(PropId p) const { return values_[(size_t)p]; }
  bool holds(Lit l) const {
    return values_[(size_t)l.prop()] == truth_of(l.truth());
  }
  int level() const { return (int)level_marks_.size(); }
  bool all_assigned() const { return trail_.size() == (size_t)num_props_; }
  const std::vector<Lit>& trail() const { return trail_; }
  bool has_pending_conflict() const { return conflict_ >= 0 || unsat_; }
  std::span<const Lit> conflict_nogood() const;

  Model model() const { return Model{values_}; }
  const EngineStats& stats() const { return stats_; }
  const EngineOptions& options() const { return opts_; }

 private:
  struct Span {
    size_t offset = 0;
    uint32_t size = 0;
  };

  int64_t install(std::vector<Lit> lits);  // returns nogood id
  void enqueue(Lit l, int64_t reason);
  void unassign(PropId p);
  void bump(PropId p);
  void rescale_activity();
  void heap_insert(PropId p);
  void heap_sift_up(size_t i);
  void heap_sift_down(size_t i);
  PropId heap_pop();
  bool heap_less(PropId a, PropId b) const;
  Lit pick_decision();
  std::span<Lit> lits_of(int64_t id);

  int32_t num_props_ = 0;
  std::vector<Lit> pool_;
  std::vector<Span> nogoods_;
  size_t static_count_ = 0;

  std::vector<std::vector<int64_t>> watches_;  // by literal code
  std::vector<TruthValue> values_;
  std::vector<int> level_of_;
  std::vector<int64_t> reason_of_;  // nogood id, or -1 for decisions/units
  std::vector<Lit> trail_;
  std::vector<size_t> level_marks_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  std::vector<bool> saved_phase_;
  std::vector<PropId> heap_;
  std::vector<int32_t> heap_pos_;  // -1 when absent
  double bump_amount_ = 1.0;

  int64_t conflict_ = -1;
  bool unsat_ = false;
  std::vector<char> seen_;

  EngineOptions opts_;
  EngineStats stats_;
  int64_t restart_count_ = 0;
  int64_t conflicts_at_restart_ = 0;
};

}  // namespace encore

#endif
