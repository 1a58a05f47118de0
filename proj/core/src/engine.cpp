#include "encore/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace encore {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Luby sequence, 1-based: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
int64_t luby(int64_t i) {
  for (int64_t k = 1;; ++k) {
    if (i == (1ll << k) - 1) return 1ll << (k - 1);
    if (i < (1ll << k) - 1) {
      i -= (1ll << (k - 1)) - 1;
      k = 0;
    }
  }
}

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Engine::Engine(const NogoodDb& db, EngineOptions opts) : opts_(opts) {
  num_props_ = db.num_props();
  values_.assign((size_t)num_props_, TruthValue::Unassigned);
  level_of_.assign((size_t)num_props_, 0);
  reason_of_.assign((size_t)num_props_, -1);
  watches_.assign((size_t)num_props_ * 2, {});
  activity_.assign((size_t)num_props_, 0.0);
  saved_phase_.assign((size_t)num_props_, false);
  seen_.assign((size_t)num_props_, 0);
  if (opts_.seed != 1) {
    // A grain of seeded noise so distinct seeds explore distinct tie orders.
    for (PropId p = 0; p < num_props_; ++p)
      activity_[(size_t)p] =
          (double)(splitmix(opts_.seed * 0x10001 + (uint64_t)p) & 0xffff) *
          1e-12;
  }
  heap_pos_.assign((size_t)num_props_, -1);
  for (PropId p = 0; p < num_props_; ++p) heap_insert(p);
  static_count_ = (size_t)-1;  // nothing counts as learned while seeding
  for (size_t i = 0; i < db.size(); ++i) {
    auto ng = db.nogood(i);
    install(std::vector<Lit>(ng.begin(), ng.end()));
  }
  static_count_ = nogoods_.size();
}

std::span<Lit> Engine::lits_of(int64_t id) {
  Span s = nogoods_[(size_t)id];
  return {pool_.data() + s.offset, s.size};
}

std::span<const Lit> Engine::conflict_nogood() const {
  if (conflict_ < 0) return {};
  Span s = nogoods_[(size_t)conflict_];
  return {pool_.data() + s.offset, s.size};
}

int64_t Engine::install(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i)
    if (lits[i].prop() == lits[i - 1].prop()) return -1;  // never violable
  // Watch literals that do not currently hold, so the watch invariant is
  // sound even when nogoods arrive after level 0 assignments.
  size_t free1 = lits.size(), free2 = lits.size();
  for (size_t i = 0; i < lits.size(); ++i) {
    if (!holds(lits[i])) {
      if (free1 == lits.size())
        free1 = i;
      else if (free2 == lits.size()) {
        free2 = i;
        break;
      }
    }
  }
  if (free1 != lits.size()) std::swap(lits[0], lits[free1]);
  if (free2 != lits.size()) {
    if (free2 == 0) free2 = free1;  // original position moved by first swap
    std::swap(lits[1], lits[free2]);
  }
  int64_t id = (int64_t)nogoods_.size();
  nogoods_.push_back({pool_.size(), (uint32_t)lits.size()});
  pool_.insert(pool_.end(), lits.begin(), lits.end());
  if ((size_t)id >= static_count_) ++stats_.learned;
  auto span = lits_of(id);
  if (span.empty()) {
    unsat_ = true;
    return id;
  }
  if (span.size() >= 2) {
    watches_[(size_t)span[0].code].push_back(id);
    watches_[(size_t)span[1].code].push_back(id);
  }
  if (holds(span[0])) {
    // No free literal at all: violated right now.
    if (conflict_ < 0) conflict_ = id;
  } else if (span.size() == 1 || holds(span[1])) {
    // Exactly one free literal: its complement is implied.
    if (values_[(size_t)span[0].prop()] == TruthValue::Unassigned)
      enqueue(span[0].negated(), id);
  }
  return id;
}

void Engine::enqueue(Lit l, int64_t reason) {
  values_[(size_t)l.prop()] = truth_of(l.truth());
  level_of_[(size_t)l.prop()] = level();
  reason_of_[(size_t)l.prop()] = reason;
  trail_.push_back(l);
}

PropagationResult Engine::propagate() {
  if (unsat_) return PropagationResult::Conflict;
  if (conflict_ >= 0) return PropagationResult::Conflict;
  while (qhead_ < trail_.size()) {
    Lit sigma = trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[(size_t)sigma.code];
    size_t out = 0;
    for (size_t wi = 0; wi < ws.size(); ++wi) {
      int64_t id = ws[wi];
      auto lits = lits_of(id);
      if (lits[0] == sigma) std::swap(lits[0], lits[1]);
      Lit other = lits[0];
      TruthValue ov = values_[(size_t)other.prop()];
      if (ov != TruthValue::Unassigned && ov != truth_of(other.truth())) {
        ws[out++] = id;  // complement of the co-watch holds: dormant
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < lits.size(); ++k) {
        if (!holds(lits[k])) {
          std::swap(lits[1], lits[k]);
          watches_[(size_t)lits[1].code].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[out++] = id;
      if (ov == TruthValue::Unassigned) {
        enqueue(other.negated(), id);
      } else {
        conflict_ = id;
        for (++wi; wi < ws.size(); ++wi) ws[out++] = ws[wi];
        ws.resize(out);
        return PropagationResult::Conflict;
      }
    }
    ws.resize(out);
  }
  return PropagationResult::Fixpoint;
}

PropagationResult Engine::assume(std::span<const Lit> assumptions) {
  if (level() != 0)
    throw std::logic_error("assumptions must be made at level 0");
  if (propagate() == PropagationResult::Conflict) return PropagationResult::Conflict;
  for (Lit a : assumptions) {
    if (holds(a)) continue;
    if (values_[(size_t)a.prop()] != TruthValue::Unassigned) {
      unsat_ = true;  // contradicts the level 0 closure: engine is done
      return PropagationResult::Conflict;
    }
    enqueue(a, -1);
    if (propagate() == PropagationResult::Conflict)
      return PropagationResult::Conflict;
  }
  return PropagationResult::Fixpoint;
}

void Engine::decide(Lit l) {
  if (values_[(size_t)l.prop()] != TruthValue::Unassigned)
    throw std::logic_error("decision on an assigned proposition");
  ++stats_.decisions;
  level_marks_.push_back(trail_.size());
  enqueue(l, -1);
}

void Engine::backjump(int target_level) {
  while (level() > target_level) {
    size_t mark = level_marks_.back();
    level_marks_.pop_back();
    for (size_t i = trail_.size(); i-- > mark;) unassign(trail_[i].prop());
    trail_.resize(mark);
  }
  if (qhead_ > trail_.size()) qhead_ = trail_.size();
}

void Engine::unassign(PropId p) {
  saved_phase_[(size_t)p] = values_[(size_t)p] == TruthValue::True;
  values_[(size_t)p] = TruthValue::Unassigned;
  reason_of_[(size_t)p] = -1;
  if (heap_pos_[(size_t)p] < 0) heap_insert(p);
}

Engine::LearnResult Engine::analyze_conflict() {
  if (conflict_ < 0 || level() == 0)
    throw std::logic_error("no analyzable conflict");
  LearnResult out;
  std::vector<PropId> touched;
  int counter = 0;
  size_t idx = trail_.size();
  std::span<Lit> cur = lits_of(conflict_);
  Lit tau{};
  for (;;) {
    for (Lit sigma : cur) {
      PropId p = sigma.prop();
      if (seen_[(size_t)p] || level_of_[(size_t)p] == 0) continue;
      seen_[(size_t)p] = 1;
      touched.push_back(p);
      bump(p);
      if (level_of_[(size_t)p] == level())
        ++counter;
      else
        out.nogood.push_back(sigma);
    }
    while (!seen_[(size_t)trail_[idx - 1].prop()]) --idx;
    tau = trail_[--idx];
    if (--counter == 0) break;
    cur = lits_of(reason_of_[(size_t)tau.prop()]);
  }
  for (Lit sigma : out.nogood) {
    int l = level_of_[(size_t)sigma.prop()];
    if (l > out.backjump_level) out.backjump_level = l;
  }
  out.nogood.push_back(tau);
  for (PropId p : touched) seen_[(size_t)p] = 0;
  bump_amount_ /= opts_.activity_decay;
  if (bump_amount_ > 1e100) rescale_activity();
  return out;
}

void Engine::add_nogood(std::vector<Lit> lits) {
  backjump(0);
  install(std::move(lits));
}

SolveStatus Engine::solve() {
  auto t0 = Clock::now();
  struct TimeGuard {
    EngineStats& stats;
    Clock::time_point t0;
    ~TimeGuard() { stats.time_ms += ms_since(t0); }
  } guard{stats_, t0};

  for (;;) {
    if (propagate() == PropagationResult::Conflict) {
      ++stats_.conflicts;
      if (unsat_ || level() == 0) {
        unsat_ = true;
        return SolveStatus::Unsat;
      }
      LearnResult lr = analyze_conflict();
      conflict_ = -1;
      backjump(lr.backjump_level);
      install(std::move(lr.nogood));
      if (opts_.max_conflicts >= 0 && stats_.conflicts >= opts_.max_conflicts)
        return SolveStatus::Limit;
      if (opts_.max_time_ms >= 0 && (stats_.conflicts & 255) == 0 &&
          ms_since(t0) > (double)opts_.max_time_ms)
        return SolveStatus::Limit;
      if (opts_.use_restarts &&
          stats_.conflicts - conflicts_at_restart_ >=
              luby(restart_count_ + 1) * opts_.restart_base) {
        ++restart_count_;
        ++stats_.restarts;
        conflicts_at_restart_ = stats_.conflicts;
        backjump(0);
      }
    } else {
      if (all_assigned()) return SolveStatus::Sat;
      if (opts_.max_time_ms >= 0 && (stats_.decisions & 63) == 0 &&
          ms_since(t0) > (double)opts_.max_time_ms)
        return SolveStatus::Limit;
      decide(pick_decision());
    }
  }
}

Lit Engine::pick_decision() {
  for (;;) {
    PropId p = heap_pop();
    if (values_[(size_t)p] == TruthValue::Unassigned)
      return Lit::make(p, saved_phase_[(size_t)p]);
  }
}

void Engine::bump(PropId p) {
  activity_[(size_t)p] += bump_amount_;
  if (activity_[(size_t)p] > 1e100) rescale_activity();
  if (heap_pos_[(size_t)p] >= 0) heap_sift_up((size_t)heap_pos_[(size_t)p]);
}

void Engine::rescale_activity() {
  for (double& a : activity_) a *= 1e-100;
  bump_amount_ *= 1e-100;
  if (bump_amount_ < 1e-100) bump_amount_ = 1.0;
}

bool Engine::heap_less(PropId a, PropId b) const {
  if (activity_[(size_t)a] != activity_[(size_t)b])
    return activity_[(size_t)a] > activity_[(size_t)b];
  return a < b;
}

void Engine::heap_insert(PropId p) {
  heap_pos_[(size_t)p] = (int32_t)heap_.size();
  heap_.push_back(p);
  heap_sift_up(heap_.size() - 1);
}

void Engine::heap_sift_up(size_t i) {
  PropId p = heap_[i];
  while (i > 0) {
    size_t parent = (i - 1) / 2;
    if (!heap_less(p, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[(size_t)heap_[i]] = (int32_t)i;
    i = parent;
  }
  heap_[i] = p;
  heap_pos_[(size_t)p] = (int32_t)i;
}

void Engine::heap_sift_down(size_t i) {
  PropId p = heap_[i];
  for (;;) {
    size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(heap_[child], p)) break;
    heap_[i] = heap_[child];
    heap_pos_[(size_t)heap_[i]] = (int32_t)i;
    i = child;
  }
  heap_[i] = p;
  heap_pos_[(size_t)p] = (int32_t)i;
}

PropId Engine::heap_pop() {
  if (heap_.empty()) throw std::logic_error("decision heap is empty");
  PropId top = heap_[0];
  heap_pos_[(size_t)top] = -1;
  PropId last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[(size_t)last] = 0;
    heap_sift_down(0);
  }
  return top;
}

}  // namespace encore
