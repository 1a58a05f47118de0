#include "encore/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace encore {

CspInstance gen_php(int pigeons) {
  if (pigeons < 2) throw CspError("need at least two pigeons");
  CspInstance inst;
  for (int i = 0; i < pigeons; ++i)
    inst.variables.push_back(
        {i, "p" + std::to_string(i + 1), Domain::interval(1, pigeons - 1)});
  Constraint all;
  all.kind = ConstraintKind::AllDifferent;
  for (int i = 0; i < pigeons; ++i) all.scope.push_back(i);
  inst.constraints.push_back(std::move(all));
  return inst;
}

CspInstance gen_latin(int n, double fill, uint64_t seed, LatinFill mode) {
  if (n < 1) throw CspError("square order must be positive");
  if (fill < 0.0 || fill > 1.0) throw CspError("fill must be within [0,1]");
  std::mt19937_64 rng(seed);
  CspInstance inst;
  auto cell = [n](int r, int c) { return r * n + c; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      inst.variables.push_back({cell(r, c),
                                "x" + std::to_string(r + 1) + "_" +
                                    std::to_string(c + 1),
                                Domain::interval(1, n)});
  for (int r = 0; r < n; ++r) {
    Constraint row;
    row.kind = ConstraintKind::Permutation;
    for (int c = 0; c < n; ++c) row.scope.push_back(cell(r, c));
    inst.constraints.push_back(std::move(row));
  }
  for (int c = 0; c < n; ++c) {
    Constraint col;
    col.kind = ConstraintKind::Permutation;
    for (int r = 0; r < n; ++r) col.scope.push_back(cell(r, c));
    inst.constraints.push_back(std::move(col));
  }

  int pins = (int)(fill * n * n);
  std::vector<int> order((size_t)(n * n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  if (mode == LatinFill::FromComplete) {
    // Scrambled cyclic square: permute rows, columns and symbols of
    // (r + c) mod n. Stays a Latin square, so every pin set is completable.
    std::vector<int> pr((size_t)n), pc((size_t)n), ps((size_t)n);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::iota(ps.begin(), ps.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    std::shuffle(ps.begin(), ps.end(), rng);
    for (int k = 0; k < pins; ++k) {
      int r = order[(size_t)k] / n, c = order[(size_t)k] % n;
      int value = ps[(size_t)((pr[(size_t)r] + pc[(size_t)c]) % n)] + 1;
      inst.variables[(size_t)cell(r, c)].domain = Domain::interval(value, value);
    }
    return inst;
  }

  // Random pins: value drawn per cell, skipping cells that would clash with
  // an earlier pin in the same row or column.
  std::vector<int> pinned((size_t)(n * n), 0);
  int placed = 0;
  for (int idx : order) {
    if (placed == pins) break;
    int r = idx / n, c = idx % n;
    std::vector<int> candidates((size_t)n);
    std::iota(candidates.begin(), candidates.end(), 1);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    int chosen = 0;
    for (int value : candidates) {
      bool clash = false;
      for (int k = 0; k < n && !clash; ++k)
        clash = pinned[(size_t)cell(r, k)] == value ||
                pinned[(size_t)cell(k, c)] == value;
      if (!clash) {
        chosen = value;
        break;
      }
    }
    if (chosen == 0) continue;
    pinned[(size_t)idx] = chosen;
    inst.variables[(size_t)idx].domain = Domain::interval(chosen, chosen);
    ++placed;
  }
  return inst;
}

CspInstance gen_graceful_double_wheel(int n) {
  if (n < 3) throw CspError("cycles need at least three nodes");
  int nodes = 2 * n + 1;  // hub, inner cycle, outer cycle
  int edges = 4 * n;
  CspInstance inst;
  inst.variables.push_back({0, "hub", Domain::interval(1, edges + 1)});
  for (int i = 0; i < n; ++i)
    inst.variables.push_back({1 + i, "in" + std::to_string(i + 1),
                              Domain::interval(1, edges + 1)});
  for (int i = 0; i < n; ++i)
    inst.variables.push_back({1 + n + i, "out" + std::to_string(i + 1),
                              Domain::interval(1, edges + 1)});

  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < n; ++i) ends.push_back({1 + i, 1 + (i + 1) % n});
  for (int i = 0; i < n; ++i)
    ends.push_back({1 + n + i, 1 + n + (i + 1) % n});
  for (int i = 0; i < n; ++i) ends.push_back({0, 1 + i});
  for (int i = 0; i < n; ++i) ends.push_back({0, 1 + n + i});

  for (int e = 0; e < edges; ++e)
    inst.variables.push_back({nodes + e, "d" + std::to_string(e + 1),
                              Domain::interval(1, edges)});

  Constraint labels;
  labels.kind = ConstraintKind::AllDifferent;
  for (int v = 0; v < nodes; ++v) labels.scope.push_back(v);
  inst.constraints.push_back(std::move(labels));

  Constraint diffs;
  diffs.kind = ConstraintKind::Permutation;
  for (int e = 0; e < edges; ++e) diffs.scope.push_back(nodes + e);
  inst.constraints.push_back(std::move(diffs));

  for (int e = 0; e < edges; ++e) {
    Constraint tie;
    tie.kind = ConstraintKind::Table;
    tie.polarity = TablePolarity::Allowed;
    tie.scope = {ends[(size_t)e].first, ends[(size_t)e].second, nodes + e};
    for (int a = 1; a <= edges + 1; ++a)
      for (int b = 1; b <= edges + 1; ++b)
        if (a != b) tie.tuples.push_back({a, b, std::abs(a - b)});
    inst.constraints.push_back(std::move(tie));
  }
  return inst;
}

}  // namespace encore
