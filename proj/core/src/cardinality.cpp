#include "encore/cardinality.hpp"

namespace encore {

Program translate_cardinality(const Program& p) {
  Program out = p;
  std::vector<Rule> rules = std::move(out.rules);
  out.rules.clear();
  for (Rule& r : rules) {
    if (r.kind != RuleKind::CardinalityIntegrity) {
      out.rules.push_back(std::move(r));
      continue;
    }
    const int n = (int)r.body.size();
    const int k = r.bound;
    const int slot = out.fresh_counter_slot(n);
    auto cnt = [&](int i, int j) {
      return out.intern(AtomSym::counter(slot + i - 1, j));
    };
    for (int i = 1; i <= n; ++i)
      out.add_normal(cnt(i, 1), {r.body[(size_t)i - 1]});
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j <= k; ++j)
        out.add_normal(cnt(i, j), {{cnt(i + 1, j), true}});
      for (int j = 1; j < k; ++j)
        out.add_normal(cnt(i, j + 1),
                       {r.body[(size_t)i - 1], {cnt(i + 1, j), true}});
    }
    out.add_integrity({{cnt(1, k), true}});
  }
  return out;
}

}  // namespace encore
