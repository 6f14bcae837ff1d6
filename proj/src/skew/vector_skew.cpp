#include <algorithm>

#include "dualramsey/skew.hpp"

namespace dr {

namespace {

struct LevelLengths {
  // Per level m: min and max node length, or absent.
  std::vector<int> lo, hi;
};

LevelLengths level_lengths(const Subtree& S) {
  SubtreeLayout lay = layout(S);
  LevelLengths out;
  out.lo.assign(static_cast<std::size_t>(lay.max_height + 1), 1 << 30);
  out.hi.assign(static_cast<std::size_t>(lay.max_height + 1), -1);
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto m = static_cast<std::size_t>(lay.height[i]);
    int len = S.tree->length(S.nodes[i]);
    out.lo[m] = std::min(out.lo[m], len);
    out.hi[m] = std::max(out.hi[m], len);
  }
  return out;
}

// Conditions (ii) and (iii) between component i and a later component j.
bool compatible_pair(const LevelLengths& earlier, const LevelLengths& later, int k) {
  for (int m = 0; m < k; ++m) {
    auto mm = static_cast<std::size_t>(m);
    if (mm < earlier.hi.size() && mm < later.lo.size() && earlier.hi[mm] > later.lo[mm]) return false;
  }
  for (int m = 0; m + 1 < k; ++m) {
    auto mm = static_cast<std::size_t>(m);
    auto up = mm + 1;
    if (mm < earlier.hi.size() && up < later.lo.size() && earlier.hi[mm] >= later.lo[up]) return false;
    if (mm < later.hi.size() && up < earlier.lo.size() && later.hi[mm] >= earlier.lo[up]) return false;
  }
  return true;
}

bool compatible_self(const LevelLengths& part, int k) {
  for (int m = 0; m + 1 < k; ++m) {
    auto mm = static_cast<std::size_t>(m);
    if (mm + 1 < part.lo.size() && part.hi[mm] >= part.lo[mm + 1]) return false;
  }
  return true;
}

}  // namespace

bool is_vector_skew(const VectorSubtree& V, int k) {
  if (V.parts.empty() || k < 1) return false;
  const std::size_t d = V.parts.size();
  for (const Subtree& S : V.parts)
    if (!is_skew(S)) return false;
  bool pivot_found = false;
  for (std::size_t j0 = 0; j0 < d && !pivot_found; ++j0) {
    if (subtree_height(V.parts[j0]) != k) continue;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      if (i < j0) ok = is_complete_skew(V.parts[i], k);
      if (i > j0) ok = k >= 2 && is_complete_skew(V.parts[i], k - 1);
    }
    pivot_found = ok;
  }
  if (!pivot_found) return false;
  std::vector<LevelLengths> lens;
  for (const Subtree& S : V.parts) lens.push_back(level_lengths(S));
  for (std::size_t i = 0; i < d; ++i) {
    if (!compatible_self(lens[i], k)) return false;
    for (std::size_t j = i + 1; j < d; ++j)
      if (!compatible_pair(lens[i], lens[j], k)) return false;
  }
  return true;
}

bool is_vector_complete_skew(const VectorSubtree& V, int k) {
  for (const Subtree& S : V.parts)
    if (!is_complete_skew(S, k)) return false;
  return is_vector_skew(V, k);
}

std::vector<VectorSubtree> enumerate_ct(const VectorSubtree& V, int k, EnumerationBudget budget) {
  if (V.parts.empty()) fail(Errc::invalid_argument, "CT_k needs at least one component");
  const std::size_t d = V.parts.size();
  std::vector<std::vector<Subtree>> options(d);
  std::vector<std::vector<LevelLengths>> option_lens(d);
  for (std::size_t i = 0; i < d; ++i) {
    options[i] = enumerate_skew(V.parts[i], SkewPredicate{SkewKind::complete, k}, budget);
    for (const Subtree& S : options[i]) option_lens[i].push_back(level_lengths(S));
  }
  std::vector<VectorSubtree> out;
  std::vector<std::size_t> pick(d, 0);
  std::uint64_t steps = 0;
  // Depth-first product with pairwise pruning; output order is lexicographic by component.
  std::size_t depth = 0;
  std::vector<std::size_t> cursor(d + 1, 0);
  while (true) {
    if (depth == d) {
      VectorSubtree v;
      for (std::size_t i = 0; i < d; ++i) v.parts.push_back(options[i][pick[i]]);
      out.push_back(std::move(v));
      if (out.size() > budget.max_items) fail(Errc::budget_exceeded, "CT_k enumeration exceeded its item budget");
      --depth;
      continue;
    }
    if (cursor[depth] >= options[depth].size()) {
      cursor[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    std::size_t choice = cursor[depth]++;
    if (++steps > budget.max_steps) fail(Errc::budget_exceeded, "CT_k enumeration exceeded its step budget");
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i) ok = compatible_pair(option_lens[i][pick[i]], option_lens[depth][choice], k);
    if (!ok) continue;
    pick[depth] = choice;
    ++depth;
  }
  return out;
}

}  // namespace dr
