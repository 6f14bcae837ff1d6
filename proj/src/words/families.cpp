#include <algorithm>
#include <set>

#include "dualramsey/words.hpp"

namespace dr {

bool is_disjoint_family(const DisjointFamily& F) {
  std::set<int> seen;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F[i].empty()) return false;
    for (int x : F[i])
      if (!seen.insert(x).second) return false;
    int lo = *std::min_element(F[i].begin(), F[i].end());
    if (i > 0 && *std::min_element(F[i - 1].begin(), F[i - 1].end()) >= lo) return false;
  }
  return true;
}

DisjointFamily singletons_family(int n) {
  DisjointFamily F;
  for (int i = 0; i < n; ++i) F.push_back({i});
  return F;
}

std::vector<DisjointFamily> ds_enumerate(const DisjointFamily& F, int k, std::uint64_t max_items) {
  if (!is_disjoint_family(F)) fail(Errc::invalid_argument, "F is not a min-increasing disjoint family");
  if (k < 1 || k > static_cast<int>(F.size())) fail(Errc::invalid_argument, "DS_k(F) needs 1 <= k <= |F|");
  const std::size_t m = F.size();
  // label[i] = k means block i is unused.
  std::vector<int> label(m, 0);
  std::vector<DisjointFamily> out;
  while (true) {
    DisjointFamily G(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < m; ++i)
      if (label[i] < k) G[static_cast<std::size_t>(label[i])].insert(G[static_cast<std::size_t>(label[i])].end(), F[i].begin(), F[i].end());
    for (Block& g : G) std::sort(g.begin(), g.end());
    if (is_disjoint_family(G)) {
      if (out.size() >= max_items) fail(Errc::budget_exceeded, "DS_k enumeration exceeded its budget");
      out.push_back(std::move(G));
    }
    std::size_t i = m;
    while (i > 0 && label[i - 1] == k) label[--i] = 0;
    if (i == 0) break;
    ++label[i - 1];
  }
  auto key = [](const DisjointFamily& G) {
    std::vector<int> flat;
    for (const Block& g : G) {
      flat.insert(flat.end(), g.begin(), g.end());
      flat.push_back(-1);
    }
    return flat;
  };
  std::sort(out.begin(), out.end(), [&](const DisjointFamily& a, const DisjointFamily& b) { return key(a) < key(b); });
  return out;
}

bool is_uspace(const USpace& U, int k) {
  if (!U.anchors.tree || U.parts.size() != U.anchors.size()) return false;
  if (!is_complete_skew(U.anchors, k)) return false;
  const Tree& T = *U.anchors.tree;
  std::set<NodeIndex> seen;
  for (std::size_t i = 0; i < U.parts.size(); ++i) {
    NodeIndex t = U.anchors.nodes[i];
    const auto& part = U.parts[i];
    if (!std::is_sorted(part.begin(), part.end()) || !std::binary_search(part.begin(), part.end(), t)) return false;
    for (NodeIndex s : part) {
      if (s >= T.size() || !T.prefix(t, s) || !seen.insert(s).second) return false;
    }
  }
  return true;
}

USpace finest_uspace(const TreePtr& tree) {
  USpace V{full_subtree(tree), {}};
  for (NodeIndex s = 0; s < tree->size(); ++s) V.parts.push_back({s});
  return V;
}

std::vector<std::vector<NodeIndex>> u1_sets(const TreePtr& tree) {
  const Tree& T = *tree;
  std::vector<std::vector<NodeIndex>> out;
  for (NodeIndex t = 0; t < T.size(); ++t) {
    std::vector<NodeIndex> below;
    for (NodeIndex s = t + 1; s < T.size(); ++s)
      if (T.prefix(t, s)) below.push_back(s);
    if (below.size() > 24) fail(Errc::budget_exceeded, "U_1 enumeration is limited to small trees");
    const std::uint64_t subsets = std::uint64_t{1} << below.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::vector<NodeIndex> U{t};
      for (std::size_t j = 0; j < below.size(); ++j)
        if (mask >> j & 1) U.push_back(below[j]);
      out.push_back(std::move(U));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<USpace> uspace_enumerate(const USpace& V, int k, EnumerationBudget budget) {
  const Tree& T = *V.anchors.tree;
  std::vector<USpace> out;
  SkewEnumerator it(V.anchors, SkewPredicate{SkewKind::complete, k}, budget);
  while (auto A = it.next()) {
    // Each V-member outside A is dropped or merged into an anchor strictly below its minimum.
    std::vector<std::size_t> free;
    std::vector<std::vector<int>> options;  // -1 drops, otherwise a position in A
    for (std::size_t i = 0; i < V.anchors.size(); ++i) {
      NodeIndex t = V.anchors.nodes[i];
      if (A->contains(t)) continue;
      free.push_back(i);
      options.push_back({-1});
      for (std::size_t a = 0; a < A->size(); ++a)
        if (T.proper_prefix(A->nodes[a], t)) options.back().push_back(static_cast<int>(a));
    }
    std::vector<std::size_t> pick(free.size(), 0);
    while (true) {
      USpace U{*A, std::vector<std::vector<NodeIndex>>(A->size())};
      for (std::size_t a = 0; a < A->size(); ++a) U.parts[a] = V.parts[static_cast<std::size_t>(V.anchors.position(A->nodes[a]))];
      for (std::size_t j = 0; j < free.size(); ++j) {
        int target = options[j][pick[j]];
        if (target < 0) continue;
        auto& part = U.parts[static_cast<std::size_t>(target)];
        part.insert(part.end(), V.parts[free[j]].begin(), V.parts[free[j]].end());
      }
      for (auto& part : U.parts) std::sort(part.begin(), part.end());
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "U_k enumeration exceeded its budget");
      out.push_back(std::move(U));
      std::size_t j = free.size();
      while (j > 0 && pick[j - 1] + 1 == options[j - 1].size()) pick[--j] = 0;
      if (j == 0) break;
      ++pick[j - 1];
    }
  }
  return out;
}

bool is_usubspace(const USpace& U, const USpace& V) {
  if (!U.anchors.tree || !V.anchors.tree || U.anchors.tree->size() != V.anchors.tree->size()) return false;
  std::vector<int> owner(V.anchors.tree->size(), -1);
  for (std::size_t i = 0; i < V.parts.size(); ++i)
    for (NodeIndex s : V.parts[i]) owner[s] = static_cast<int>(i);
  for (const auto& part : U.parts) {
    std::set<int> used;
    for (NodeIndex s : part) {
      if (owner[s] < 0) return false;
      used.insert(owner[s]);
    }
    std::size_t covered = 0;
    for (int i : used) covered += V.parts[static_cast<std::size_t>(i)].size();
    if (covered != part.size()) return false;
  }
  return true;
}

}  // namespace dr
