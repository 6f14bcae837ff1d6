#include <algorithm>
#include <tuple>

#include "dualramsey/words.hpp"

namespace dr {

bool Signature::operator<(const Signature& other) const {
  return std::tie(pivot, nodes, trace) < std::tie(other.pivot, other.nodes, other.trace);
}

bool is_semi_pair(const SemiPair& p, int l) {
  if (!p.S.tree || !p.g.tree || p.S.tree.get() != p.g.tree.get()) return false;
  if (!is_semi_complete(p.S) || static_cast<int>(interior(p.S).size()) != l) return false;
  Subtree ws;
  try {
    ws = wildcard_tree(p.g);
  } catch (const Error&) {
    return false;
  }
  if (l == 0) return ws.empty();
  return ws == interior(p.S);
}

namespace {

// Pairs (S, g) ≤ f for one semi-complete S.
void pairs_for(const Subtree& S, const TreeWord& f, int l, int alphabet, const TreeWord& full,
               const std::function<void(SemiPair)>& emit) {
  std::vector<NodeIndex> anchors = l == 0 ? std::vector<NodeIndex>{} : interior(S).nodes;
  if (alphabet == 1) {
    // Spans are single points; containment has to be decided by filtering all candidates.
    for_each_anchored(full, anchors, 1, [&](const TreeWord& g) {
      if (span_contains(f, g, 1)) emit(SemiPair{S, g});
    });
    return;
  }
  for_each_anchored(f, anchors, alphabet, [&](const TreeWord& g) { emit(SemiPair{S, g}); });
}

}  // namespace

std::vector<SemiPair> semi_pairs(const TreeWord& f, int l, int alphabet, EnumerationBudget budget) {
  if (l < 0) fail(Errc::invalid_argument, "W*_{v,l} needs l >= 0");
  Subtree ws = wildcard_tree(f);
  TreeWord full = full_variable_word(f.tree);
  std::vector<SemiPair> out;
  auto emit = [&](SemiPair p) {
    if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "semi-complete pair enumeration exceeded its budget");
    out.push_back(std::move(p));
  };
  SkewEnumerator it(ws, SkewPredicate{SkewKind::semi_complete, l}, budget);
  while (auto S = it.next()) pairs_for(*S, f, l, alphabet, full, emit);
  return out;
}

std::vector<SemiPair> all_semi_pairs(const TreePtr& tree, int l, int alphabet, EnumerationBudget budget) {
  return semi_pairs(full_variable_word(tree), l, alphabet, budget);
}

Signature signature(const SemiPair& p) {
  const Tree& T = *p.S.tree;
  Subtree inner = interior(p.S);
  if (inner.empty()) fail(Errc::invalid_argument, "signatures need l >= 1");
  NodeIndex pivot = inner.nodes.front();
  for (NodeIndex s : inner.nodes)
    if (T.llex_less(pivot, s)) pivot = s;
  Signature sig;
  sig.pivot = pivot;
  const NodeIndex bound = T.llex_rank(pivot);
  auto in_d = [&](NodeIndex t) { return T.llex_rank(t) < bound; };
  for (NodeIndex t : T.by_llex()) {
    if (!in_d(t)) break;
    sig.trace.emplace_back(t, p.g.entries[t]);
  }
  std::sort(sig.trace.begin(), sig.trace.end());
  sig.nodes = inner.nodes;
  for (NodeIndex t : p.S.nodes) {
    if (inner.contains(t) || T.prefix(pivot, t)) continue;
    // Shortest ancestor-or-self of t outside D; absent only when t itself lies in D.
    for (int len = 0; len <= T.length(t); ++len) {
      NodeIndex a = T.ancestor(t, len);
      if (!in_d(a)) {
        sig.nodes.push_back(a);
        break;
      }
    }
  }
  std::sort(sig.nodes.begin(), sig.nodes.end());
  sig.nodes.erase(std::unique(sig.nodes.begin(), sig.nodes.end()), sig.nodes.end());
  return sig;
}

std::vector<Signature> observable_signatures(const TreeWord& f, int l, int alphabet, EnumerationBudget budget) {
  if (l < 1) fail(Errc::invalid_argument, "signatures need l >= 1");
  std::vector<Signature> out;
  for (const SemiPair& p : semi_pairs(f, l, alphabet, budget)) out.push_back(signature(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SemiPair> signature_class(const Signature& sig, const TreeWord& f, int l, int alphabet, EnumerationBudget budget) {
  std::vector<SemiPair> out;
  for (SemiPair& p : semi_pairs(f, l, alphabet, budget))
    if (signature(p) == sig) out.push_back(std::move(p));
  return out;
}

bool in_anchored_family(const TreeWord& candidate, NodeIndex t0, const TreeWord& f, int m, int alphabet) {
  Subtree ws = wildcard_tree(f);
  if (!ws.contains(t0)) fail(Errc::invalid_argument, "t0 must lie in ws(f)");
  int h = 0;
  try {
    h = word_height(candidate);
  } catch (const Error&) {
    return false;
  }
  if (h != m || !span_contains(f, candidate, alphabet)) return false;
  Subtree kept = wildcard_tree(candidate);
  const Tree& T = *f.tree;
  for (NodeIndex t : ws.nodes)
    if (T.llex_rank(t) <= T.llex_rank(t0) && !kept.contains(t)) return false;
  return true;
}

}  // namespace dr
