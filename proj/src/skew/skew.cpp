#include "dualramsey/skew.hpp"

#include <algorithm>

namespace dr {

namespace {

// Each node's immediate successors sit in distinct digit branches; returns the branch digits.
bool branches_distinct(const Tree& T, const Subtree& S, const SubtreeLayout& lay, std::size_t i,
                       std::vector<int>& digits) {
  digits.clear();
  NodeIndex s = S.nodes[i];
  for (int c : lay.children[i]) digits.push_back(T.digit(S.nodes[static_cast<std::size_t>(c)], T.length(s)));
  std::sort(digits.begin(), digits.end());
  return std::adjacent_find(digits.begin(), digits.end()) == digits.end();
}

}  // namespace

bool satisfies_interleaving(const Subtree& S, const SubtreeLayout& lay) {
  const Tree& T = *S.tree;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = 0; j < S.size(); ++j) {
      if (i == j) continue;
      NodeIndex s = S.nodes[i], t = S.nodes[j];
      if (lay.height[i] == lay.height[j]) {
        if (T.lex_less(s, t) && T.length(s) > T.length(t)) return false;
      } else if (lay.height[i] < lay.height[j]) {
        if (T.length(s) >= T.length(t)) return false;
      }
    }
  }
  return true;
}

std::optional<SkewWitness> is_skew(const Subtree& S) {
  if (S.empty()) return std::nullopt;
  SubtreeLayout lay = layout(S);
  if (lay.minimum < 0) return std::nullopt;
  if (S.size() == 1) return SkewWitness{0, S.nodes[0], true};
  if (!satisfies_interleaving(S, lay)) return std::nullopt;
  const Tree& T = *S.tree;
  const int b = T.branching();

  std::vector<std::size_t> order(S.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return T.llex_less(S.nodes[x], S.nodes[y]); });

  std::vector<int> digits;
  std::vector<char> full(S.size(), 0), prefix_full(S.size() + 1, 1);
  for (std::size_t i = 0; i < S.size(); ++i) {
    bool distinct = branches_distinct(T, S, lay, i, digits);
    full[i] = distinct && static_cast<int>(digits.size()) == b;
  }
  for (std::size_t r = 0; r < order.size(); ++r) prefix_full[r + 1] = prefix_full[r] && full[order[r]];
  std::vector<char> suffix_leaf(S.size() + 1, 1);
  for (std::size_t r = order.size(); r-- > 0;) suffix_leaf[r] = suffix_leaf[r + 1] && lay.children[order[r]].empty();

  for (std::size_t r = 0; r < order.size(); ++r) {
    if (!prefix_full[r]) break;
    std::size_t i = order[r];
    if (lay.children[i].empty() || !suffix_leaf[r + 1]) continue;
    if (!branches_distinct(T, S, lay, i, digits)) continue;
    // Children occupy exactly the digits 0..i_S.
    bool initial = true;
    for (std::size_t d = 0; d < digits.size(); ++d) initial = initial && digits[d] == static_cast<int>(d);
    if (!initial) continue;
    return SkewWitness{static_cast<int>(digits.size()) - 1, S.nodes[i], false};
  }
  return std::nullopt;
}

bool is_complete_skew(const Subtree& S, int k) {
  if (S.empty() || k < 1) return false;
  SubtreeLayout lay = layout(S);
  if (lay.minimum < 0) return false;
  const Tree& T = *S.tree;
  std::vector<int> digits;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (lay.children[i].empty()) {
      if (lay.height[i] != k - 1) return false;
    } else {
      if (!branches_distinct(T, S, lay, i, digits)) return false;
      if (static_cast<int>(digits.size()) != T.branching()) return false;
    }
  }
  return satisfies_interleaving(S, lay);
}

bool is_complete_skew_via_skew(const Subtree& S, int k) {
  if (S.empty() || k < 1) return false;
  if (!is_skew(S)) return false;
  SubtreeLayout lay = layout(S);
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (lay.children[i].empty()) {
      if (lay.height[i] + 1 != k) return false;
    } else if (static_cast<int>(lay.children[i].size()) != S.tree->branching()) {
      return false;
    }
  }
  return true;
}

bool is_semi_complete(const Subtree& S) {
  if (!is_skew(S)) return false;
  SubtreeLayout lay = layout(S);
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!lay.children[i].empty() && static_cast<int>(lay.children[i].size()) != S.tree->branching()) return false;
  return true;
}

Subtree interior(const Subtree& S) {
  SubtreeLayout lay = layout(S);
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!lay.children[i].empty()) out.push_back(S.nodes[i]);
  return Subtree(S.tree, std::move(out));
}

bool satisfies(const Subtree& S, SkewPredicate predicate) {
  switch (predicate.kind) {
    case SkewKind::skew:
      return is_skew(S).has_value();
    case SkewKind::complete:
      return is_complete_skew(S, predicate.parameter);
    case SkewKind::semi_complete:
      return is_semi_complete(S) && static_cast<int>(interior(S).size()) == predicate.parameter;
  }
  return false;
}

// ---------------------------------------------------------------- enumeration

SkewEnumerator::SkewEnumerator(Subtree carrier, SkewPredicate predicate, EnumerationBudget budget)
    : carrier_(std::move(carrier)), predicate_(predicate), budget_(budget) {
  if (predicate_.kind == SkewKind::complete && predicate_.parameter < 1)
    fail(Errc::invalid_argument, "complete skew enumeration needs k >= 1");
  if (predicate_.kind == SkewKind::semi_complete && predicate_.parameter < 0)
    fail(Errc::invalid_argument, "semi-complete enumeration needs l >= 0");
}

bool SkewEnumerator::admissible(int candidate) const {
  if (chosen_.empty()) return true;
  const Tree& T = *carrier_.tree;
  NodeIndex x = carrier_.nodes[static_cast<std::size_t>(candidate)];
  NodeIndex root_node = carrier_.nodes[static_cast<std::size_t>(chosen_[0])];
  if (!T.prefix(root_node, x)) return false;

  int parent = -1;
  for (int slot = static_cast<int>(chosen_.size()) - 1; slot >= 0; --slot) {
    NodeIndex y = carrier_.nodes[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(slot)])];
    if (T.proper_prefix(y, x) && (parent < 0 || T.length(y) > T.length(carrier_.nodes[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(parent)])])))
      parent = slot;
  }
  int h = heights_[static_cast<std::size_t>(parent)] + 1;
  if (predicate_.kind == SkewKind::complete && h > predicate_.parameter - 1) return false;
  if (child_counts_[static_cast<std::size_t>(parent)] >= T.branching()) return false;
  if (predicate_.kind == SkewKind::semi_complete) {
    int grown = interior_count_ + (child_counts_[static_cast<std::size_t>(parent)] == 0 ? 1 : 0);
    if (grown > predicate_.parameter) return false;
  }
  NodeIndex p = carrier_.nodes[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(parent)])];
  int branch = T.digit(x, T.length(p));
  for (std::size_t slot = 0; slot < chosen_.size(); ++slot) {
    NodeIndex y = carrier_.nodes[static_cast<std::size_t>(chosen_[slot])];
    if (parent_slot_[slot] == parent && T.digit(y, T.length(p)) == branch) return false;
    int hy = heights_[slot];
    if (hy == h) {
      if (T.lex_less(y, x) && T.length(y) > T.length(x)) return false;
      if (T.lex_less(x, y) && T.length(x) > T.length(y)) return false;
    } else if (hy < h) {
      if (T.length(y) >= T.length(x)) return false;
    } else if (T.length(x) >= T.length(y)) {
      return false;
    }
  }
  return true;
}

void SkewEnumerator::push(int candidate) {
  ++steps_;
  if (steps_ > budget_.max_steps) fail(Errc::budget_exceeded, "skew enumeration exceeded its step budget");
  const Tree& T = *carrier_.tree;
  NodeIndex x = carrier_.nodes[static_cast<std::size_t>(candidate)];
  int parent = -1;
  for (int slot = static_cast<int>(chosen_.size()) - 1; slot >= 0; --slot) {
    NodeIndex y = carrier_.nodes[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(slot)])];
    if (T.proper_prefix(y, x) && (parent < 0 || T.length(y) > T.length(carrier_.nodes[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(parent)])])))
      parent = slot;
  }
  chosen_.push_back(candidate);
  parent_slot_.push_back(parent);
  heights_.push_back(parent < 0 ? 0 : heights_[static_cast<std::size_t>(parent)] + 1);
  child_counts_.push_back(0);
  if (parent >= 0) {
    if (child_counts_[static_cast<std::size_t>(parent)] == 0) ++interior_count_;
    ++child_counts_[static_cast<std::size_t>(parent)];
  }
}

void SkewEnumerator::pop() {
  int parent = parent_slot_.back();
  if (parent >= 0) {
    --child_counts_[static_cast<std::size_t>(parent)];
    if (child_counts_[static_cast<std::size_t>(parent)] == 0) --interior_count_;
  }
  chosen_.pop_back();
  parent_slot_.pop_back();
  heights_.pop_back();
  child_counts_.pop_back();
}

bool SkewEnumerator::accept() const {
  std::vector<NodeIndex> nodes;
  nodes.reserve(chosen_.size());
  for (int c : chosen_) nodes.push_back(carrier_.nodes[static_cast<std::size_t>(c)]);
  return satisfies(Subtree(carrier_.tree, std::move(nodes)), predicate_);
}

std::optional<Subtree> SkewEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    stack_.push_back(Frame{0});
  }
  const int size = static_cast<int>(carrier_.size());
  while (!stack_.empty()) {
    Frame& frame = stack_.back();
    while (frame.next_candidate < size && !admissible(frame.next_candidate)) ++frame.next_candidate;
    if (frame.next_candidate >= size) {
      stack_.pop_back();
      if (!chosen_.empty()) pop();
      continue;
    }
    int candidate = frame.next_candidate++;
    push(candidate);
    stack_.push_back(Frame{candidate + 1});
    if (accept()) {
      if (++yielded_ > budget_.max_items) fail(Errc::budget_exceeded, "skew enumeration exceeded its item budget");
      std::vector<NodeIndex> nodes;
      for (int c : chosen_) nodes.push_back(carrier_.nodes[static_cast<std::size_t>(c)]);
      return Subtree(carrier_.tree, std::move(nodes));
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Subtree> enumerate_skew(const Subtree& carrier, SkewPredicate predicate, EnumerationBudget budget) {
  SkewEnumerator it(carrier, predicate, budget);
  std::vector<Subtree> out;
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<Subtree> enumerate_skew(const TreePtr& tree, SkewPredicate predicate, EnumerationBudget budget) {
  return enumerate_skew(full_subtree(tree), predicate, budget);
}

// ---------------------------------------------------------------- isomorphism

std::optional<NodeIndex> follow_path(const Subtree& S, const SubtreeLayout& lay, const Node& path) {
  if (lay.minimum < 0) return std::nullopt;
  const Tree& T = *S.tree;
  int at = lay.minimum;
  for (int d : path) {
    NodeIndex s = S.nodes[static_cast<std::size_t>(at)];
    int found = -1;
    for (int c : lay.children[static_cast<std::size_t>(at)])
      if (T.digit(S.nodes[static_cast<std::size_t>(c)], T.length(s)) == d) found = c;
    if (found < 0) return std::nullopt;
    at = found;
  }
  return S.nodes[static_cast<std::size_t>(at)];
}

SkewIso::SkewIso(const Subtree& S, int k) : target_(S), k_(k) {
  if (!is_complete_skew(S, k)) fail(Errc::invalid_argument, "isomorphism needs a k-complete skew subtree");
  source_ = Tree::make(Shape{S.tree->branching(), k});
  SubtreeLayout lay = layout(S);
  forward_.assign(source_->size(), kNoNode);
  for (NodeIndex u = 0; u < source_->size(); ++u) forward_[u] = *follow_path(S, lay, source_->node(u));
}

NodeIndex SkewIso::inverse(NodeIndex target_node) const {
  for (NodeIndex u = 0; u < forward_.size(); ++u)
    if (forward_[u] == target_node) return u;
  fail(Errc::invalid_argument, "node is not in the isomorphism's image");
}

}  // namespace dr
