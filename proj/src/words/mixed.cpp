#include <algorithm>

#include "dualramsey/words.hpp"

namespace dr {

namespace {

// Visits every index tuple of a mixed-radix product, first coordinate most significant.
template <class Visit>
void for_each_tuple(const std::vector<std::size_t>& radix, Visit&& visit) {
  for (std::size_t r : radix)
    if (r == 0) return;
  std::vector<std::size_t> pick(radix.size(), 0);
  while (true) {
    visit(pick);
    std::size_t i = radix.size();
    while (i > 0 && pick[i - 1] + 1 == radix[i - 1]) pick[--i] = 0;
    if (i == 0) return;
    ++pick[i - 1];
  }
}

std::uint64_t checked_product(const std::vector<std::size_t>& radix, std::uint64_t cap, const char* what) {
  std::uint64_t total = 1;
  for (std::size_t r : radix) {
    if (r != 0 && total > cap / r) fail(Errc::budget_exceeded, std::string(what) + " exceeded its budget");
    total *= r;
  }
  return total;
}

std::vector<ConstantWord> all_constant_words(const Tree& tree, int alphabet, std::uint64_t cap) {
  std::vector<std::size_t> radix(tree.size(), static_cast<std::size_t>(alphabet));
  checked_product(radix, cap, "constant word enumeration");
  std::vector<ConstantWord> out;
  for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) { out.emplace_back(pick.begin(), pick.end()); });
  return out;
}

void check_extension(const Tree& base, const Tree& extended) {
  if (extended.branching() != base.branching() || extended.depth() != base.depth() + 1)
    fail(Errc::invalid_argument, "branches live in the tree one level deeper than the words");
}

VectorSubtree wildcard_vector(const std::vector<TreeWord>& words) {
  VectorSubtree V;
  for (const TreeWord& f : words) V.parts.push_back(wildcard_tree(f));
  return V;
}

}  // namespace

bool is_up_word(const TreeWord& f, const std::vector<NodeIndex>& branches, const Tree& extended) {
  check_extension(*f.tree, extended);
  int h = 0;
  try {
    h = word_height(f);
  } catch (const Error&) {
    return false;
  }
  std::uint64_t expected = 1;
  for (int i = 0; i < h; ++i) expected *= static_cast<std::uint64_t>(extended.branching());
  if (branches.size() != expected) return false;
  const int n = f.tree->depth();
  std::vector<NodeIndex> nodes = wildcard_tree(f).nodes;  // indices agree between b^{<n} and b^{<n+1}
  for (NodeIndex x : branches) {
    if (x >= extended.size() || extended.length(x) != n) return false;
    nodes.push_back(x);
  }
  auto ext = std::shared_ptr<const Tree>(std::shared_ptr<const Tree>{}, &extended);
  Subtree U(ext, nodes);
  if (U.size() != nodes.size() || !is_complete_skew(U, h + 1)) return false;
  for (NodeIndex x : branches)
    if (height_in(U, x) != h) return false;
  return true;
}

bool is_mixed_word(const MixedWord& F, const std::vector<Role>& roles, const Tree& extended) {
  if (F.words.size() != roles.size() || F.words.empty()) return false;
  std::size_t ups = static_cast<std::size_t>(std::count(roles.begin(), roles.end(), Role::up));
  if (F.branch_sets.size() != ups) return false;
  int k = 0;
  try {
    k = word_height(F.words.front());
    if (!is_vector_complete_skew(wildcard_vector(F.words), k)) return false;
  } catch (const Error&) {
    return false;
  }
  std::size_t u = 0;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == Role::up && !is_up_word(F.words[i], F.branch_sets[u++], extended)) return false;
  return true;
}

std::vector<MixedPoint> mixed_span(const MixedWord& F, const std::vector<Role>& roles, int alphabet, bool restricted) {
  if (F.words.size() != roles.size()) fail(Errc::invalid_argument, "one role per component");
  std::vector<std::vector<ConstantWord>> spans;
  std::vector<Subtree> ws;
  for (const TreeWord& f : F.words) {
    spans.push_back(span(f, alphabet));
    ws.push_back(wildcard_tree(f));
  }
  std::vector<std::size_t> radix;
  for (const auto& s : spans) radix.push_back(s.size());
  for (const auto& X : F.branch_sets) radix.push_back(X.size());
  std::vector<std::size_t> point_components;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == Role::point) {
      point_components.push_back(i);
      radix.push_back(ws[i].size());
    }
  checked_product(radix, std::uint64_t{1} << 28, "mixed span");
  const Tree& tree = *F.words.front().tree;
  std::vector<MixedPoint> out;
  const std::size_t d = F.words.size(), u = F.branch_sets.size();
  for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
    MixedPoint p;
    for (std::size_t i = 0; i < d; ++i) p.words.push_back(spans[i][pick[i]]);
    for (std::size_t j = 0; j < u; ++j) p.branches.push_back(F.branch_sets[j][pick[d + j]]);
    for (std::size_t j = 0; j < point_components.size(); ++j) p.nodes.push_back(ws[point_components[j]].nodes[pick[d + u + j]]);
    if (restricted)
      for (std::size_t j = 1; j < p.nodes.size(); ++j)
        if (tree.length(p.nodes[j - 1]) > tree.length(p.nodes[j])) return;
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<MixedPoint> mixed_points(const TreePtr& tree, const std::vector<Role>& roles, int alphabet, bool restricted,
                                     std::uint64_t max_items) {
  if (roles.empty()) fail(Errc::invalid_argument, "W^D needs d >= 1");
  std::vector<ConstantWord> words = all_constant_words(*tree, alphabet, max_items);
  const int n = tree->depth();
  auto extended = Tree::make(Shape{tree->branching(), n + 1});
  std::vector<std::size_t> radix(roles.size(), words.size());
  for (Role r : roles)
    if (r == Role::up) radix.push_back(extended->level_end(n) - extended->level_begin(n));
  for (Role r : roles)
    if (r == Role::point) radix.push_back(tree->size());
  checked_product(radix, max_items, "W^D enumeration");
  const std::size_t d = roles.size();
  std::size_t ups = static_cast<std::size_t>(std::count(roles.begin(), roles.end(), Role::up));
  std::vector<MixedPoint> out;
  for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
    MixedPoint p;
    for (std::size_t i = 0; i < d; ++i) p.words.push_back(words[pick[i]]);
    for (std::size_t j = 0; j < ups; ++j) p.branches.push_back(extended->level_begin(n) + static_cast<NodeIndex>(pick[d + j]));
    for (std::size_t j = d + ups; j < pick.size(); ++j) p.nodes.push_back(static_cast<NodeIndex>(pick[j]));
    if (restricted)
      for (std::size_t j = 1; j < p.nodes.size(); ++j)
        if (tree->length(p.nodes[j - 1]) > tree->length(p.nodes[j])) return;
    out.push_back(std::move(p));
  });
  return out;
}

namespace {

// Every X making (f, X) an up word: one branch below each digit slot of each maximal node.
std::vector<std::vector<NodeIndex>> branch_sets_for(const TreeWord& f, const Tree& extended, std::uint64_t cap) {
  Subtree ws = wildcard_tree(f);
  const int n = f.tree->depth(), b = extended.branching();
  std::vector<std::vector<NodeIndex>> slots;
  for (NodeIndex t : maximal_nodes(ws)) {
    for (int j = 0; j < b; ++j) {
      if (extended.length(t) + 1 > n) return {};
      NodeIndex c = extended.child(t, j);
      std::vector<NodeIndex> below;
      for (NodeIndex x = extended.level_begin(n); x < extended.level_end(n); ++x)
        if (extended.prefix(c, x)) below.push_back(x);
      slots.push_back(std::move(below));
    }
  }
  std::vector<std::size_t> radix;
  for (const auto& s : slots) radix.push_back(s.size());
  checked_product(radix, cap, "branch set enumeration");
  std::vector<std::vector<NodeIndex>> out;
  for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
    std::vector<NodeIndex> X;
    for (std::size_t i = 0; i < pick.size(); ++i) X.push_back(slots[i][pick[i]]);
    std::sort(X.begin(), X.end());
    if (is_up_word(f, X, extended)) out.push_back(std::move(X));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<MixedWord> mixed_words(const TreePtr& tree, const std::vector<Role>& roles, int alphabet, int dimension,
                                   EnumerationBudget budget) {
  if (roles.empty()) fail(Errc::invalid_argument, "W^D needs d >= 1");
  auto extended = Tree::make(Shape{tree->branching(), tree->depth() + 1});
  std::vector<MixedWord> out;
  for (VectorWord& f : vector_words(tree, static_cast<int>(roles.size()), dimension, alphabet, budget)) {
    std::vector<std::vector<std::vector<NodeIndex>>> choices;
    for (std::size_t i = 0; i < roles.size(); ++i)
      if (roles[i] == Role::up) choices.push_back(branch_sets_for(f[i], *extended, budget.max_items));
    std::vector<std::size_t> radix;
    for (const auto& c : choices) radix.push_back(c.size());
    for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "mixed word enumeration exceeded its budget");
      MixedWord F{f, {}};
      for (std::size_t j = 0; j < pick.size(); ++j) F.branch_sets.push_back(choices[j][pick[j]]);
      out.push_back(std::move(F));
    });
  }
  return out;
}

std::vector<VectorWord> vector_words(const TreePtr& tree, int d, int m, int alphabet, EnumerationBudget budget) {
  if (d < 1) fail(Errc::invalid_argument, "vector words need d >= 1");
  TreeWord full = full_variable_word(tree);
  VectorSubtree carrier{std::vector<Subtree>(static_cast<std::size_t>(d), full_subtree(tree))};
  std::vector<VectorWord> out;
  for (const VectorSubtree& V : enumerate_ct(carrier, m, budget)) {
    std::vector<std::vector<TreeWord>> per;
    for (const Subtree& A : V.parts) {
      per.emplace_back();
      for_each_anchored(full, A.nodes, alphabet, [&](const TreeWord& g) { per.back().push_back(g); });
    }
    std::vector<std::size_t> radix;
    for (const auto& p : per) radix.push_back(p.size());
    for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "vector word enumeration exceeded its budget");
      VectorWord w;
      for (std::size_t i = 0; i < pick.size(); ++i) w.push_back(per[i][pick[i]]);
      out.push_back(std::move(w));
    });
  }
  return out;
}

bool is_vector_word(const VectorWord& f, int m) {
  if (f.empty()) return false;
  try {
    for (const TreeWord& g : f)
      if (word_height(g) != m) return false;
    return is_vector_complete_skew(wildcard_vector(f), m);
  } catch (const Error&) {
    return false;
  }
}

std::vector<VectorWord> vector_subwords(const VectorWord& f, int k, int alphabet, EnumerationBudget budget) {
  if (f.empty()) fail(Errc::invalid_argument, "vector words need d >= 1");
  int h = word_height(f.front());
  if (k < 1 || k > h) fail(Errc::invalid_argument, "vector subwords need 1 <= k <= h(f)");
  std::vector<VectorWord> out;
  if (alphabet == 1) {
    for (VectorWord& g : vector_words(f.front().tree, static_cast<int>(f.size()), k, 1, budget)) {
      bool inside = true;
      for (std::size_t i = 0; i < f.size() && inside; ++i) inside = span_contains(f[i], g[i], 1);
      if (inside) out.push_back(std::move(g));
    }
    return out;
  }
  for (const VectorSubtree& V : enumerate_ct(wildcard_vector(f), k, budget)) {
    std::vector<std::vector<TreeWord>> per;
    for (std::size_t i = 0; i < f.size(); ++i) {
      per.emplace_back();
      for_each_anchored(f[i], V.parts[i].nodes, alphabet, [&](const TreeWord& g) { per.back().push_back(g); });
    }
    std::vector<std::size_t> radix;
    for (const auto& p : per) radix.push_back(p.size());
    for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "vector subword enumeration exceeded its budget");
      VectorWord w;
      for (std::size_t i = 0; i < pick.size(); ++i) w.push_back(per[i][pick[i]]);
      out.push_back(std::move(w));
    });
  }
  return out;
}

}  // namespace dr
