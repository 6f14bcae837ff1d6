#include <algorithm>

#include "dualramsey/words.hpp"

namespace dr {

TreeWord full_variable_word(const TreePtr& tree) {
  TreeWord f{tree, std::vector<Entry>(tree->size())};
  for (NodeIndex s = 0; s < tree->size(); ++s) f.entries[s] = variable_entry(s);
  return f;
}

TreeWord constant_tree_word(const TreePtr& tree, const ConstantWord& letters) {
  if (letters.size() != tree->size()) fail(Errc::invalid_argument, "constant word length does not match the tree");
  return TreeWord{tree, letters};
}

Subtree wildcard_tree(const TreeWord& f) {
  const Tree& T = *f.tree;
  if (f.entries.size() != T.size()) fail(Errc::invalid_argument, "word length does not match its tree");
  std::vector<NodeIndex> anchors;
  for (NodeIndex s = 0; s < T.size(); ++s) {
    Entry e = f.entries[s];
    if (!is_variable(e)) continue;
    NodeIndex t = variable_anchor(e);
    if (t >= T.size() || !T.prefix(t, s) || f.entries[t] != e)
      fail(Errc::invalid_argument, "variable at " + T.format(s) + " does not have its anchor as ⊑-minimum");
    if (t == s) anchors.push_back(t);
  }
  return Subtree(f.tree, std::move(anchors));
}

bool is_valid_word(const TreeWord& f, int alphabet, WordKind kind, int parameter) {
  if (!f.tree || f.entries.size() != f.tree->size()) return false;
  for (Entry e : f.entries)
    if (!is_variable(e) && e >= alphabet) return false;
  Subtree ws;
  try {
    ws = wildcard_tree(f);
  } catch (const Error&) {
    return false;
  }
  switch (kind) {
    case WordKind::complete:
      return is_complete_skew(ws, parameter);
    case WordKind::general_skew:
      return static_cast<int>(ws.size()) == parameter && (parameter == 0 || is_skew(ws).has_value());
    case WordKind::bare:
      return ws.empty();
  }
  return false;
}

int word_height(const TreeWord& f) {
  Subtree ws = wildcard_tree(f);
  int k = subtree_height(ws);
  if (ws.empty() || !is_complete_skew(ws, k)) fail(Errc::invalid_argument, "wildcard tree is not complete skew");
  return k;
}

ConstantWord substitute(const TreeWord& f, const std::vector<Entry>& assignment) {
  Subtree ws = wildcard_tree(f);
  if (assignment.size() != ws.size()) fail(Errc::invalid_argument, "assignment must cover every wildcard anchor");
  ConstantWord out(f.entries.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    Entry e = f.entries[s];
    out[s] = is_variable(e) ? assignment[static_cast<std::size_t>(ws.position(variable_anchor(e)))] : e;
  }
  return out;
}

std::uint64_t span_size(const TreeWord& f, int alphabet) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < wildcard_tree(f).size(); ++i) {
    if (out > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(alphabet)) fail(Errc::overflow, "span too large");
    out *= static_cast<std::uint64_t>(alphabet);
  }
  return out;
}

std::vector<ConstantWord> span(const TreeWord& f, int alphabet) {
  Subtree ws = wildcard_tree(f);
  std::uint64_t total = span_size(f, alphabet);
  if (total > (std::uint64_t{1} << 26)) fail(Errc::budget_exceeded, "span too large to materialize");
  std::vector<int> slot(f.entries.size(), -1);
  for (std::size_t s = 0; s < f.entries.size(); ++s)
    if (is_variable(f.entries[s])) slot[s] = ws.position(variable_anchor(f.entries[s]));
  std::vector<ConstantWord> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Entry> assignment(ws.size(), 0);
  while (true) {
    ConstantWord w(f.entries.size());
    for (std::size_t s = 0; s < w.size(); ++s) w[s] = slot[s] >= 0 ? assignment[static_cast<std::size_t>(slot[s])] : f.entries[s];
    out.push_back(std::move(w));
    int i = static_cast<int>(assignment.size()) - 1;
    while (i >= 0 && assignment[static_cast<std::size_t>(i)] == alphabet - 1) assignment[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++assignment[static_cast<std::size_t>(i)];
  }
  return out;
}

bool span_contains(const TreeWord& f, const TreeWord& g, int alphabet) {
  if (f.entries.size() != g.entries.size()) return false;
  if (alphabet == 1) {
    for (std::size_t s = 0; s < f.entries.size(); ++s)
      if ((is_variable(f.entries[s]) ? 0 : f.entries[s]) != (is_variable(g.entries[s]) ? 0 : g.entries[s])) return false;
    return true;
  }
  // g agrees with f on f's letters and is constant on each wildcard set of f.
  std::vector<Entry> seen(f.entries.size(), 0);
  std::vector<char> has(f.entries.size(), 0);
  for (std::size_t s = 0; s < f.entries.size(); ++s) {
    Entry e = f.entries[s];
    if (!is_variable(e)) {
      if (g.entries[s] != e) return false;
      continue;
    }
    NodeIndex t = variable_anchor(e);
    if (!has[t]) {
      has[t] = 1;
      seen[t] = g.entries[s];
    } else if (seen[t] != g.entries[s]) {
      return false;
    }
  }
  return true;
}

bool word_less(const TreeWord& f, const TreeWord& g, int alphabet) {
  Subtree a = wildcard_tree(f), b = wildcard_tree(g);
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  auto key = [alphabet](Entry e) -> std::int64_t {
    return is_variable(e) ? alphabet + static_cast<std::int64_t>(variable_anchor(e)) : e;
  };
  for (std::size_t s = 0; s < f.entries.size(); ++s)
    if (f.entries[s] != g.entries[s]) return key(f.entries[s]) < key(g.entries[s]);
  return false;
}

namespace {

struct AnchoredPlan {
  std::vector<NodeIndex> units;                 // ws(f), ascending
  std::vector<std::vector<NodeIndex>> members;  // wildcard set positions per unit
  std::vector<std::vector<Entry>> options;      // choices per unit, in canonical order
};

AnchoredPlan plan_anchored(const TreeWord& f, const std::vector<NodeIndex>& anchors, int alphabet) {
  const Tree& T = *f.tree;
  Subtree ws = wildcard_tree(f);
  AnchoredPlan plan;
  plan.units = ws.nodes;
  plan.members.assign(ws.size(), {});
  for (NodeIndex s = 0; s < T.size(); ++s)
    if (is_variable(f.entries[s])) plan.members[static_cast<std::size_t>(ws.position(variable_anchor(f.entries[s])))].push_back(s);
  for (NodeIndex a : anchors)
    if (!ws.contains(a)) fail(Errc::invalid_argument, "anchor " + T.format(a) + " is not in ws(f)");
  plan.options.resize(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    NodeIndex t = ws.nodes[i];
    if (std::binary_search(anchors.begin(), anchors.end(), t)) {
      plan.options[i] = {variable_entry(t)};
      continue;
    }
    for (Entry letter = 0; letter < alphabet; ++letter) plan.options[i].push_back(letter);
    for (NodeIndex a : anchors)
      if (T.proper_prefix(a, t)) plan.options[i].push_back(variable_entry(a));
  }
  return plan;
}

}  // namespace

void for_each_anchored(const TreeWord& f, const std::vector<NodeIndex>& anchors, int alphabet,
                       const std::function<void(const TreeWord&)>& visit) {
  AnchoredPlan plan = plan_anchored(f, anchors, alphabet);
  TreeWord g = f;
  const std::size_t units = plan.units.size();
  std::vector<std::size_t> choice(units, 0);
  auto apply = [&](std::size_t i) {
    Entry e = plan.options[i][choice[i]];
    for (NodeIndex s : plan.members[i]) g.entries[s] = e;
  };
  if (units == 0) {
    visit(g);
    return;
  }
  for (std::size_t i = 0; i < units; ++i) apply(i);
  while (true) {
    visit(g);
    std::size_t i = units;
    while (i > 0 && choice[i - 1] + 1 == plan.options[i - 1].size()) {
      choice[i - 1] = 0;
      apply(i - 1);
      --i;
    }
    if (i == 0) break;
    ++choice[i - 1];
    apply(i - 1);
  }
}

std::uint64_t count_anchored(const TreeWord& f, const std::vector<NodeIndex>& anchors, int alphabet) {
  AnchoredPlan plan = plan_anchored(f, anchors, alphabet);
  std::uint64_t out = 1;
  for (const auto& o : plan.options) out *= o.size();
  return out;
}

std::vector<TreeWord> variable_words(const TreePtr& tree, int k, int alphabet, EnumerationBudget budget) {
  if (k < 1) fail(Errc::invalid_argument, "W_{v,k} needs k >= 1");
  TreeWord f = full_variable_word(tree);
  std::vector<TreeWord> out;
  SkewEnumerator it(full_subtree(tree), SkewPredicate{SkewKind::complete, k}, budget);
  while (auto A = it.next()) {
    for_each_anchored(f, A->nodes, alphabet, [&](const TreeWord& g) {
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "variable word enumeration exceeded its budget");
      out.push_back(g);
    });
  }
  return out;
}

std::vector<TreeWord> skew_variable_words(const TreePtr& tree, int l, int alphabet, EnumerationBudget budget) {
  if (l < 0) fail(Errc::invalid_argument, "W^x_{v,l} needs l >= 0");
  TreeWord f = full_variable_word(tree);
  std::vector<TreeWord> out;
  auto push = [&](const TreeWord& g) {
    if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "skew variable word enumeration exceeded its budget");
    out.push_back(g);
  };
  if (l == 0) {
    for_each_anchored(f, {}, alphabet, push);
    return out;
  }
  SkewEnumerator it(full_subtree(tree), SkewPredicate{SkewKind::skew, 0}, budget);
  while (auto A = it.next())
    if (static_cast<int>(A->size()) == l) for_each_anchored(f, A->nodes, alphabet, push);
  return out;
}

std::vector<TreeWord> subwords(const TreeWord& f, int k_prime, int alphabet, EnumerationBudget budget) {
  int h = word_height(f);
  if (k_prime < 1 || k_prime > h) fail(Errc::invalid_argument, "subwords needs 1 <= k' <= h(f)");
  std::vector<TreeWord> out;
  if (alphabet == 1) {
    for (TreeWord& g : variable_words(f.tree, k_prime, 1, budget))
      if (span_contains(f, g, 1)) out.push_back(std::move(g));
    return out;
  }
  SkewEnumerator it(wildcard_tree(f), SkewPredicate{SkewKind::complete, k_prime}, budget);
  while (auto A = it.next()) {
    for_each_anchored(f, A->nodes, alphabet, [&](const TreeWord& g) {
      if (out.size() >= budget.max_items) fail(Errc::budget_exceeded, "subword enumeration exceeded its budget");
      out.push_back(g);
    });
  }
  return out;
}

std::string format_entry(const Tree& tree, Entry e) {
  if (is_variable(e)) return "v:" + tree.format(variable_anchor(e));
  return std::to_string(e);
}

std::vector<std::string> format_word(const TreeWord& f) {
  std::vector<std::string> out;
  for (Entry e : f.entries) out.push_back(format_entry(*f.tree, e));
  return out;
}

TreeWord parse_word(const TreePtr& tree, const std::vector<std::string>& entries) {
  if (entries.size() != tree->size()) fail(Errc::parse_error, "word needs one entry per node");
  TreeWord f{tree, {}};
  for (const std::string& text : entries) {
    if (text.rfind("v:", 0) == 0) {
      f.entries.push_back(variable_entry(tree->parse(text.substr(2))));
    } else {
      try {
        std::size_t used = 0;
        int letter = std::stoi(text, &used);
        if (used != text.size() || letter < 0) throw std::invalid_argument(text);
        f.entries.push_back(letter);
      } catch (const std::exception&) {
        fail(Errc::parse_error, "bad word entry '" + text + "'");
      }
    }
  }
  (void)wildcard_tree(f);
  return f;
}

}  // namespace dr
