#include <algorithm>
#include <map>
#include <set>

#include "dualramsey/words.hpp"

namespace dr {

namespace {

std::int64_t linear_key(Entry e, int alphabet) {
  return is_variable(e) ? alphabet + static_cast<std::int64_t>(linear_variable_index(e)) : e;
}

void check_entries(const LinearWord& w) {
  for (Entry e : w.entries)
    if (is_variable(e) && linear_variable_index(e) >= w.dimension)
      fail(Errc::invalid_argument, "variable index exceeds the word's dimension");
}

}  // namespace

std::vector<std::vector<int>> supports(const LinearWord& w) {
  check_entries(w);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(w.dimension));
  for (std::size_t p = 0; p < w.entries.size(); ++p)
    if (is_variable(w.entries[p])) out[static_cast<std::size_t>(linear_variable_index(w.entries[p]))].push_back(static_cast<int>(p));
  return out;
}

bool is_block_word(const LinearWord& w) {
  if (w.dimension < 1) return false;
  for (Entry e : w.entries)
    if (is_variable(e) && linear_variable_index(e) >= w.dimension) return false;
  auto sup = supports(w);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (sup[i].empty()) return false;
    if (i > 0 && sup[i - 1].back() >= sup[i].front()) return false;
  }
  return true;
}

void require_block_word(const LinearWord& w) {
  if (!is_block_word(w)) fail(Errc::invalid_argument, "not a block-position variable word");
}

std::vector<int> minima(const LinearWord& w) {
  std::vector<int> out;
  for (const auto& s : supports(w)) {
    if (s.empty()) fail(Errc::invalid_argument, "a variable does not occur");
    out.push_back(s.front());
  }
  return out;
}

ConstantWord substitute(const LinearWord& w, const std::vector<Entry>& letters) {
  if (letters.size() != static_cast<std::size_t>(w.dimension)) fail(Errc::invalid_argument, "assignment must cover every variable");
  check_entries(w);
  ConstantWord out(w.entries.size());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = is_variable(w.entries[p]) ? letters[static_cast<std::size_t>(linear_variable_index(w.entries[p]))] : w.entries[p];
  return out;
}

std::vector<ConstantWord> linear_subspace(const LinearWord& w, int alphabet) {
  if (alphabet < 1) fail(Errc::invalid_argument, "alphabet must be nonempty");
  std::vector<ConstantWord> out;
  std::vector<Entry> a(static_cast<std::size_t>(w.dimension), 0);
  while (true) {
    out.push_back(substitute(w, a));
    int i = w.dimension - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == alphabet - 1) a[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<std::pair<ConstantWord, std::vector<int>>> kappa_subspace(const LinearWord& w, int alphabet, int kappa) {
  if (kappa < 0 || kappa > w.dimension) fail(Errc::invalid_argument, "κ must satisfy 0 <= κ <= m");
  std::vector<int> mins = minima(w);
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(static_cast<std::size_t>(kappa));
  std::function<void(int, int)> rec = [&](int from, int depth) {
    if (depth == kappa) {
      std::vector<int> s;
      for (int i : pick) s.push_back(mins[static_cast<std::size_t>(i)]);
      subsets.push_back(std::move(s));
      return;
    }
    for (int i = from; i < w.dimension; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::vector<std::pair<ConstantWord, std::vector<int>>> out;
  for (ConstantWord& x : linear_subspace(w, alphabet))
    for (const auto& s : subsets) out.emplace_back(x, s);
  return out;
}

LinearWord generator_of(const std::vector<ConstantWord>& subspace, int alphabet) {
  if (alphabet < 2) fail(Errc::invalid_argument, "generators are unique only for alphabets of size >= 2");
  if (subspace.empty()) fail(Errc::invalid_argument, "empty subspace");
  const std::size_t n = subspace.front().size();
  for (const auto& x : subspace)
    if (x.size() != n) fail(Errc::invalid_argument, "subspace points differ in length");
  std::map<std::vector<Entry>, int> column_variable;
  LinearWord w;
  w.entries.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<Entry> column;
    for (const auto& x : subspace) column.push_back(x[p]);
    if (std::all_of(column.begin(), column.end(), [&](Entry e) { return e == column.front(); })) {
      w.entries[p] = column.front();
      continue;
    }
    auto [it, fresh] = column_variable.emplace(column, w.dimension);
    if (fresh) ++w.dimension;
    w.entries[p] = linear_variable(it->second);
  }
  std::vector<ConstantWord> regenerated = linear_subspace(w, alphabet);
  std::set<ConstantWord> a(subspace.begin(), subspace.end()), b(regenerated.begin(), regenerated.end());
  if (a != b) fail(Errc::invalid_argument, "point set is not a combinatorial subspace");
  return w;
}

LinearWord compose(const LinearWord& outer, const LinearWord& inner) {
  if (inner.entries.size() != static_cast<std::size_t>(outer.dimension))
    fail(Errc::invalid_argument, "inner word length must equal the outer dimension");
  check_entries(outer);
  check_entries(inner);
  LinearWord out{{}, inner.dimension};
  for (Entry e : outer.entries) out.entries.push_back(is_variable(e) ? inner.entries[static_cast<std::size_t>(linear_variable_index(e))] : e);
  return out;
}

LinearWord identity_word(int dimension) {
  LinearWord w{{}, dimension};
  for (int i = 0; i < dimension; ++i) w.entries.push_back(linear_variable(i));
  return w;
}

bool is_compatible(const LinearWord& w, const std::vector<std::int64_t>& bounds) {
  if (bounds.size() != static_cast<std::size_t>(w.dimension) + 1) fail(Errc::invalid_argument, "q must have m+1 entries");
  if (bounds.front() < 0 || bounds.back() > static_cast<std::int64_t>(w.entries.size()))
    fail(Errc::invalid_argument, "q must satisfy q_0 >= 0 and q_m <= N");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i - 1] >= bounds[i]) fail(Errc::invalid_argument, "q must be strictly increasing");
  auto sup = supports(w);
  for (std::size_t i = 0; i < sup.size(); ++i)
    for (int p : sup[i])
      if (p < bounds[i] || p >= bounds[i + 1]) return false;
  return true;
}

std::vector<LinearWord> block_words(int length, int dimension, int alphabet, std::uint64_t max_items) {
  if (dimension < 1 || dimension > length) fail(Errc::invalid_argument, "block words need 1 <= m <= N");
  std::vector<LinearWord> out;
  LinearWord w{std::vector<Entry>(static_cast<std::size_t>(length)), dimension};
  // current = index of the open block, -1 before the first variable.
  std::function<void(int, int)> rec = [&](int p, int current) {
    if (dimension - 1 - current > length - p) return;
    if (p == length) {
      if (current == dimension - 1) {
        if (out.size() >= max_items) fail(Errc::budget_exceeded, "block word enumeration exceeded its budget");
        out.push_back(w);
      }
      return;
    }
    auto& slot = w.entries[static_cast<std::size_t>(p)];
    for (Entry a = 0; a < alphabet; ++a) {
      slot = a;
      rec(p + 1, current);
    }
    if (current >= 0) {
      slot = linear_variable(current);
      rec(p + 1, current);
    }
    if (current + 1 < dimension) {
      slot = linear_variable(current + 1);
      rec(p + 1, current + 1);
    }
  };
  rec(0, -1);
  return out;
}

bool linear_less(const LinearWord& a, const LinearWord& b, int alphabet) {
  return std::lexicographical_compare(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                                      [alphabet](Entry x, Entry y) { return linear_key(x, alphabet) < linear_key(y, alphabet); });
}

std::vector<std::string> format_linear(const LinearWord& w) {
  std::vector<std::string> out;
  for (Entry e : w.entries) out.push_back(is_variable(e) ? "v" + std::to_string(linear_variable_index(e)) : std::to_string(e));
  return out;
}

LinearWord parse_linear(const std::vector<std::string>& entries) {
  LinearWord w;
  for (const std::string& text : entries) {
    bool var = !text.empty() && text[0] == 'v';
    std::string digits = var ? text.substr(1) : text;
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(digits, &used);
      if (used != digits.size() || value < 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad linear word entry '" + text + "'");
    }
    if (var) {
      w.entries.push_back(linear_variable(value));
      w.dimension = std::max(w.dimension, value + 1);
    } else {
      w.entries.push_back(value);
    }
  }
  return w;
}

bool is_parameter_word(const LinearWord& w) {
  if (w.dimension < 0) return false;
  int next = 0;
  for (Entry e : w.entries) {
    if (!is_variable(e)) continue;
    int i = linear_variable_index(e);
    if (i >= w.dimension || i > next) return false;
    if (i == next) ++next;
  }
  return next == w.dimension;
}

std::vector<LinearWord> parameter_words(int length, int alphabet, int m, std::uint64_t max_items) {
  if (m < 0 || m > length) fail(Errc::invalid_argument, "parameter words need 0 <= m <= n");
  std::vector<LinearWord> out;
  LinearWord w{std::vector<Entry>(static_cast<std::size_t>(length)), m};
  // used = number of variables already introduced.
  std::function<void(int, int)> rec = [&](int p, int used) {
    if (m - used > length - p) return;
    if (p == length) {
      if (out.size() >= max_items) fail(Errc::budget_exceeded, "parameter word enumeration exceeded its budget");
      out.push_back(w);
      return;
    }
    auto& slot = w.entries[static_cast<std::size_t>(p)];
    for (Entry a = 0; a < alphabet; ++a) {
      slot = a;
      rec(p + 1, used);
    }
    for (int i = 0; i < used; ++i) {
      slot = linear_variable(i);
      rec(p + 1, used);
    }
    if (used < m) {
      slot = linear_variable(used);
      rec(p + 1, used + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<LinearWord> parameter_subwords(const LinearWord& w, int k, int alphabet) {
  if (!is_parameter_word(w)) fail(Errc::invalid_argument, "not a parameter word");
  if (k < 0 || k > w.dimension) fail(Errc::invalid_argument, "[w]_k needs k <= m");
  std::vector<LinearWord> out;
  if (alphabet == 1) {
    // Every span is a single point, so containment holds for every k-parameter word.
    return parameter_words(static_cast<int>(w.entries.size()), 1, k);
  }
  for (const LinearWord& u : parameter_words(w.dimension, alphabet, k)) out.push_back(compose(w, u));
  std::sort(out.begin(), out.end(), [alphabet](const LinearWord& a, const LinearWord& b) { return linear_less(a, b, alphabet); });
  return out;
}

TreeWord classical_to_tree(const LinearWord& w, const TreePtr& chain) {
  if (chain->branching() != 1 || chain->size() != w.entries.size())
    fail(Errc::invalid_argument, "classical words map onto the chain 1^{<n} of the same length");
  std::vector<int> first(static_cast<std::size_t>(w.dimension), -1);
  TreeWord f{chain, std::vector<Entry>(w.entries.size())};
  for (std::size_t p = 0; p < w.entries.size(); ++p) {
    Entry e = w.entries[p];
    if (!is_variable(e)) {
      f.entries[p] = e;
      continue;
    }
    auto i = static_cast<std::size_t>(linear_variable_index(e));
    if (i >= first.size()) fail(Errc::invalid_argument, "variable index exceeds the word's dimension");
    if (first[i] < 0) first[i] = static_cast<int>(p);
    f.entries[p] = variable_entry(static_cast<NodeIndex>(first[i]));
  }
  return f;
}

LinearWord tree_to_classical(const TreeWord& f) {
  if (f.tree->branching() != 1) fail(Errc::invalid_argument, "classical words correspond to b = 1");
  Subtree ws = wildcard_tree(f);
  LinearWord w{{}, static_cast<int>(ws.size())};
  for (Entry e : f.entries) w.entries.push_back(is_variable(e) ? linear_variable(ws.position(variable_anchor(e))) : e);
  return w;
}

}  // namespace dr
