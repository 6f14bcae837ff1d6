#include "dualramsey/tree.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace dr {

namespace {

constexpr std::uint64_t kCountLimit = std::uint64_t{1} << 62;
constexpr std::uint64_t kTreeLimit = std::uint64_t{1} << 24;

std::uint64_t level_offset(Shape shape, int length) {
  if (shape.branching == 1) return static_cast<std::uint64_t>(length);
  std::uint64_t total = 0, width = 1;
  for (int i = 0; i < length; ++i) {
    total += width;
    width *= static_cast<std::uint64_t>(shape.branching);
  }
  return total;
}

int parse_int(const std::string& text, std::size_t begin, std::size_t end) {
  int value = 0;
  const char* first = text.data() + begin;
  const char* last = text.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    fail(Errc::parse_error, "bad integer in '" + text + "'");
  return value;
}

}  // namespace

void validate_shape(Shape shape) {
  if (shape.branching < 1 || shape.depth < 1)
    fail(Errc::invalid_argument, "shape needs b >= 1 and n >= 1, got " + format_shape(shape));
  if (shape.branching > 255) fail(Errc::invalid_argument, "branching above 255 is not supported");
  (void)node_count(shape);
}

std::uint64_t node_count(Shape shape) {
  if (shape.branching < 1 || shape.depth < 1)
    fail(Errc::invalid_argument, "shape needs b >= 1 and n >= 1");
  if (shape.branching == 1) return static_cast<std::uint64_t>(shape.depth);
  unsigned __int128 total = 0, width = 1;
  for (int i = 0; i < shape.depth; ++i) {
    total += width;
    if (total > kCountLimit) fail(Errc::overflow, "node count of " + format_shape(shape) + " exceeds 2^62");
    width *= static_cast<unsigned>(shape.branching);
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t canonical_index(Shape shape, const Node& node) {
  validate_shape(shape);
  if (static_cast<int>(node.size()) >= shape.depth)
    fail(Errc::out_of_shape, "node " + format_node(node) + " is too long for " + format_shape(shape));
  std::uint64_t value = 0;
  for (int d : node) {
    if (d < 0 || d >= shape.branching)
      fail(Errc::out_of_shape, "digit out of range in " + format_node(node) + " for " + format_shape(shape));
    value = value * static_cast<std::uint64_t>(shape.branching) + static_cast<std::uint64_t>(d);
  }
  return level_offset(shape, static_cast<int>(node.size())) + value;
}

Node node_at(Shape shape, std::uint64_t index) {
  std::uint64_t count = node_count(shape);
  if (index >= count) fail(Errc::out_of_shape, "index " + std::to_string(index) + " outside " + format_shape(shape));
  int length = 0;
  while (level_offset(shape, length + 1) <= index) ++length;
  std::uint64_t value = index - level_offset(shape, length);
  Node out(static_cast<std::size_t>(length), 0);
  for (int i = length - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(value % static_cast<std::uint64_t>(shape.branching));
    value /= static_cast<std::uint64_t>(shape.branching);
  }
  return out;
}

bool is_prefix(const Node& s, const Node& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

bool lex_le(const Node& s, const Node& t) {
  if (is_prefix(s, t)) return true;
  if (is_prefix(t, s)) return false;
  std::size_t i = meet(s, t).size();
  return s[i] < t[i];
}

bool length_lex_le(const Node& s, const Node& t) {
  if (s.size() != t.size()) return s.size() < t.size();
  return lex_le(t, s);
}

Cmp compare(const Node& s, const Node& t, Order order) {
  if (s == t) return Cmp::equal;
  switch (order) {
    case Order::initial_segment:
      if (is_prefix(s, t)) return Cmp::less;
      if (is_prefix(t, s)) return Cmp::greater;
      return Cmp::incomparable;
    case Order::lex:
      return lex_le(s, t) ? Cmp::less : Cmp::greater;
    case Order::length_lex:
      return length_lex_le(s, t) ? Cmp::less : Cmp::greater;
  }
  return Cmp::incomparable;
}

Node meet(const Node& s, const Node& t) {
  std::size_t i = 0;
  while (i < s.size() && i < t.size() && s[i] == t[i]) ++i;
  return Node(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
}

std::string format_node(const Node& node) {
  if (node.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(node[i]);
  }
  return out;
}

Node parse_node(const std::string& text) {
  if (text == "e") return {};
  if (text.empty()) fail(Errc::parse_error, "empty node text; the root is spelled 'e'");
  Node out;
  std::size_t begin = 0;
  while (true) {
    std::size_t dot = text.find('.', begin);
    std::size_t end = dot == std::string::npos ? text.size() : dot;
    out.push_back(parse_int(text, begin, end));
    if (dot == std::string::npos) break;
    begin = dot + 1;
  }
  return out;
}

std::string format_shape(Shape shape) {
  return std::to_string(shape.branching) + "^<" + std::to_string(shape.depth);
}

Shape parse_shape(const std::string& text) {
  auto pos = text.find("^<");
  if (pos == std::string::npos) fail(Errc::parse_error, "shape must look like b^<n, got '" + text + "'");
  Shape shape{parse_int(text, 0, pos), parse_int(text, pos + 2, text.size())};
  validate_shape(shape);
  return shape;
}

const char* order_name(Order order) {
  switch (order) {
    case Order::initial_segment: return "initial_segment";
    case Order::lex: return "lex";
    case Order::length_lex: return "length_lex";
  }
  return "?";
}

Order parse_order(const std::string& text) {
  if (text == "initial_segment" || text == "prefix") return Order::initial_segment;
  if (text == "lex") return Order::lex;
  if (text == "length_lex" || text == "llex") return Order::length_lex;
  fail(Errc::parse_error, "unknown order '" + text + "'");
}

// ---------------------------------------------------------------- Tree

std::shared_ptr<const Tree> Tree::make(Shape shape) { return std::make_shared<const Tree>(shape); }

Tree::Tree(Shape shape) : shape_(shape) {
  validate_shape(shape);
  std::uint64_t count = node_count(shape);
  if (count > kTreeLimit) fail(Errc::budget_exceeded, format_shape(shape) + " has more than 2^24 nodes");
  size_ = static_cast<NodeIndex>(count);
  offsets_.resize(static_cast<std::size_t>(shape.depth) + 1);
  for (int L = 0; L <= shape.depth; ++L) offsets_[static_cast<std::size_t>(L)] = static_cast<NodeIndex>(level_offset(shape, L));
  lengths_.resize(size_);
  for (int L = 0; L < shape.depth; ++L)
    for (NodeIndex s = offsets_[L]; s < offsets_[L + 1]; ++s) lengths_[s] = static_cast<std::uint8_t>(L);

  // ≤lex is depth-first pre-order.
  lex_rank_.assign(size_, 0);
  NodeIndex next = 0;
  std::vector<NodeIndex> stack{0};
  while (!stack.empty()) {
    NodeIndex s = stack.back();
    stack.pop_back();
    lex_rank_[s] = next++;
    if (length(s) + 1 < shape.depth)
      for (int d = shape.branching - 1; d >= 0; --d) stack.push_back(child(s, d));
  }
  by_llex_.reserve(size_);
  for (int L = 0; L < shape.depth; ++L)
    for (NodeIndex s = offsets_[L + 1]; s-- > offsets_[L];) by_llex_.push_back(s);
}

NodeIndex Tree::parent(NodeIndex s) const {
  int L = length(s);
  if (L == 0) return kNoNode;
  NodeIndex pos = s - offsets_[L];
  return offsets_[L - 1] + pos / static_cast<NodeIndex>(shape_.branching);
}

int Tree::last_digit(NodeIndex s) const {
  int L = length(s);
  if (L == 0) return -1;
  return static_cast<int>((s - offsets_[L]) % static_cast<NodeIndex>(shape_.branching));
}

int Tree::digit(NodeIndex s, int position) const { return last_digit(ancestor(s, position + 1)); }

NodeIndex Tree::child(NodeIndex s, int d) const {
  int L = length(s);
  if (L + 1 >= shape_.depth) return kNoNode;
  return offsets_[L + 1] + (s - offsets_[L]) * static_cast<NodeIndex>(shape_.branching) + static_cast<NodeIndex>(d);
}

NodeIndex Tree::ancestor(NodeIndex s, int len) const {
  while (length(s) > len) s = parent(s);
  return s;
}

bool Tree::prefix(NodeIndex s, NodeIndex t) const {
  return length(s) <= length(t) && ancestor(t, length(s)) == s;
}

NodeIndex Tree::llex_rank(NodeIndex s) const {
  int L = length(s);
  return offsets_[L] + (offsets_[L + 1] - 1 - s);
}

NodeIndex Tree::meet(NodeIndex s, NodeIndex t) const {
  while (length(s) > length(t)) s = parent(s);
  while (length(t) > length(s)) t = parent(t);
  while (s != t) {
    s = parent(s);
    t = parent(t);
  }
  return s;
}

Cmp Tree::compare(NodeIndex s, NodeIndex t, Order order) const {
  if (s == t) return Cmp::equal;
  switch (order) {
    case Order::initial_segment:
      if (prefix(s, t)) return Cmp::less;
      if (prefix(t, s)) return Cmp::greater;
      return Cmp::incomparable;
    case Order::lex:
      return lex_less(s, t) ? Cmp::less : Cmp::greater;
    case Order::length_lex:
      return llex_less(s, t) ? Cmp::less : Cmp::greater;
  }
  return Cmp::incomparable;
}

Node Tree::node(NodeIndex s) const {
  if (s >= size_) fail(Errc::out_of_shape, "node index " + std::to_string(s) + " outside " + format_shape(shape_));
  Node out(static_cast<std::size_t>(length(s)));
  for (int i = length(s) - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = last_digit(s);
    s = parent(s);
  }
  return out;
}

NodeIndex Tree::index(const Node& node) const {
  return static_cast<NodeIndex>(canonical_index(shape_, node));
}

// ---------------------------------------------------------------- Subtree

Subtree::Subtree(TreePtr t, std::vector<NodeIndex> ns) : tree(std::move(t)), nodes(std::move(ns)) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (NodeIndex s : nodes)
    if (s >= tree->size()) fail(Errc::out_of_shape, "subtree node outside its tree");
}

bool Subtree::contains(NodeIndex s) const { return std::binary_search(nodes.begin(), nodes.end(), s); }

int Subtree::position(NodeIndex s) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
  if (it == nodes.end() || *it != s) return -1;
  return static_cast<int>(it - nodes.begin());
}

Subtree full_subtree(const TreePtr& tree) {
  std::vector<NodeIndex> all(tree->size());
  for (NodeIndex s = 0; s < tree->size(); ++s) all[s] = s;
  return Subtree(tree, std::move(all));
}

Subtree subtree_from_nodes(const TreePtr& tree, const std::vector<Node>& nodes) {
  std::vector<NodeIndex> idx;
  idx.reserve(nodes.size());
  for (const Node& n : nodes) idx.push_back(tree->index(n));
  return Subtree(tree, std::move(idx));
}

std::vector<std::string> format_subtree(const Subtree& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (NodeIndex t : s.nodes) out.push_back(s.tree->format(t));
  return out;
}

namespace {
void require_member(const Subtree& S, NodeIndex s) {
  if (!S.contains(s)) fail(Errc::invalid_argument, "node " + S.tree->format(s) + " is not in the subtree");
}
}  // namespace

std::vector<NodeIndex> pred(const Subtree& S, NodeIndex s) {
  require_member(S, s);
  std::vector<NodeIndex> out;
  for (NodeIndex t = S.tree->parent(s); t != kNoNode; t = S.tree->parent(t))
    if (S.contains(t)) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeIndex> succ(const Subtree& S, NodeIndex s) {
  require_member(S, s);
  std::vector<NodeIndex> out;
  for (NodeIndex t : S.nodes)
    if (S.tree->prefix(s, t)) out.push_back(t);
  return out;
}

std::vector<NodeIndex> imsucc(const Subtree& S, NodeIndex s) {
  SubtreeLayout lay = layout(S);
  std::vector<NodeIndex> out;
  for (int c : lay.children[static_cast<std::size_t>(S.position(s))]) out.push_back(S.nodes[static_cast<std::size_t>(c)]);
  return out;
}

int height_in(const Subtree& S, NodeIndex s) { return static_cast<int>(pred(S, s).size()); }

std::vector<NodeIndex> level(const Subtree& S, int m) {
  SubtreeLayout lay = layout(S);
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (lay.height[i] == m) out.push_back(S.nodes[i]);
  return out;
}

std::vector<int> level_set(const Subtree& S) {
  std::vector<int> out;
  for (NodeIndex s : S.nodes) out.push_back(S.tree->length(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<NodeIndex> root(const Subtree& S) {
  SubtreeLayout lay = layout(S);
  if (lay.minimum < 0) return std::nullopt;
  return S.nodes[static_cast<std::size_t>(lay.minimum)];
}

int subtree_height(const Subtree& S) { return layout(S).max_height + 1; }

std::vector<NodeIndex> maximal_nodes(const Subtree& S) {
  SubtreeLayout lay = layout(S);
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (lay.children[i].empty()) out.push_back(S.nodes[i]);
  return out;
}

SubtreeLayout layout(const Subtree& S) {
  const Tree& T = *S.tree;
  SubtreeLayout lay;
  std::size_t count = S.size();
  lay.height.assign(count, 0);
  lay.parent.assign(count, -1);
  lay.children.assign(count, {});
  int roots = 0;
  // Ascending index order visits every proper prefix before its extensions.
  for (std::size_t i = 0; i < count; ++i) {
    NodeIndex s = S.nodes[i];
    for (NodeIndex t = T.parent(s); t != kNoNode; t = T.parent(t)) {
      int p = S.position(t);
      if (p >= 0) {
        lay.parent[i] = p;
        lay.height[i] = lay.height[static_cast<std::size_t>(p)] + 1;
        lay.children[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
        break;
      }
    }
    if (lay.parent[i] < 0) {
      ++roots;
      lay.minimum = static_cast<int>(i);
    }
    lay.max_height = std::max(lay.max_height, lay.height[i]);
  }
  if (roots != 1) lay.minimum = -1;
  return lay;
}

}  // namespace dr
