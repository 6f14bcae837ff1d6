#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualramsey/error.hpp"

namespace dr {

// b^{<n}: sequences over {0,...,branching-1} of length < depth.
struct Shape {
  int branching = 2;
  int depth = 1;
  bool operator==(const Shape&) const = default;
};

using Node = std::vector<int>;
using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = 0xffffffffu;

// (b^n - 1)/(b - 1), or n when b = 1. Throws overflow past 2^62.
std::uint64_t node_count(Shape shape);
void validate_shape(Shape shape);

// Storage order: by length, then increasing lex within a level.
std::uint64_t canonical_index(Shape shape, const Node& node);
Node node_at(Shape shape, std::uint64_t index);

enum class Order { initial_segment, lex, length_lex };
enum class Cmp { less, equal, greater, incomparable };

bool is_prefix(const Node& s, const Node& t);
// s <=lex t, non-strict, as a total order on sequences.
bool lex_le(const Node& s, const Node& t);
// s ≼ t: shorter first; within a length the lex order is reversed.
bool length_lex_le(const Node& s, const Node& t);
Cmp compare(const Node& s, const Node& t, Order order);
Node meet(const Node& s, const Node& t);

std::string format_node(const Node& node);
Node parse_node(const std::string& text);
std::string format_shape(Shape shape);
Shape parse_shape(const std::string& text);
const char* order_name(Order order);
Order parse_order(const std::string& text);

// Index-level view of b^{<n}. Capped at 2^24 nodes.
class Tree {
 public:
  static std::shared_ptr<const Tree> make(Shape shape);
  explicit Tree(Shape shape);

  Shape shape() const { return shape_; }
  int branching() const { return shape_.branching; }
  int depth() const { return shape_.depth; }
  NodeIndex size() const { return size_; }

  NodeIndex level_begin(int length) const { return offsets_[length]; }
  NodeIndex level_end(int length) const { return offsets_[length + 1]; }

  int length(NodeIndex s) const { return lengths_[s]; }
  NodeIndex parent(NodeIndex s) const;
  int last_digit(NodeIndex s) const;
  int digit(NodeIndex s, int position) const;
  NodeIndex child(NodeIndex s, int digit) const;
  NodeIndex ancestor(NodeIndex s, int length) const;

  bool prefix(NodeIndex s, NodeIndex t) const;
  bool proper_prefix(NodeIndex s, NodeIndex t) const { return s != t && prefix(s, t); }
  bool lex_less(NodeIndex s, NodeIndex t) const { return lex_rank_[s] < lex_rank_[t]; }
  bool llex_less(NodeIndex s, NodeIndex t) const { return llex_rank(s) < llex_rank(t); }
  NodeIndex lex_rank(NodeIndex s) const { return lex_rank_[s]; }
  NodeIndex llex_rank(NodeIndex s) const;
  NodeIndex meet(NodeIndex s, NodeIndex t) const;
  Cmp compare(NodeIndex s, NodeIndex t, Order order) const;

  Node node(NodeIndex s) const;
  NodeIndex index(const Node& node) const;
  std::string format(NodeIndex s) const { return format_node(node(s)); }
  NodeIndex parse(const std::string& text) const { return index(parse_node(text)); }

  // All indices sorted ≼-increasing.
  const std::vector<NodeIndex>& by_llex() const { return by_llex_; }

 private:
  Shape shape_;
  NodeIndex size_ = 0;
  std::vector<NodeIndex> offsets_;
  std::vector<std::uint8_t> lengths_;
  std::vector<NodeIndex> lex_rank_;
  std::vector<NodeIndex> by_llex_;
};

using TreePtr = std::shared_ptr<const Tree>;

// A finite node set of one tree; nodes sorted by canonical index.
struct Subtree {
  TreePtr tree;
  std::vector<NodeIndex> nodes;

  Subtree() = default;
  Subtree(TreePtr t, std::vector<NodeIndex> ns);
  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
  bool contains(NodeIndex s) const;
  int position(NodeIndex s) const;  // -1 when absent
  bool operator==(const Subtree& other) const { return nodes == other.nodes; }
};

Subtree full_subtree(const TreePtr& tree);
Subtree subtree_from_nodes(const TreePtr& tree, const std::vector<Node>& nodes);
std::vector<std::string> format_subtree(const Subtree& s);

// Relatives inside S. Succ includes s itself; Pred and ImSucc are strict.
std::vector<NodeIndex> pred(const Subtree& S, NodeIndex s);
std::vector<NodeIndex> succ(const Subtree& S, NodeIndex s);
std::vector<NodeIndex> imsucc(const Subtree& S, NodeIndex s);
int height_in(const Subtree& S, NodeIndex s);
std::vector<NodeIndex> level(const Subtree& S, int m);
std::vector<int> level_set(const Subtree& S);
std::optional<NodeIndex> root(const Subtree& S);
// Maximal chain length, i.e. 1 + the largest node height.
int subtree_height(const Subtree& S);
std::vector<NodeIndex> maximal_nodes(const Subtree& S);

// Per-position structure of S, computed once.
struct SubtreeLayout {
  std::vector<int> height;                 // h_S per position
  std::vector<int> parent;                 // position of the ⊑-largest proper predecessor, -1 if none
  std::vector<std::vector<int>> children;  // ImSucc positions, ascending
  int minimum = -1;                        // position of the ⊑-minimum, -1 if none
  int max_height = -1;
};
SubtreeLayout layout(const Subtree& S);

}  // namespace dr
