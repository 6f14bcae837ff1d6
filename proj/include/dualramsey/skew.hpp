#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualramsey/tree.hpp"

namespace dr {

struct SkewWitness {
  int last_branch = 0;       // i_S
  NodeIndex pivot = kNoNode;  // s_S
  bool singleton = false;
  bool operator==(const SkewWitness&) const = default;
};

// Conditions (ii) and (iii): same height forces ≤lex to respect length, larger height forces longer nodes.
bool satisfies_interleaving(const Subtree& S, const SubtreeLayout& lay);

std::optional<SkewWitness> is_skew(const Subtree& S);
// Complete skew, defined directly by the chain/branching conditions of the introduction.
bool is_complete_skew(const Subtree& S, int k);
// Complete skew, defined as a skew subtree with uniform chains and full branching.
bool is_complete_skew_via_skew(const Subtree& S, int k);
bool is_semi_complete(const Subtree& S);
Subtree interior(const Subtree& S);

enum class SkewKind { skew, complete, semi_complete };

struct SkewPredicate {
  SkewKind kind = SkewKind::skew;
  int parameter = 0;  // k for complete, |Int| for semi_complete
};

bool satisfies(const Subtree& S, SkewPredicate predicate);

struct EnumerationBudget {
  std::uint64_t max_items = std::uint64_t{1} << 32;
  std::uint64_t max_steps = std::uint64_t{1} << 34;
};

// Restartable pull iterator over subsets of a carrier, in lexicographic order of sorted indices.
class SkewEnumerator {
 public:
  SkewEnumerator(Subtree carrier, SkewPredicate predicate, EnumerationBudget budget = {});
  std::optional<Subtree> next();
  std::uint64_t steps() const { return steps_; }

 private:
  struct Frame {
    int next_candidate;  // carrier position to try next
  };
  bool admissible(int candidate) const;
  void push(int candidate);
  void pop();
  bool accept() const;

  Subtree carrier_;
  SkewPredicate predicate_;
  EnumerationBudget budget_;
  std::vector<int> chosen_;        // carrier positions
  std::vector<int> heights_;       // parallel to chosen_
  std::vector<int> parent_slot_;   // slot in chosen_, -1 for root
  std::vector<int> child_counts_;  // parallel to chosen_
  int interior_count_ = 0;
  std::vector<Frame> stack_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t yielded_ = 0;
  std::uint64_t steps_ = 0;
};

std::vector<Subtree> enumerate_skew(const Subtree& carrier, SkewPredicate predicate, EnumerationBudget budget = {});
std::vector<Subtree> enumerate_skew(const TreePtr& tree, SkewPredicate predicate, EnumerationBudget budget = {});

// The unique order isomorphism b^{<k} -> S of a k-complete skew subtree.
class SkewIso {
 public:
  SkewIso(const Subtree& S, int k);
  const TreePtr& source() const { return source_; }
  const Subtree& target() const { return target_; }
  int height() const { return k_; }
  NodeIndex forward(NodeIndex source_node) const { return forward_[source_node]; }
  NodeIndex inverse(NodeIndex target_node) const;

 private:
  TreePtr source_;
  Subtree target_;
  int k_;
  std::vector<NodeIndex> forward_;
};

// Follow a digit path from the root of S through immediate successors; absent when the path leaves S.
std::optional<NodeIndex> follow_path(const Subtree& S, const SubtreeLayout& lay, const Node& path);

struct VectorSubtree {
  std::vector<Subtree> parts;
  bool operator==(const VectorSubtree& other) const { return parts == other.parts; }
};

bool is_vector_skew(const VectorSubtree& V, int k);
bool is_vector_complete_skew(const VectorSubtree& V, int k);
// CT_k(V): vector k-complete skew subtrees componentwise inside V, lexicographic by component.
std::vector<VectorSubtree> enumerate_ct(const VectorSubtree& V, int k, EnumerationBudget budget = {});

}  // namespace dr
