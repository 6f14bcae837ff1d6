#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualramsey/skew.hpp"
#include "dualramsey/tree.hpp"

namespace dr {

// Letters are 0..alphabet-1. A variable is stored as -(anchor+1), so letters and variables never collide.
using Entry = std::int32_t;
inline constexpr bool is_variable(Entry e) { return e < 0; }
inline constexpr NodeIndex variable_anchor(Entry e) { return static_cast<NodeIndex>(-(e + 1)); }
inline constexpr Entry variable_entry(NodeIndex anchor) { return -static_cast<Entry>(anchor) - 1; }

using ConstantWord = std::vector<Entry>;  // letters only, indexed by canonical node index

// ---------------------------------------------------------------- tree-indexed words

enum class WordKind { complete, general_skew, bare };

struct TreeWord {
  TreePtr tree;
  std::vector<Entry> entries;  // one per canonical node index
  bool operator==(const TreeWord& other) const { return entries == other.entries; }
};

TreeWord full_variable_word(const TreePtr& tree);
TreeWord constant_tree_word(const TreePtr& tree, const ConstantWord& letters);

// Anchors of the variables that occur; throws invalid_argument when an anchor is not its wildcard set's ⊑-minimum.
Subtree wildcard_tree(const TreeWord& f);
// Validates anchors and the kind's subtree predicate; returns h(f) for complete words, |ws(f)| otherwise.
bool is_valid_word(const TreeWord& f, int alphabet, WordKind kind, int parameter);
int word_height(const TreeWord& f);  // h(f); throws when ws(f) is not complete skew

ConstantWord substitute(const TreeWord& f, const std::vector<Entry>& assignment);  // assignment follows ws(f) order
std::vector<ConstantWord> span(const TreeWord& f, int alphabet);
std::uint64_t span_size(const TreeWord& f, int alphabet);
// [g] ⊆ [f], decided exactly for every alphabet size.
bool span_contains(const TreeWord& f, const TreeWord& g, int alphabet);
// Total order used for every "first witness": ws(g) lexicographic, then entries with letters before variables.
bool word_less(const TreeWord& f, const TreeWord& g, int alphabet);

// All g with [g] ⊆ [f] whose anchor set is exactly `anchors` (ℓ >= 2 characterization).
void for_each_anchored(const TreeWord& f, const std::vector<NodeIndex>& anchors, int alphabet,
                       const std::function<void(const TreeWord&)>& visit);
std::uint64_t count_anchored(const TreeWord& f, const std::vector<NodeIndex>& anchors, int alphabet);

// W_{v,k}(b,n,Λ) in canonical order.
std::vector<TreeWord> variable_words(const TreePtr& tree, int k, int alphabet, EnumerationBudget budget = {});
// W^×_{v,l}(b,n,Λ): wildcard tree skew with l nodes; l = 0 gives the constant words.
std::vector<TreeWord> skew_variable_words(const TreePtr& tree, int l, int alphabet, EnumerationBudget budget = {});
// W_{v,k'}(f).
std::vector<TreeWord> subwords(const TreeWord& f, int k_prime, int alphabet, EnumerationBudget budget = {});

std::string format_entry(const Tree& tree, Entry e);
std::vector<std::string> format_word(const TreeWord& f);
TreeWord parse_word(const TreePtr& tree, const std::vector<std::string>& entries);

// ---------------------------------------------------------------- linear words

// Variable i is stored as -(i+1).
struct LinearWord {
  std::vector<Entry> entries;
  int dimension = 0;
  bool operator==(const LinearWord&) const = default;
};

inline constexpr Entry linear_variable(int i) { return -i - 1; }
inline constexpr int linear_variable_index(Entry e) { return -e - 1; }

// Block position: every variable occurs and supports are ordered max < min.
bool is_block_word(const LinearWord& w);
void require_block_word(const LinearWord& w);
std::vector<std::vector<int>> supports(const LinearWord& w);
std::vector<int> minima(const LinearWord& w);  // ℓ^w_i
ConstantWord substitute(const LinearWord& w, const std::vector<Entry>& letters);
std::vector<ConstantWord> linear_subspace(const LinearWord& w, int alphabet);
// The κ*subspace as (point, sorted position subset) pairs, points outer.
std::vector<std::pair<ConstantWord, std::vector<int>>> kappa_subspace(const LinearWord& w, int alphabet, int kappa);
// Recover the generating word of a combinatorial subspace (alphabet >= 2).
LinearWord generator_of(const std::vector<ConstantWord>& subspace, int alphabet);
LinearWord compose(const LinearWord& outer, const LinearWord& inner);
LinearWord identity_word(int dimension);
bool is_compatible(const LinearWord& w, const std::vector<std::int64_t>& bounds);
// All m-dimensional block words of length N, canonical order (letters before variables, positionwise).
std::vector<LinearWord> block_words(int length, int dimension, int alphabet, std::uint64_t max_items = std::uint64_t{1} << 32);
bool linear_less(const LinearWord& a, const LinearWord& b, int alphabet);

std::vector<std::string> format_linear(const LinearWord& w);
LinearWord parse_linear(const std::vector<std::string>& entries);

// Classical m-parameter words: every variable occurs and first occurrences increase for i in 0..m-2.
bool is_parameter_word(const LinearWord& w);
std::vector<LinearWord> parameter_words(int length, int alphabet, int m, std::uint64_t max_items = std::uint64_t{1} << 32);
// [w]_{k,Λ}.
std::vector<LinearWord> parameter_subwords(const LinearWord& w, int k, int alphabet);
// Position i of a classical word becomes the chain node 0^i of 1^{<n}.
TreeWord classical_to_tree(const LinearWord& w, const TreePtr& chain);
LinearWord tree_to_classical(const TreeWord& f);

// ---------------------------------------------------------------- mixed products

enum class Role : int { plain = 0, up = 1, point = 2 };

struct MixedPoint {
  std::vector<ConstantWord> words;  // one per component
  std::vector<NodeIndex> branches;  // x_i for up components, indices in the tree of depth n+1
  std::vector<NodeIndex> nodes;     // t_i for point components
  bool operator==(const MixedPoint&) const = default;
};

struct MixedWord {
  std::vector<TreeWord> words;
  std::vector<std::vector<NodeIndex>> branch_sets;  // X_i per up component, sorted
};

// ws(f) ∪ X is an (h(f)+1)-complete skew subtree of b^{≤n} whose last level is X.
bool is_up_word(const TreeWord& f, const std::vector<NodeIndex>& branches, const Tree& extended);
bool is_mixed_word(const MixedWord& F, const std::vector<Role>& roles, const Tree& extended);
std::vector<MixedPoint> mixed_span(const MixedWord& F, const std::vector<Role>& roles, int alphabet, bool restricted);
// All points of W^D(b,n,Λ); the restricted form keeps point tuples whose lengths are non-decreasing.
std::vector<MixedPoint> mixed_points(const TreePtr& tree, const std::vector<Role>& roles, int alphabet, bool restricted,
                                     std::uint64_t max_items = std::uint64_t{1} << 32);
// All mixed variable words of a given dimension, canonical order.
std::vector<MixedWord> mixed_words(const TreePtr& tree, const std::vector<Role>& roles, int alphabet, int dimension,
                                   EnumerationBudget budget = {});

// ---------------------------------------------------------------- vector words

using VectorWord = std::vector<TreeWord>;
std::vector<VectorWord> vector_words(const TreePtr& tree, int d, int m, int alphabet, EnumerationBudget budget = {});
bool is_vector_word(const VectorWord& f, int m);
std::vector<VectorWord> vector_subwords(const VectorWord& f, int k, int alphabet, EnumerationBudget budget = {});

// ---------------------------------------------------------------- semi-complete pairs

struct SemiPair {
  Subtree S;
  TreeWord g;
  bool operator==(const SemiPair& other) const { return S == other.S && g == other.g; }
};

bool is_semi_pair(const SemiPair& p, int l);
// W*_{v,l}(f), ordered by S then g.
std::vector<SemiPair> semi_pairs(const TreeWord& f, int l, int alphabet, EnumerationBudget budget = {});
// W*_{v,l}(b,n,Λ) is W*_{v,l} of the full-variable word.
std::vector<SemiPair> all_semi_pairs(const TreePtr& tree, int l, int alphabet, EnumerationBudget budget = {});

struct Signature {
  std::vector<NodeIndex> nodes;                    // S'
  std::vector<std::pair<NodeIndex, Entry>> trace;  // g restricted to D
  NodeIndex pivot = kNoNode;                       // s_*
  bool operator==(const Signature&) const = default;
  bool operator<(const Signature& other) const;
};

Signature signature(const SemiPair& p);
std::vector<Signature> observable_signatures(const TreeWord& f, int l, int alphabet, EnumerationBudget budget = {});
std::vector<SemiPair> signature_class(const Signature& sig, const TreeWord& f, int l, int alphabet,
                                      EnumerationBudget budget = {});
// f' ∈ ⟨t0, f⟩_m.
bool in_anchored_family(const TreeWord& candidate, NodeIndex t0, const TreeWord& f, int m, int alphabet);

// ---------------------------------------------------------------- disjoint families and U-spaces

using Block = std::vector<int>;
using DisjointFamily = std::vector<Block>;

bool is_disjoint_family(const DisjointFamily& F);
DisjointFamily singletons_family(int n);
std::vector<DisjointFamily> ds_enumerate(const DisjointFamily& F, int k, std::uint64_t max_items = std::uint64_t{1} << 32);

struct USpace {
  Subtree anchors;                          // T
  std::vector<std::vector<NodeIndex>> parts;  // U_t per anchor, sorted
  bool operator==(const USpace& other) const { return anchors == other.anchors && parts == other.parts; }
};

bool is_uspace(const USpace& U, int k);
USpace finest_uspace(const TreePtr& tree);
std::vector<std::vector<NodeIndex>> u1_sets(const TreePtr& tree);
// U_k(V); with V finest this is U_k(b^{<n}).
std::vector<USpace> uspace_enumerate(const USpace& V, int k, EnumerationBudget budget = {});
bool is_usubspace(const USpace& U, const USpace& V);

}  // namespace dr
