#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualramsey/words.hpp"

namespace dr {

// Every domain element is encoded as a flat integer key; kKeySeparator splits variable-length parts.
using Key = std::vector<std::int32_t>;
inline constexpr std::int32_t kKeySeparator = INT32_MIN;

enum class DomainKind {
  product,          // Λ^N
  kappa_product,    // Λ^N × [N]^(κ)
  block_product,    // Λ^N × ∏_j ∪_{i∈G_j} I_i
  words,            // W(b,n,Λ)
  variable_words,   // W_{v,k}(b,n,Λ)
  mixed,            // W^D(b,n,Λ)
  semi_pairs,       // W*_{v,l}(b,n,Λ)
  ct,               // CT_k(T^d_{b,n})
  uspace,           // U_k(b^{<n})
  ds,               // DS_k(n)
  vector_words,     // W^d_{v,k}(b,n,Λ)
};

const char* domain_kind_name(DomainKind kind);
DomainKind parse_domain_kind(const std::string& text);

struct DomainDescriptor {
  DomainKind kind = DomainKind::product;
  int branching = 2;
  int depth = 1;
  int alphabet = 2;
  int length = 1;  // N, or n for DS_k(n)
  int kappa = 0;
  int k = 1;
  int l = 0;
  int d = 1;
  std::vector<Role> roles;             // mixed
  std::vector<std::vector<int>> groups;  // block_product: G_j
  int block = 1;                       // block_product: q
  bool operator==(const DomainDescriptor&) const = default;
};

std::string describe(const DomainDescriptor& D);
// Full-size validation; throws invalid_argument with the offending parameter.
void validate(const DomainDescriptor& D);

// Key encoders, one per element type.
Key key_of(const ConstantWord& w, const std::vector<int>& positions);
Key key_of(const ConstantWord& w);
Key key_of(const TreeWord& f);
Key key_of(const MixedPoint& p);
Key key_of(const SemiPair& p);
Key key_of(const VectorSubtree& V);
Key key_of(const USpace& U);
Key key_of(const DisjointFamily& F);
Key key_of(const VectorWord& f);

// A materialized domain in canonical order with an index map.
class Domain {
 public:
  static std::shared_ptr<const Domain> make(const DomainDescriptor& D, std::uint64_t max_items = std::uint64_t{1} << 24);
  // Size without materializing, or nullopt when only enumeration can tell.
  static std::optional<std::uint64_t> count(const DomainDescriptor& D);

  const DomainDescriptor& descriptor() const { return descriptor_; }
  const TreePtr& tree() const { return tree_; }
  std::uint64_t size() const { return keys_.size(); }
  const Key& key(std::uint64_t i) const { return keys_[i]; }
  const std::vector<Key>& keys() const { return keys_; }
  std::optional<std::uint64_t> index_of(const Key& key) const;

 private:
  DomainDescriptor descriptor_;
  TreePtr tree_;
  std::vector<Key> keys_;
  std::map<Key, std::uint64_t> index_;
};
using DomainPtr = std::shared_ptr<const Domain>;

enum class RuleKind { constant, projection, anchor, hash };

struct Rule {
  RuleKind kind = RuleKind::constant;
  int parameter = 0;         // color for constant, coordinate for projection
  std::uint64_t seed = 0;    // hash
};

const char* rule_kind_name(RuleKind kind);
RuleKind parse_rule_kind(const std::string& text);

class Coloring {
 public:
  using Evaluator = std::function<int(const Key&)>;

  static Coloring table(DomainPtr domain, std::vector<int> colors, int r);
  static Coloring rule(DomainDescriptor D, Rule rule, int r);
  static Coloring custom(DomainDescriptor D, Evaluator evaluate, int r);

  const DomainDescriptor& descriptor() const { return descriptor_; }
  int colors() const { return r_; }
  bool is_table() const { return static_cast<bool>(domain_); }
  const std::optional<Rule>& rule_spec() const { return rule_; }
  const DomainPtr& domain() const { return domain_; }
  const std::vector<int>& table_values() const { return table_; }

  // Color of an element; throws domain_mismatch for keys outside a table's domain.
  int operator()(const Key& key) const;
  // Table-backed copy when the domain fits, otherwise *this.
  Coloring materialized(std::uint64_t max_items = std::uint64_t{1} << 22) const;
  // Throws domain_mismatch unless the descriptor matches.
  void require_domain(const DomainDescriptor& D) const;
  void require_kind(DomainKind kind) const;

 private:
  DomainDescriptor descriptor_;
  int r_ = 1;
  DomainPtr domain_;
  std::vector<int> table_;
  std::optional<Rule> rule_;
  Evaluator evaluate_;
};

std::uint64_t splitmix64(std::uint64_t x);

// ---------------------------------------------------------------- checkers

struct Violation {
  Key first, second;
  int first_color = 0, second_color = 0;
};

struct Verdict {
  bool holds = true;
  std::optional<Violation> violation;  // first disagreement in enumeration order
  std::uint64_t evaluated = 0;
};

struct PartitionCertificate {
  std::vector<int> first;   // Γ_1 (component indices) or B_1 (node indices)
  std::vector<int> second;  // Γ_2 or B_2
  bool operator==(const PartitionCertificate&) const = default;
};

struct PartitionVerdict {
  std::optional<PartitionCertificate> certificate;
  std::vector<Violation> rejected;  // one violation per rejected partition, in search order
};

Verdict check_strongly_insensitive(const Coloring& c, const LinearWord& w, int kappa);
Verdict check_L_insensitive(const Coloring& c, const LinearWord& w, const std::vector<int>& L, int kappa);
Verdict check_c_good(const Coloring& c, const MixedWord& F);
Verdict check_branch_sensitive(const Coloring& c, const MixedWord& F);
PartitionVerdict check_smooth(const Coloring& c);
// Nodes of A from the first l nodes in ≼, or the root when l = 0.
std::vector<NodeIndex> simple_frontier(const Tree& tree, int l);
PartitionVerdict check_simple(const Coloring& c, const TreeWord& f);
Verdict check_block_insensitive(const Coloring& c, const LinearWord& w, const std::vector<std::vector<int>>& groups, int block);
// Monochromatic on a list of keys.
Verdict check_monochromatic(const Coloring& c, const std::vector<Key>& keys);

// Subsets of {0,...,size-1} ordered by cardinality, then lexicographically.
std::vector<std::vector<int>> subsets_by_size(int size);

}  // namespace dr
