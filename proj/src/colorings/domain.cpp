#include <algorithm>
#include <set>
#include <sstream>

#include "dualramsey/coloring.hpp"

namespace dr {

namespace {

constexpr std::pair<DomainKind, const char*> kKindNames[] = {
    {DomainKind::product, "product"},       {DomainKind::kappa_product, "kappa_product"},
    {DomainKind::block_product, "block_product"}, {DomainKind::words, "words"},
    {DomainKind::variable_words, "variable_words"}, {DomainKind::mixed, "mixed"},
    {DomainKind::semi_pairs, "semi_pairs"}, {DomainKind::ct, "ct"},
    {DomainKind::uspace, "uspace"},         {DomainKind::ds, "ds"},
    {DomainKind::vector_words, "vector_words"},
};

constexpr std::uint64_t kCountCap = std::uint64_t{1} << 62;

// Saturating product; nullopt past the cap.
std::optional<std::uint64_t> times(std::optional<std::uint64_t> a, std::uint64_t b) {
  if (!a) return std::nullopt;
  if (b != 0 && *a > kCountCap / b) return std::nullopt;
  return *a * b;
}

std::optional<std::uint64_t> power(std::uint64_t base, std::uint64_t exponent) {
  std::optional<std::uint64_t> out = 1;
  for (std::uint64_t i = 0; i < exponent && out; ++i) out = times(out, base);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

bool uses_tree(DomainKind kind) {
  switch (kind) {
    case DomainKind::product:
    case DomainKind::kappa_product:
    case DomainKind::block_product:
    case DomainKind::ds:
      return false;
    default:
      return true;
  }
}

// Positions available to coordinate j of a block product.
std::vector<int> block_positions(const DomainDescriptor& D, std::size_t j) {
  std::vector<int> out;
  for (int i : D.groups[j])
    for (int p = i * D.block; p < (i + 1) * D.block; ++p) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

template <class Visit>
void for_each_letters(int length, int alphabet, Visit&& visit) {
  ConstantWord w(static_cast<std::size_t>(length), 0);
  while (true) {
    visit(w);
    int i = length - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (int i = from; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

const char* domain_kind_name(DomainKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

DomainKind parse_domain_kind(const std::string& text) {
  for (const auto& [k, name] : kKindNames)
    if (text == name) return k;
  fail(Errc::parse_error, "unknown domain kind '" + text + "'");
}

std::string describe(const DomainDescriptor& D) {
  std::ostringstream out;
  out << domain_kind_name(D.kind);
  if (uses_tree(D.kind)) out << " b=" << D.branching << " n=" << D.depth;
  if (D.kind != DomainKind::ct && D.kind != DomainKind::uspace && D.kind != DomainKind::ds) out << " l=" << D.alphabet;
  switch (D.kind) {
    case DomainKind::product:
      out << " N=" << D.length;
      break;
    case DomainKind::kappa_product:
      out << " N=" << D.length << " kappa=" << D.kappa;
      break;
    case DomainKind::block_product:
      out << " N=" << D.length << " q=" << D.block << " groups=" << D.groups.size();
      break;
    case DomainKind::variable_words:
    case DomainKind::uspace:
      out << " k=" << D.k;
      break;
    case DomainKind::mixed:
      out << " roles=";
      for (Role r : D.roles) out << static_cast<int>(r);
      break;
    case DomainKind::semi_pairs:
      out << " sz=" << D.l;
      break;
    case DomainKind::ct:
    case DomainKind::vector_words:
      out << " d=" << D.d << " k=" << D.k;
      break;
    case DomainKind::ds:
      out << " n=" << D.length << " k=" << D.k;
      break;
    case DomainKind::words:
      break;
  }
  return out.str();
}

void validate(const DomainDescriptor& D) {
  require(D.alphabet >= 1, "alphabet size must be >= 1");
  if (uses_tree(D.kind)) {
    require(D.branching >= 1, "b must be >= 1");
    require(D.depth >= 1, "n must be >= 1");
    validate_shape(Shape{D.branching, D.depth});
  }
  switch (D.kind) {
    case DomainKind::product:
      require(D.length >= 1, "N must be >= 1");
      break;
    case DomainKind::kappa_product:
      require(D.length >= 1, "N must be >= 1");
      require(D.kappa >= 1 && D.kappa <= D.length, "κ must satisfy 1 <= κ <= N");
      break;
    case DomainKind::block_product: {
      require(D.block >= 1, "q must be >= 1");
      require(!D.groups.empty(), "at least one group G_j is required");
      std::set<int> seen;
      for (const auto& g : D.groups) {
        require(!g.empty(), "groups must be nonempty");
        for (int i : g) {
          require(i >= 0 && (i + 1) * D.block <= D.length, "group index outside {0,...,N/q - 1}");
          require(seen.insert(i).second, "groups must be pairwise disjoint");
        }
      }
      break;
    }
    case DomainKind::words:
      break;
    case DomainKind::variable_words:
      require(D.k >= 1 && D.k <= D.depth, "k must satisfy 1 <= k <= n");
      break;
    case DomainKind::mixed:
      require(!D.roles.empty(), "W^D needs d >= 1");
      break;
    case DomainKind::semi_pairs:
      require(D.l >= 0, "l must be >= 0");
      break;
    case DomainKind::ct:
    case DomainKind::vector_words:
      require(D.d >= 1, "d must be >= 1");
      require(D.k >= 1 && D.k <= D.depth, "k must satisfy 1 <= k <= n");
      break;
    case DomainKind::uspace:
      require(D.k >= 1 && D.k <= D.depth, "k must satisfy 1 <= k <= n");
      break;
    case DomainKind::ds:
      require(D.k >= 1 && D.k <= D.length, "DS_k(n) needs 1 <= k <= n");
      break;
  }
}

Key key_of(const ConstantWord& w, const std::vector<int>& positions) {
  Key k(w.begin(), w.end());
  k.insert(k.end(), positions.begin(), positions.end());
  return k;
}

Key key_of(const ConstantWord& w) { return Key(w.begin(), w.end()); }

Key key_of(const TreeWord& f) { return Key(f.entries.begin(), f.entries.end()); }

Key key_of(const MixedPoint& p) {
  Key k;
  for (const auto& w : p.words) k.insert(k.end(), w.begin(), w.end());
  for (NodeIndex x : p.branches) k.push_back(static_cast<std::int32_t>(x));
  for (NodeIndex t : p.nodes) k.push_back(static_cast<std::int32_t>(t));
  return k;
}

Key key_of(const SemiPair& p) {
  Key k(p.S.nodes.begin(), p.S.nodes.end());
  k.push_back(kKeySeparator);
  k.insert(k.end(), p.g.entries.begin(), p.g.entries.end());
  return k;
}

Key key_of(const VectorSubtree& V) {
  Key k;
  for (const Subtree& S : V.parts) {
    k.insert(k.end(), S.nodes.begin(), S.nodes.end());
    k.push_back(kKeySeparator);
  }
  return k;
}

Key key_of(const USpace& U) {
  Key k;
  for (std::size_t i = 0; i < U.parts.size(); ++i) {
    k.push_back(static_cast<std::int32_t>(U.anchors.nodes[i]));
    k.insert(k.end(), U.parts[i].begin(), U.parts[i].end());
    k.push_back(kKeySeparator);
  }
  return k;
}

Key key_of(const DisjointFamily& F) {
  Key k;
  for (const Block& g : F) {
    k.insert(k.end(), g.begin(), g.end());
    k.push_back(kKeySeparator);
  }
  return k;
}

Key key_of(const VectorWord& f) {
  Key k;
  for (const TreeWord& g : f) k.insert(k.end(), g.entries.begin(), g.entries.end());
  return k;
}

std::optional<std::uint64_t> Domain::count(const DomainDescriptor& D) {
  validate(D);
  const auto ell = static_cast<std::uint64_t>(D.alphabet);
  switch (D.kind) {
    case DomainKind::product:
      return power(ell, static_cast<std::uint64_t>(D.length));
    case DomainKind::kappa_product:
      return times(power(ell, static_cast<std::uint64_t>(D.length)), binomial(D.length, D.kappa));
    case DomainKind::block_product: {
      auto out = power(ell, static_cast<std::uint64_t>(D.length));
      for (std::size_t j = 0; j < D.groups.size(); ++j) out = times(out, block_positions(D, j).size());
      return out;
    }
    case DomainKind::words:
      return power(ell, node_count(Shape{D.branching, D.depth}));
    case DomainKind::mixed: {
      Shape s{D.branching, D.depth};
      auto words = power(ell, node_count(s));
      std::optional<std::uint64_t> out = 1;
      for (Role r : D.roles) {
        out = words ? times(out, *words) : std::nullopt;
        if (r == Role::up) out = times(out, node_count(Shape{D.branching, D.depth + 1}) - node_count(s));
        if (r == Role::point) out = times(out, node_count(s));
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

std::shared_ptr<const Domain> Domain::make(const DomainDescriptor& D, std::uint64_t max_items) {
  validate(D);
  if (auto n = count(D); n && *n > max_items)
    fail(Errc::budget_exceeded, "domain " + describe(D) + " exceeds the materialization budget");
  auto dom = std::make_shared<Domain>();
  dom->descriptor_ = D;
  if (uses_tree(D.kind)) dom->tree_ = Tree::make(Shape{D.branching, D.depth});
  auto& keys = dom->keys_;
  auto push = [&](Key k) {
    if (keys.size() >= max_items) fail(Errc::budget_exceeded, "domain " + describe(D) + " exceeds the materialization budget");
    keys.push_back(std::move(k));
  };
  EnumerationBudget budget{max_items, std::uint64_t{1} << 34};
  const TreePtr& tree = dom->tree_;
  switch (D.kind) {
    case DomainKind::product:
      for_each_letters(D.length, D.alphabet, [&](const ConstantWord& w) { push(key_of(w)); });
      break;
    case DomainKind::kappa_product: {
      auto subsets = k_subsets(D.length, D.kappa);
      for_each_letters(D.length, D.alphabet, [&](const ConstantWord& w) {
        for (const auto& s : subsets) push(key_of(w, s));
      });
      break;
    }
    case DomainKind::block_product: {
      std::vector<std::vector<int>> choices;
      for (std::size_t j = 0; j < D.groups.size(); ++j) choices.push_back(block_positions(D, j));
      for_each_letters(D.length, D.alphabet, [&](const ConstantWord& w) {
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
          std::vector<int> p;
          for (std::size_t j = 0; j < pick.size(); ++j) p.push_back(choices[j][pick[j]]);
          push(key_of(w, p));
          std::size_t j = pick.size();
          while (j > 0 && pick[j - 1] + 1 == choices[j - 1].size()) pick[--j] = 0;
          if (j == 0) break;
          ++pick[j - 1];
        }
      });
      break;
    }
    case DomainKind::words:
      for_each_letters(static_cast<int>(tree->size()), D.alphabet, [&](const ConstantWord& w) { push(key_of(w)); });
      break;
    case DomainKind::variable_words:
      for (const TreeWord& f : variable_words(tree, D.k, D.alphabet, budget)) push(key_of(f));
      break;
    case DomainKind::mixed:
      for (const MixedPoint& p : mixed_points(tree, D.roles, D.alphabet, false, max_items)) push(key_of(p));
      break;
    case DomainKind::semi_pairs:
      for (const SemiPair& p : all_semi_pairs(tree, D.l, D.alphabet, budget)) push(key_of(p));
      break;
    case DomainKind::ct: {
      VectorSubtree carrier{std::vector<Subtree>(static_cast<std::size_t>(D.d), full_subtree(tree))};
      for (const VectorSubtree& V : enumerate_ct(carrier, D.k, budget)) push(key_of(V));
      break;
    }
    case DomainKind::uspace:
      for (const USpace& U : uspace_enumerate(finest_uspace(tree), D.k, budget)) push(key_of(U));
      break;
    case DomainKind::ds:
      for (const DisjointFamily& F : ds_enumerate(singletons_family(D.length), D.k, max_items)) push(key_of(F));
      break;
    case DomainKind::vector_words:
      for (const VectorWord& f : vector_words(tree, D.d, D.k, D.alphabet, budget)) push(key_of(f));
      break;
  }
  for (std::uint64_t i = 0; i < keys.size(); ++i) dom->index_.emplace(keys[i], i);
  if (dom->index_.size() != keys.size()) fail(Errc::internal, "domain enumeration produced duplicate elements");
  return dom;
}

std::optional<std::uint64_t> Domain::index_of(const Key& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace dr
