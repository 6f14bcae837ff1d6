#include <algorithm>
#include <map>
#include <set>

#include "dualramsey/search.hpp"

namespace dr {

namespace {

constexpr std::pair<Statement, const char*> kStatementNames[] = {
    {Statement::HJ, "HJ"},           {Statement::MHJ, "MHJ"},         {Statement::TGR, "TGR"},
    {Statement::PTGR, "PTGR"},       {Statement::CT, "CT"},           {Statement::MT, "MT"},
    {Statement::SUBSETS, "SUBSETS"}, {Statement::PRODUCT_TGR, "PRODUCT_TGR"}, {Statement::TREE_HJ, "TREE_HJ"},
};

void require(bool ok, const std::string& what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

bool tree_statement(Statement s) {
  return s != Statement::HJ && s != Statement::MHJ && s != Statement::MT;
}

// Witness dimension: TREE_HJ asks for a k-dimensional subspace, every other statement for an m-dimensional one.
int witness_dimension(const Instance& inst) { return inst.statement == Statement::TREE_HJ ? inst.k : inst.m; }

std::vector<Key> family_keys(const Instance& inst, const WitnessObject& object) {
  std::vector<Key> keys;
  const int ell = inst.alphabet;
  switch (inst.statement) {
    case Statement::HJ:
    case Statement::MHJ:
      for (const ConstantWord& w : linear_subspace(std::get<LinearWord>(object), inst.k)) keys.push_back(key_of(w));
      break;
    case Statement::TGR:
      for (const TreeWord& g : subwords(std::get<TreeWord>(object), inst.k, ell)) keys.push_back(key_of(g));
      break;
    case Statement::PTGR:
      for (const SemiPair& p : semi_pairs(std::get<TreeWord>(object), inst.l, ell)) keys.push_back(key_of(p));
      break;
    case Statement::CT:
      for (const VectorSubtree& V : enumerate_ct(std::get<VectorSubtree>(object), inst.k)) keys.push_back(key_of(V));
      break;
    case Statement::MT:
      for (const DisjointFamily& F : ds_enumerate(std::get<DisjointFamily>(object), inst.k)) keys.push_back(key_of(F));
      break;
    case Statement::SUBSETS:
      for (const USpace& U : uspace_enumerate(std::get<USpace>(object), inst.k)) keys.push_back(key_of(U));
      break;
    case Statement::PRODUCT_TGR:
      for (const VectorWord& g : vector_subwords(std::get<VectorWord>(object), inst.k, ell)) keys.push_back(key_of(g));
      break;
    case Statement::TREE_HJ:
      fail(Errc::internal, "c-good subspaces are not a single family");
  }
  return keys;
}

// Groups of a c-good check: points sharing their D_2 nodes and the letters there.
std::vector<std::vector<Key>> c_good_groups(const Instance& inst, const MixedWord& F) {
  std::vector<std::size_t> points;
  for (std::size_t i = 0; i < inst.roles.size(); ++i)
    if (inst.roles[i] == Role::point) points.push_back(i);
  std::map<Key, std::vector<Key>> groups;
  for (const MixedPoint& p : mixed_span(F, inst.roles, inst.alphabet, false)) {
    Key group;
    for (std::size_t j = 0; j < points.size(); ++j) {
      NodeIndex t = p.nodes[j];
      group.push_back(static_cast<std::int32_t>(t));
      group.push_back(p.words[points[j]][t]);
    }
    groups[group].push_back(key_of(p));
  }
  std::vector<std::vector<Key>> out;
  for (auto& [g, members] : groups) out.push_back(std::move(members));
  return out;
}

VectorSubtree full_carrier(const TreePtr& tree, int d) {
  return VectorSubtree{std::vector<Subtree>(static_cast<std::size_t>(d), full_subtree(tree))};
}

}  // namespace

const char* statement_name(Statement s) {
  for (const auto& [k, name] : kStatementNames)
    if (k == s) return name;
  return "unknown";
}

Statement parse_statement(const std::string& text) {
  for (const auto& [k, name] : kStatementNames)
    if (text == name) return k;
  fail(Errc::parse_error, "unknown statement '" + text + "'");
}

int smallest_size(const Instance& inst) {
  switch (inst.statement) {
    case Statement::HJ:
      return 1;
    case Statement::TREE_HJ:
      return std::max(1, inst.k);
    default:
      return std::max(1, inst.m);
  }
}

void validate_instance(const Instance& inst, int n) {
  require(inst.r >= 1, "r must be >= 1");
  require(n >= 1, "n must be >= 1");
  switch (inst.statement) {
    case Statement::HJ:
      require(inst.k >= 1, "k (alphabet size) must be >= 1");
      break;
    case Statement::MHJ:
      require(inst.k >= 1, "k (alphabet size) must be >= 1");
      require(inst.m >= 1 && inst.m <= n, "m must satisfy 1 <= m <= N");
      break;
    case Statement::PTGR:
      require(inst.l >= 0, "l must be >= 0");
      require(inst.m >= 1 && inst.m <= n, "m must satisfy 1 <= m <= n");
      break;
    case Statement::TREE_HJ:
      require(!inst.roles.empty(), "TREE_HJ needs at least one component role");
      require(inst.k >= 1 && inst.k <= n, "k must satisfy 1 <= k <= n");
      break;
    default:
      require(inst.k >= 1 && inst.k <= inst.m && inst.m <= n, "parameters must satisfy 1 <= k <= m <= n");
  }
  if (tree_statement(inst.statement)) {
    require(inst.b >= 1, "b must be >= 1");
    validate_shape(Shape{inst.b, n});
  }
  if (inst.statement != Statement::HJ && inst.statement != Statement::MHJ) require(inst.alphabet >= 1, "l (alphabet size) must be >= 1");
  if (inst.statement == Statement::CT || inst.statement == Statement::PRODUCT_TGR) require(inst.d >= 1, "d must be >= 1");
}

DomainDescriptor instance_domain(const Instance& inst, int n) {
  validate_instance(inst, n);
  DomainDescriptor D;
  if (tree_statement(inst.statement)) {
    D.branching = inst.b;
    D.depth = n;
  }
  switch (inst.statement) {
    case Statement::HJ:
    case Statement::MHJ:
      D.kind = DomainKind::product;
      D.alphabet = inst.k;
      D.length = n;
      break;
    case Statement::TGR:
      D.kind = DomainKind::variable_words;
      D.alphabet = inst.alphabet;
      D.k = inst.k;
      break;
    case Statement::PTGR:
      D.kind = DomainKind::semi_pairs;
      D.alphabet = inst.alphabet;
      D.l = inst.l;
      break;
    case Statement::CT:
      D.kind = DomainKind::ct;
      D.d = inst.d;
      D.k = inst.k;
      break;
    case Statement::MT:
      D.kind = DomainKind::ds;
      D.length = n;
      D.k = inst.k;
      break;
    case Statement::SUBSETS:
      D.kind = DomainKind::uspace;
      D.k = inst.k;
      break;
    case Statement::PRODUCT_TGR:
      D.kind = DomainKind::vector_words;
      D.alphabet = inst.alphabet;
      D.d = inst.d;
      D.k = inst.k;
      break;
    case Statement::TREE_HJ:
      D.kind = DomainKind::mixed;
      D.alphabet = inst.alphabet;
      D.roles = inst.roles;
      break;
  }
  validate(D);
  return D;
}

Prepared prepare(const Instance& inst, int n, const SearchBudget& budget) {
  Prepared out;
  out.instance = inst;
  out.n = n;
  out.domain = Domain::make(instance_domain(inst, n), budget.max_domain);
  const TreePtr& tree = out.domain->tree();
  const int ell = inst.alphabet;
  const int dim = witness_dimension(inst);
  EnumerationBudget eb;
  eb.max_items = budget.max_candidates;
  auto add = [&](WitnessObject w) { out.candidates.push_back(std::move(w)); };
  switch (inst.statement) {
    case Statement::HJ:
    case Statement::MHJ:
      for (LinearWord& w : block_words(n, dim, inst.k, budget.max_candidates)) add(std::move(w));
      break;
    case Statement::TGR:
    case Statement::PTGR:
      for (TreeWord& f : variable_words(tree, dim, ell, eb)) add(std::move(f));
      break;
    case Statement::CT:
      for (VectorSubtree& S : enumerate_ct(full_carrier(tree, inst.d), dim, eb)) add(std::move(S));
      break;
    case Statement::MT:
      for (DisjointFamily& F : ds_enumerate(singletons_family(n), dim, budget.max_candidates)) add(std::move(F));
      break;
    case Statement::SUBSETS:
      for (USpace& U : uspace_enumerate(finest_uspace(tree), dim, eb)) add(std::move(U));
      break;
    case Statement::PRODUCT_TGR:
      for (VectorWord& f : vector_words(tree, inst.d, dim, ell, eb)) add(std::move(f));
      break;
    case Statement::TREE_HJ:
      for (MixedWord& F : mixed_words(tree, inst.roles, ell, dim, eb)) add(std::move(F));
      break;
  }
  auto index = [&](const Key& key) {
    auto i = out.domain->index_of(key);
    if (!i) fail(Errc::internal, "a candidate family leaves the coloring domain");
    return static_cast<std::uint32_t>(*i);
  };
  for (const WitnessObject& w : out.candidates) {
    std::vector<std::vector<std::uint32_t>> groups;
    if (inst.statement == Statement::TREE_HJ) {
      for (const auto& members : c_good_groups(inst, std::get<MixedWord>(w))) {
        groups.emplace_back();
        for (const Key& k : members) groups.back().push_back(index(k));
      }
    } else {
      groups.emplace_back();
      for (const Key& k : family_keys(inst, w)) groups.back().push_back(index(k));
    }
    out.groups.push_back(std::move(groups));
  }
  return out;
}

Transcript validate_witness(const Coloring& c, const Instance& inst, int n, const WitnessObject& object) {
  const DomainDescriptor D = instance_domain(inst, n);
  c.require_domain(D);
  const int dim = witness_dimension(inst);
  auto tree = tree_statement(inst.statement) ? Tree::make(Shape{inst.b, n}) : TreePtr{};
  auto malformed = [](const std::string& why) { return Transcript{"well-formed: " + why, false, 0}; };
  // Shape checks first: a witness must be a member of the candidate space.
  switch (inst.statement) {
    case Statement::HJ:
    case Statement::MHJ: {
      const auto* w = std::get_if<LinearWord>(&object);
      if (!w) fail(Errc::invalid_argument, "this statement takes a linear variable word");
      if (static_cast<int>(w->entries.size()) != n || w->dimension != dim || !is_block_word(*w)) return malformed("block word");
      for (Entry e : w->entries)
        if (!is_variable(e) && e >= inst.k) return malformed("letter outside the alphabet");
      break;
    }
    case Statement::TGR:
    case Statement::PTGR: {
      const auto* f = std::get_if<TreeWord>(&object);
      if (!f) fail(Errc::invalid_argument, "this statement takes a tree variable word");
      if (!f->tree || f->tree->shape() != tree->shape()) return malformed("tree shape");
      if (!is_valid_word(*f, inst.alphabet, WordKind::complete, dim)) return malformed("variable word of height m");
      break;
    }
    case Statement::CT: {
      const auto* S = std::get_if<VectorSubtree>(&object);
      if (!S) fail(Errc::invalid_argument, "CT takes a vector subtree");
      if (static_cast<int>(S->parts.size()) != inst.d || !is_vector_complete_skew(*S, dim)) return malformed("vector complete skew subtree");
      for (const Subtree& p : S->parts)
        if (!p.tree || p.tree->shape() != tree->shape()) return malformed("tree shape");
      break;
    }
    case Statement::MT: {
      const auto* F = std::get_if<DisjointFamily>(&object);
      if (!F) fail(Errc::invalid_argument, "MT takes a disjoint family");
      if (static_cast<int>(F->size()) != dim || !is_disjoint_family(*F)) return malformed("disjoint family");
      for (const Block& g : *F)
        for (int x : g)
          if (x < 0 || x >= n) return malformed("element outside {0,...,n-1}");
      break;
    }
    case Statement::SUBSETS: {
      const auto* U = std::get_if<USpace>(&object);
      if (!U) fail(Errc::invalid_argument, "SUBSETS takes a U-space");
      if (!U->anchors.tree || U->anchors.tree->shape() != tree->shape() || !is_uspace(*U, dim)) return malformed("U-space");
      break;
    }
    case Statement::PRODUCT_TGR: {
      const auto* f = std::get_if<VectorWord>(&object);
      if (!f) fail(Errc::invalid_argument, "PRODUCT_TGR takes a vector variable word");
      if (static_cast<int>(f->size()) != inst.d) return malformed("component count");
      for (const TreeWord& g : *f)
        if (!g.tree || g.tree->shape() != tree->shape()) return malformed("tree shape");
      if (!is_vector_word(*f, dim)) return malformed("vector variable word of height m");
      break;
    }
    case Statement::TREE_HJ: {
      const auto* F = std::get_if<MixedWord>(&object);
      if (!F) fail(Errc::invalid_argument, "TREE_HJ takes a mixed variable word");
      auto extended = Tree::make(Shape{inst.b, n + 1});
      if (F->words.size() != inst.roles.size() || !is_mixed_word(*F, inst.roles, *extended)) return malformed("mixed variable word");
      for (const TreeWord& g : F->words)
        if (!g.tree || g.tree->shape() != tree->shape() || word_height(g) != dim) return malformed("dimension");
      Verdict v = check_c_good(c, *F);
      return Transcript{"check_c_good", v.holds, v.evaluated};
    }
  }
  Verdict v = check_monochromatic(c, family_keys(inst, object));
  return Transcript{"check_monochromatic", v.holds, v.evaluated};
}

}  // namespace dr
