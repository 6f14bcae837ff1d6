#include <algorithm>
#include <map>
#include <unordered_map>

#include "dualramsey/coloring.hpp"

namespace dr {

namespace {

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::int32_t v : k) h = splitmix64(h ^ static_cast<std::uint32_t>(v));
    return static_cast<std::size_t>(h);
  }
};

// Every group must be monochromatic; stops at the first disagreement.
class GroupCheck {
 public:
  bool add(const Key& group, const Key& element, int color) {
    ++verdict_.evaluated;
    auto [it, fresh] = first_.try_emplace(group, element, color);
    if (!fresh && it->second.second != color) {
      verdict_.holds = false;
      verdict_.violation = Violation{it->second.first, element, it->second.second, color};
      return false;
    }
    return true;
  }
  bool ok() const { return verdict_.holds; }
  Verdict verdict() && { return std::move(verdict_); }

 private:
  std::unordered_map<Key, std::pair<Key, int>, KeyHash> first_;
  Verdict verdict_;
};

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

template <class Visit>
void for_each_assignment(int dimension, int alphabet, Visit&& visit) {
  std::vector<Entry> a(static_cast<std::size_t>(dimension), 0);
  while (true) {
    if (!visit(a)) return;
    int i = dimension - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == alphabet - 1) a[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++a[static_cast<std::size_t>(i)];
  }
}

void require_kappa_domain(const Coloring& c, const LinearWord& w, int kappa) {
  c.require_kind(DomainKind::kappa_product);
  const DomainDescriptor& D = c.descriptor();
  if (D.length != static_cast<int>(w.entries.size())) fail(Errc::domain_mismatch, "word length differs from the coloring's N");
  if (D.kappa != kappa) fail(Errc::domain_mismatch, "κ differs from the coloring's κ");
  require_block_word(w);
  if (kappa < 1 || kappa > w.dimension) fail(Errc::invalid_argument, "κ must satisfy 1 <= κ <= m");
}

// Shared body of the two *insensitivity checkers; token(j, a_j) is the class of coordinate j outside F.
template <class Token>
Verdict insensitive(const Coloring& c, const LinearWord& w, int kappa, Token&& token) {
  const int alphabet = c.descriptor().alphabet;
  std::vector<int> mins = minima(w);
  auto subsets = k_subsets(w.dimension, kappa);
  GroupCheck check;
  for (std::size_t fi = 0; fi < subsets.size() && check.ok(); ++fi) {
    const auto& F = subsets[fi];
    std::vector<int> marked;
    std::vector<char> in_f(static_cast<std::size_t>(w.dimension), 0);
    for (int i : F) {
      marked.push_back(mins[static_cast<std::size_t>(i)]);
      in_f[static_cast<std::size_t>(i)] = 1;
    }
    for_each_assignment(w.dimension, alphabet, [&](const std::vector<Entry>& a) {
      Key group{static_cast<std::int32_t>(fi)};
      for (std::size_t j = 0; j < a.size(); ++j) group.push_back(in_f[j] ? a[j] : token(a[j]));
      Key element = key_of(substitute(w, a), marked);
      return check.add(group, element, c(element));
    });
  }
  return std::move(check).verdict();
}

std::vector<Role> mixed_roles(const Coloring& c, const MixedWord& F) {
  c.require_kind(DomainKind::mixed);
  const DomainDescriptor& D = c.descriptor();
  if (F.words.size() != D.roles.size()) fail(Errc::domain_mismatch, "mixed word dimension differs from the coloring's d");
  for (const TreeWord& f : F.words)
    if (f.tree->shape() != Shape{D.branching, D.depth}) fail(Errc::domain_mismatch, "mixed word tree differs from the coloring's tree");
  return D.roles;
}

}  // namespace

std::vector<std::vector<int>> subsets_by_size(int size) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= size; ++k)
    for (auto& s : k_subsets(size, k)) out.push_back(std::move(s));
  return out;
}

Verdict check_strongly_insensitive(const Coloring& c, const LinearWord& w, int kappa) {
  require_kappa_domain(c, w, kappa);
  return insensitive(c, w, kappa, [](Entry) { return kKeySeparator; });
}

Verdict check_L_insensitive(const Coloring& c, const LinearWord& w, const std::vector<int>& L, int kappa) {
  require_kappa_domain(c, w, kappa);
  const int alphabet = c.descriptor().alphabet;
  if (L.empty()) fail(Errc::invalid_argument, "L must be nonempty");
  std::vector<char> in_l(static_cast<std::size_t>(alphabet), 0);
  for (int a : L) {
    if (a < 0 || a >= alphabet) fail(Errc::invalid_argument, "L is not a subset of the alphabet");
    in_l[static_cast<std::size_t>(a)] = 1;
  }
  // Outside F, two assignments may differ only where both letters lie in L.
  return insensitive(c, w, kappa, [&](Entry a) { return in_l[static_cast<std::size_t>(a)] ? kKeySeparator : a; });
}

Verdict check_c_good(const Coloring& c, const MixedWord& F) {
  std::vector<Role> roles = mixed_roles(c, F);
  std::vector<std::size_t> points;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == Role::point) points.push_back(i);
  GroupCheck check;
  for (const MixedPoint& p : mixed_span(F, roles, c.descriptor().alphabet, false)) {
    Key group;
    for (std::size_t j = 0; j < points.size(); ++j) {
      NodeIndex t = p.nodes[j];
      group.push_back(static_cast<std::int32_t>(t));
      group.push_back(p.words[points[j]][t]);
    }
    Key element = key_of(p);
    if (!check.add(group, element, c(element))) break;
  }
  return std::move(check).verdict();
}

Verdict check_branch_sensitive(const Coloring& c, const MixedWord& F) {
  std::vector<Role> roles = mixed_roles(c, F);
  if (std::count(roles.begin(), roles.end(), Role::point) != 0) fail(Errc::invalid_argument, "branch sensitivity needs D_2 empty");
  const Tree& base = *F.words.front().tree;
  auto extended = Tree::make(Shape{base.branching(), base.depth() + 1});
  std::vector<std::size_t> ups;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == Role::up) ups.push_back(i);
  GroupCheck check;
  // Only D_1 coordinates are constrained; D_0 words may differ freely.
  for (const MixedPoint& p : mixed_span(F, roles, c.descriptor().alphabet, false)) {
    Key group;
    for (std::size_t j = 0; j < ups.size(); ++j) {
      NodeIndex x = p.branches[j];
      group.push_back(static_cast<std::int32_t>(x));
      for (int len = 0; len < extended->length(x); ++len) group.push_back(p.words[ups[j]][extended->ancestor(x, len)]);
    }
    Key element = key_of(p);
    if (!check.add(group, element, c(element))) break;
  }
  return std::move(check).verdict();
}

PartitionVerdict check_smooth(const Coloring& c) {
  c.require_kind(DomainKind::mixed);
  const DomainDescriptor& D = c.descriptor();
  auto tree = Tree::make(Shape{D.branching, D.depth});
  std::vector<MixedPoint> all = mixed_points(tree, D.roles, D.alphabet, false);
  std::vector<int> colors;
  colors.reserve(all.size());
  for (const MixedPoint& p : all) colors.push_back(c(key_of(p)));
  std::vector<int> point_components;
  for (std::size_t i = 0; i < D.roles.size(); ++i)
    if (D.roles[i] == Role::point) point_components.push_back(static_cast<int>(i));
  const std::size_t N = tree->size();
  PartitionVerdict out;
  for (const auto& gamma2_slots : subsets_by_size(static_cast<int>(point_components.size()))) {
    std::vector<char> in_gamma2(point_components.size(), 0);
    for (int s : gamma2_slots) in_gamma2[static_cast<std::size_t>(s)] = 1;
    GroupCheck check;
    for (std::size_t e = 0; e < all.size(); ++e) {
      const MixedPoint& p = all[e];
      Key group;
      std::size_t slot = 0;
      for (std::size_t i = 0; i < D.roles.size(); ++i) {
        const ConstantWord& w = p.words[i];
        bool cone = D.roles[i] == Role::point && in_gamma2[slot];
        if (!cone) {
          group.insert(group.end(), w.begin(), w.end());
        } else {
          NodeIndex t = p.nodes[slot];
          group.push_back(static_cast<std::int32_t>(t));
          for (NodeIndex s = 0; s < N; ++s)
            if (!tree->prefix(t, s)) group.push_back(w[s]);
        }
        if (D.roles[i] == Role::point) ++slot;
        group.push_back(kKeySeparator);
      }
      for (NodeIndex x : p.branches) group.push_back(static_cast<std::int32_t>(x));
      if (!check.add(group, key_of(p), colors[e])) break;
    }
    Verdict v = std::move(check).verdict();
    if (v.holds) {
      PartitionCertificate cert;
      for (std::size_t s = 0; s < point_components.size(); ++s)
        (in_gamma2[s] ? cert.second : cert.first).push_back(point_components[s]);
      out.certificate = std::move(cert);
      return out;
    }
    out.rejected.push_back(*v.violation);
  }
  return out;
}

std::vector<NodeIndex> simple_frontier(const Tree& tree, int l) {
  if (l < 0) fail(Errc::invalid_argument, "l must be >= 0");
  if (l == 0) return {0};
  if (static_cast<NodeIndex>(l) > tree.size()) fail(Errc::invalid_argument, "l exceeds the number of nodes");
  std::vector<NodeIndex> T(tree.by_llex().begin(), tree.by_llex().begin() + l);
  std::sort(T.begin(), T.end());
  std::vector<NodeIndex> A;
  for (NodeIndex t : T) {
    if (tree.length(t) + 1 >= tree.depth()) continue;
    for (int j = 0; j < tree.branching(); ++j) {
      NodeIndex s = tree.child(t, j);
      if (!std::binary_search(T.begin(), T.end(), s)) A.push_back(s);
    }
  }
  std::sort(A.begin(), A.end());
  return A;
}

PartitionVerdict check_simple(const Coloring& c, const TreeWord& f) {
  c.require_kind(DomainKind::semi_pairs);
  const DomainDescriptor& D = c.descriptor();
  const Tree& T = *f.tree;
  if (T.shape() != Shape{D.branching, D.depth}) fail(Errc::domain_mismatch, "word tree differs from the coloring's tree");
  std::vector<SemiPair> pairs = semi_pairs(f, D.l, D.alphabet);
  std::vector<int> colors;
  std::vector<Subtree> inner;
  std::vector<SubtreeLayout> lays;
  for (const SemiPair& p : pairs) {
    colors.push_back(c(key_of(p)));
    inner.push_back(interior(p.S));
    lays.push_back(layout(p.S));
  }
  std::vector<NodeIndex> A = simple_frontier(T, D.l);
  std::vector<Node> paths;
  for (NodeIndex t : A) paths.push_back(T.node(t));
  PartitionVerdict out;
  for (const auto& b2 : subsets_by_size(static_cast<int>(A.size()))) {
    GroupCheck check;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const SemiPair& p = pairs[e];
      Key group(inner[e].nodes.begin(), inner[e].nodes.end());
      group.push_back(kKeySeparator);
      std::vector<NodeIndex> cones;
      for (int slot : b2) {
        auto image = follow_path(p.S, lays[e], paths[static_cast<std::size_t>(slot)]);
        group.push_back(image ? static_cast<std::int32_t>(*image) : kKeySeparator);
        if (image) cones.push_back(*image);
      }
      group.push_back(kKeySeparator);
      for (NodeIndex s = 0; s < T.size(); ++s) {
        bool hidden = std::any_of(cones.begin(), cones.end(), [&](NodeIndex a) { return T.prefix(a, s); });
        if (!hidden) group.push_back(p.g.entries[s]);
      }
      if (!check.add(group, key_of(p), colors[e])) break;
    }
    Verdict v = std::move(check).verdict();
    if (v.holds) {
      PartitionCertificate cert;
      std::vector<char> chosen(A.size(), 0);
      for (int slot : b2) chosen[static_cast<std::size_t>(slot)] = 1;
      for (std::size_t i = 0; i < A.size(); ++i) (chosen[i] ? cert.second : cert.first).push_back(static_cast<int>(A[i]));
      out.certificate = std::move(cert);
      return out;
    }
    out.rejected.push_back(*v.violation);
  }
  return out;
}

Verdict check_block_insensitive(const Coloring& c, const LinearWord& w, const std::vector<std::vector<int>>& groups, int block) {
  c.require_kind(DomainKind::block_product);
  const DomainDescriptor& D = c.descriptor();
  if (D.groups != groups || D.block != block || D.length != static_cast<int>(w.entries.size()))
    fail(Errc::domain_mismatch, "coloring domain does not match (G_j), q and N");
  require_block_word(w);
  auto sup = supports(w);
  for (std::size_t i = 0; i < sup.size(); ++i)
    for (int p : sup[i])
      if (p < static_cast<int>(i) * block || p >= static_cast<int>(i + 1) * block)
        fail(Errc::invalid_argument, "clause (a) violated: wildcard set of v_" + std::to_string(i) + " leaves I_" + std::to_string(i));
  for (const auto& g : groups)
    for (int i : g)
      if (i >= w.dimension) fail(Errc::invalid_argument, "group index exceeds the word's dimension");
  std::vector<int> mins = minima(w);
  std::vector<std::size_t> pick(groups.size(), 0);
  GroupCheck check;
  while (check.ok()) {
    std::vector<int> p, marked;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      p.push_back(groups[j][pick[j]]);
      marked.push_back(mins[static_cast<std::size_t>(p.back())]);
    }
    for_each_assignment(w.dimension, D.alphabet, [&](const std::vector<Entry>& a) {
      Key group(p.begin(), p.end());
      group.push_back(kKeySeparator);
      for (int i : p) group.push_back(a[static_cast<std::size_t>(i)]);
      Key element = key_of(substitute(w, a), marked);
      return check.add(group, element, c(element));
    });
    std::size_t j = groups.size();
    while (j > 0 && pick[j - 1] + 1 == groups[j - 1].size()) pick[--j] = 0;
    if (j == 0) break;
    ++pick[j - 1];
  }
  return std::move(check).verdict();
}

Verdict check_monochromatic(const Coloring& c, const std::vector<Key>& keys) {
  GroupCheck check;
  for (const Key& k : keys)
    if (!check.add({}, k, c(k))) break;
  return std::move(check).verdict();
}

}  // namespace dr
