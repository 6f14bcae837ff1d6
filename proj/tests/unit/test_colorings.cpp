#include <gtest/gtest.h>

#include "dualramsey/coloring.hpp"
#include "oracle.hpp"
#include "sampling.hpp"

using namespace dr;

namespace {

constexpr Entry V0 = linear_variable(0), V1 = linear_variable(1);

DomainDescriptor kappa_domain(int k, int N, int kappa) {
  DomainDescriptor D;
  D.kind = DomainKind::kappa_product;
  D.alphabet = k;
  D.length = N;
  D.kappa = kappa;
  return D;
}

DomainDescriptor mixed_domain(int b, int n, int ell, std::vector<Role> roles) {
  DomainDescriptor D;
  D.kind = DomainKind::mixed;
  D.branching = b;
  D.depth = n;
  D.alphabet = ell;
  D.roles = std::move(roles);
  return D;
}

DomainDescriptor semi_domain(int b, int n, int ell, int l) {
  DomainDescriptor D;
  D.kind = DomainKind::semi_pairs;
  D.branching = b;
  D.depth = n;
  D.alphabet = ell;
  D.l = l;
  return D;
}

Coloring hashed(const DomainDescriptor& D, int r, std::uint64_t seed) { return Coloring::rule(D, Rule{RuleKind::hash, 0, seed}, r); }

std::vector<std::vector<int>> assignments(int k, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  while (true) {
    out.push_back(a);
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == k) a[i++] = 0;
    if (i == a.size()) return out;
  }
}

// The L-insensitivity definition over every F and every admissible pair of assignments.
bool brute_L_insensitive(const Coloring& c, const LinearWord& w, const std::vector<int>& L, int kappa, int k) {
  const auto mins = minima(w);
  const auto all = assignments(k, w.dimension);
  auto in_L = [&](int a) { return std::count(L.begin(), L.end(), a) > 0; };
  for (const auto& F : subsets_by_size(w.dimension)) {
    if (static_cast<int>(F.size()) != kappa) continue;
    std::vector<int> pos;
    for (int i : F) pos.push_back(mins[static_cast<std::size_t>(i)]);
    for (const auto& a : all)
      for (const auto& b : all) {
        bool admissible = true;
        for (int j = 0; j < w.dimension && admissible; ++j) {
          const bool in_F = std::count(F.begin(), F.end(), j) > 0;
          const bool fixed = in_F || !in_L(a[j]) || !in_L(b[j]);
          if (fixed && a[j] != b[j]) admissible = false;
        }
        if (!admissible) continue;
        const std::vector<Entry> ea(a.begin(), a.end()), eb(b.begin(), b.end());
        if (c(key_of(substitute(w, ea), pos)) != c(key_of(substitute(w, eb), pos))) return false;
      }
  }
  return true;
}

std::vector<int> full_alphabet(int k) {
  std::vector<int> L(static_cast<std::size_t>(k));
  std::iota(L.begin(), L.end(), 0);
  return L;
}

}  // namespace

// ---------------------------------------------------------------- strongly and L-insensitive

TEST(StronglyInsensitive, Examples) {
  const auto D = kappa_domain(2, 4, 1);
  const LinearWord w{{V0, 0, V1, 1}, 2};
  EXPECT_TRUE(check_strongly_insensitive(Coloring::rule(D, Rule{}, 3), w, 1).holds);
  // Reads the letter at the marked position only.
  EXPECT_TRUE(check_strongly_insensitive(Coloring::rule(D, Rule{RuleKind::anchor}, 2), w, 1).holds);
  // Injective: every point its own color.
  const auto injective = Coloring::custom(
      D, [](const Key& key) { return key[0] + 2 * key[1] + 4 * key[2] + 8 * key[3] + 16 * key[4]; }, 64);
  const Verdict v = check_strongly_insensitive(injective, w, 1);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.violation.has_value());
  EXPECT_NE(v.violation->first_color, v.violation->second_color);
}

TEST(StronglyInsensitive, DomainMismatchIsReported) {
  const auto c = Coloring::rule(kappa_domain(2, 3, 1), Rule{}, 2);
  try {
    check_strongly_insensitive(c, LinearWord{{V0, 0, V1, 1}, 2}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain_mismatch);
  }
}

// Verdicts agree with the definition evaluated directly, for both outcomes.
TEST(LInsensitive, AgreesWithDefinition) {
  sampling::Rng rng(3);
  int held = 0, failed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int k = sampling::uniform(rng, 2, 3), N = sampling::uniform(rng, 2, 5);
    const int m = sampling::uniform(rng, 1, std::min(N, 3)), kappa = sampling::uniform(rng, 1, m);
    const auto D = kappa_domain(k, N, kappa);
    const LinearWord w = sampling::block_word(rng, m, N, k);
    const auto c = trial % 3 == 0 ? sampling::closed_coloring(D, w, {{0, 1}}, 2, rng()) : hashed(D, 2, rng());
    std::vector<int> L = trial % 2 ? std::vector<int>{0, 1} : full_alphabet(k);
    const bool expected = brute_L_insensitive(c, w, L, kappa, k);
    EXPECT_EQ(check_L_insensitive(c, w, L, kappa).holds, expected);
    (expected ? held : failed)++;
    if (L.size() == static_cast<std::size_t>(k)) EXPECT_EQ(check_strongly_insensitive(c, w, kappa).holds, expected);
  }
  EXPECT_GT(held, 0);
  EXPECT_GT(failed, 0);
}

TEST(LInsensitive, ConstantAndLetterValidation) {
  const auto D = kappa_domain(3, 3, 1);
  const LinearWord w{{V0, V1, 2}, 2};
  EXPECT_TRUE(check_L_insensitive(Coloring::rule(D, Rule{}, 2), w, {0, 2}, 1).holds);
  EXPECT_THROW(check_L_insensitive(Coloring::rule(D, Rule{}, 2), w, {0, 3}, 1), Error);
}

// Insensitivity passes to every further subspace Y = X[Y'].
TEST(LInsensitive, InheritedByFurtherSubspaces) {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3, N = sampling::uniform(rng, 3, 6), m = sampling::uniform(rng, 2, std::min(N, 3));
    const int kappa = sampling::uniform(rng, 1, m - 1);
    const auto D = kappa_domain(k, N, kappa);
    const LinearWord X = sampling::block_word(rng, m, N, k);
    const std::vector<int> L = {0, 1};
    const auto c = sampling::closed_coloring(D, X, {L}, 3, rng());
    ASSERT_TRUE(check_L_insensitive(c, X, L, kappa).holds);
    const int mp = sampling::uniform(rng, kappa, m);
    const LinearWord Y = compose(X, sampling::block_word(rng, mp, m, k));
    EXPECT_TRUE(check_L_insensitive(c, Y, L, kappa).holds);
  }
}

// Overlapping letter sets combine; disjoint ones need not.
TEST(LInsensitive, UnionOfOverlappingSets) {
  sampling::Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 4, N = sampling::uniform(rng, 2, 5), m = sampling::uniform(rng, 1, std::min(N, 3));
    const int kappa = sampling::uniform(rng, 1, m);
    const auto D = kappa_domain(k, N, kappa);
    const LinearWord X = sampling::block_word(rng, m, N, k);
    const int a = sampling::uniform(rng, 0, k - 2);
    const std::vector<int> L1 = {a, a + 1};
    const int b = sampling::uniform(rng, 0, k - 2);
    std::vector<int> L2 = {b, b + 1};
    if (b != a + 1 && b + 1 != a && b != a) L2 = {a + 1, (a + 2) % k};
    std::vector<int> U = L1;
    for (int x : L2)
      if (!std::count(U.begin(), U.end(), x)) U.push_back(x);
    std::sort(U.begin(), U.end());
    const auto c = sampling::closed_coloring(D, X, {L1, L2}, 3, rng());
    ASSERT_TRUE(check_L_insensitive(c, X, L1, kappa).holds);
    ASSERT_TRUE(check_L_insensitive(c, X, L2, kappa).holds);
    EXPECT_TRUE(check_L_insensitive(c, X, U, kappa).holds);
  }
}

TEST(LInsensitive, DisjointSetsCanFailToCombine) {
  const auto D = kappa_domain(4, 2, 1);
  const LinearWord X{{V0, V1}, 2};
  // Color of (x, {0}) records which half {0,1} or {2,3} the second letter lies in.
  const auto c = Coloring::custom(D, [](const Key& key) { return key[1] / 2; }, 2);
  EXPECT_TRUE(check_L_insensitive(c, X, {0, 1}, 1).holds);
  EXPECT_TRUE(check_L_insensitive(c, X, {2, 3}, 1).holds);
  EXPECT_FALSE(check_L_insensitive(c, X, {0, 1, 2, 3}, 1).holds);
}

// ---------------------------------------------------------------- block insensitivity

TEST(BlockInsensitive, Examples) {
  DomainDescriptor D;
  D.kind = DomainKind::block_product;
  D.alphabet = 2;
  D.length = 4;
  D.block = 2;
  D.groups = {{0}};
  const LinearWord w{{V0, 0, V1, 1}, 2};
  EXPECT_TRUE(check_block_insensitive(Coloring::rule(D, Rule{}, 2), w, D.groups, 2).holds);
  // Reads x[2], the minimum of v_1, which no group covers.
  EXPECT_FALSE(check_block_insensitive(Coloring::rule(D, Rule{RuleKind::projection, 2}, 2), w, D.groups, 2).holds);
  // κ = m with singleton groups: the hypothesis fixes every letter.
  D.groups = {{0}, {1}};
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_TRUE(check_block_insensitive(hashed(D, 3, seed), w, D.groups, 2).holds);
  // Clause (a): v_0 must stay inside I_0.
  EXPECT_THROW(check_block_insensitive(Coloring::rule(D, Rule{}, 2), LinearWord{{0, 0, V0, V1}, 2}, D.groups, 2), Error);
}

// ---------------------------------------------------------------- c-good, smooth, branch sensitivity

TEST(CGood, NoPointComponentsMeansMonochromatic) {
  auto tree = Tree::make({2, 2});
  const std::vector<Role> roles = {Role::plain};
  const auto D = mixed_domain(2, 2, 2, roles);
  for (const MixedWord& F : mixed_words(tree, roles, 2, 1)) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto c = hashed(D, 2, seed);
      std::vector<Key> keys;
      for (const auto& p : mixed_span(F, roles, 2, false)) keys.push_back(key_of(p));
      EXPECT_EQ(check_c_good(c, F).holds, check_monochromatic(c, keys).holds);
    }
    EXPECT_TRUE(check_c_good(Coloring::rule(D, Rule{}, 2), F).holds);
  }
}

TEST(CGood, ProjectionOntoPointDataIsGood) {
  auto tree = Tree::make({2, 2});
  const std::vector<Role> roles = {Role::plain, Role::point};
  const auto D = mixed_domain(2, 2, 2, roles);
  const std::size_t T = tree->size();
  // Key layout: both words, then the point node of component 1.
  const auto c = Coloring::custom(
      D, [T](const Key& key) { return (key[2 * T] * 2 + key[T + static_cast<std::size_t>(key[2 * T])]) % 3; }, 3);
  for (const MixedWord& F : mixed_words(tree, roles, 2, 1)) EXPECT_TRUE(check_c_good(c, F).holds);
}

TEST(Smooth, ConstantAndInjective) {
  const auto D = mixed_domain(2, 2, 2, {Role::point});
  const auto cert = check_smooth(Coloring::rule(D, Rule{}, 2)).certificate;
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->first, (std::vector<int>{0}));
  EXPECT_TRUE(cert->second.empty());
  auto tree = Tree::make({2, 2});
  const auto points = mixed_points(tree, D.roles, 2, false);
  auto index = std::make_shared<std::map<Key, int>>();
  for (std::size_t i = 0; i < points.size(); ++i) (*index)[key_of(points[i])] = static_cast<int>(i);
  const auto injective = Coloring::custom(D, [index](const Key& k) { return index->at(k); }, static_cast<int>(points.size()));
  const auto v = check_smooth(injective);
  EXPECT_FALSE(v.certificate.has_value());
  EXPECT_EQ(v.rejected.size(), 2u);
}

TEST(BranchSensitive, RequiresNoPointComponents) {
  auto tree = Tree::make({2, 2});
  const auto D = mixed_domain(2, 2, 2, {Role::point});
  const auto F = mixed_words(tree, D.roles, 2, 1).front();
  EXPECT_THROW(check_branch_sensitive(Coloring::rule(D, Rule{}, 2), F), Error);
  const auto U = mixed_domain(2, 2, 2, {Role::up});
  for (const MixedWord& G : mixed_words(tree, U.roles, 2, 1))
    EXPECT_TRUE(check_branch_sensitive(Coloring::rule(U, Rule{}, 2), G).holds);
}

// ---------------------------------------------------------------- simple colorings

TEST(Simple, FrontierExamples) {
  const Tree t({2, 3});
  EXPECT_EQ(simple_frontier(t, 0), (std::vector<NodeIndex>{0}));
  // First node in ≼ is the root; its children form A.
  EXPECT_EQ(simple_frontier(t, 1), (std::vector<NodeIndex>{1, 2}));
  // ∅ then (1): A = {(0)} ∪ {(1,0),(1,1)}.
  EXPECT_EQ(simple_frontier(t, 2), (std::vector<NodeIndex>{1, 5, 6}));
}

TEST(Simple, ConstantIsSimpleWithEverythingInB1) {
  for (int l = 0; l <= 2; ++l) {
    auto tree = Tree::make({2, 3});
    const auto D = semi_domain(2, 3, 2, l);
    const auto v = check_simple(Coloring::rule(D, Rule{}, 2), full_variable_word(tree));
    ASSERT_TRUE(v.certificate.has_value());
    const auto A = simple_frontier(*tree, l);
    EXPECT_EQ(v.certificate->first, std::vector<int>(A.begin(), A.end()));
    EXPECT_TRUE(v.certificate->second.empty());
  }
}

// Colorings built from a chosen B_2 are accepted, and the returned certificate passes a pairwise re-check.
TEST(Simple, ProjectionConstructedColorings) {
  auto tree = Tree::make({2, 3});
  const TreeWord f = full_variable_word(tree);
  for (int l = 1; l <= 2; ++l) {
    const auto D = semi_domain(2, 3, 2, l);
    const auto A = simple_frontier(*tree, l);
    const auto pairs = semi_pairs(f, l, 2);
    for (const auto& slots : subsets_by_size(static_cast<int>(A.size()))) {
      std::vector<NodeIndex> B2;
      for (int s : slots) B2.push_back(A[static_cast<std::size_t>(s)]);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto c = sampling::simple_coloring(D, B2, 3, seed);
        const auto v = check_simple(c, f);
        ASSERT_TRUE(v.certificate.has_value());
        EXPECT_TRUE(sampling::simple_certificate_valid(c, pairs, *v.certificate, A));
        EXPECT_LE(v.certificate->second.size(), B2.size());
      }
    }
  }
}

TEST(Simple, HashColoringIsRejected) {
  auto tree = Tree::make({2, 3});
  const auto v = check_simple(hashed(semi_domain(2, 3, 2, 1), 2, 17), full_variable_word(tree));
  EXPECT_FALSE(v.certificate.has_value());
  EXPECT_EQ(v.rejected.size(), 4u);
}

// ---------------------------------------------------------------- representations

TEST(Representation, TableAndRuleGiveIdenticalVerdicts) {
  sampling::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto D = kappa_domain(2, 4, 1);
    const auto rule = hashed(D, 2, rng());
    const auto table = rule.materialized();
    ASSERT_TRUE(table.is_table());
    const LinearWord w = sampling::block_word(rng, 2, 4, 2);
    EXPECT_EQ(check_strongly_insensitive(rule, w, 1).holds, check_strongly_insensitive(table, w, 1).holds);
    EXPECT_EQ(check_L_insensitive(rule, w, {0, 1}, 1).evaluated, check_L_insensitive(table, w, {0, 1}, 1).evaluated);
  }
  auto tree = Tree::make({2, 3});
  const auto S = semi_domain(2, 3, 2, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rule = hashed(S, 2, seed);
    EXPECT_EQ(check_simple(rule, full_variable_word(tree)).rejected.size(),
              check_simple(rule.materialized(), full_variable_word(tree)).rejected.size());
  }
  const auto M = mixed_domain(2, 2, 2, {Role::point, Role::plain});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rule = hashed(M, 2, seed);
    EXPECT_EQ(check_smooth(rule).certificate, check_smooth(rule.materialized()).certificate);
  }
}

TEST(Representation, TableRejectsForeignKeys) {
  const auto D = kappa_domain(2, 2, 1);
  const auto table = hashed(D, 2, 1).materialized();
  try {
    table(Key{0, 0, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain_mismatch);
  }
}
