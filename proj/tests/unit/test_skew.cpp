#include <gtest/gtest.h>

#include <map>

#include "dualramsey/skew.hpp"
#include "oracle.hpp"

using namespace dr;

namespace {

oracle::SeqSet to_seqs(const Subtree& S) {
  oracle::SeqSet out;
  for (NodeIndex s : S.nodes) out.push_back(S.tree->node(s));
  return out;
}

std::vector<oracle::SeqSet> to_seqs(const std::vector<Subtree>& v) {
  std::vector<oracle::SeqSet> out;
  for (const auto& S : v) out.push_back(to_seqs(S));
  return out;
}

Subtree make(const TreePtr& tree, const std::vector<Node>& nodes) { return subtree_from_nodes(tree, nodes); }

}  // namespace

TEST(IsCompleteSkew, Examples) {
  auto t2 = Tree::make({2, 2});
  auto t3 = Tree::make({2, 3});
  EXPECT_TRUE(is_complete_skew(make(t2, {{}, {0}, {1}}), 2));
  EXPECT_FALSE(is_complete_skew(make(t3, {{}, {1}, {0, 0}}), 2));
  EXPECT_TRUE(is_complete_skew(make(t2, {{0}}), 1));
  EXPECT_FALSE(is_complete_skew(make(t2, {{}, {0}, {1}}), 1));
}

TEST(IsSkew, Examples) {
  auto t2 = Tree::make({2, 2});
  const auto w = is_skew(make(t2, {{}, {0}, {1}}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->last_branch, 1);
  EXPECT_EQ(w->pivot, t2->index({}));
  EXPECT_FALSE(w->singleton);

  const auto single = is_skew(make(t2, {{0}}));
  ASSERT_TRUE(single.has_value());
  EXPECT_TRUE(single->singleton);

  EXPECT_FALSE(is_skew(make(t2, {{0}, {1}})).has_value());
}

TEST(SemiComplete, Examples) {
  auto t2 = Tree::make({2, 2});
  const Subtree S = make(t2, {{}, {0}, {1}});
  EXPECT_TRUE(is_semi_complete(S));
  EXPECT_EQ(to_seqs(interior(S)), (oracle::SeqSet{{}}));
  const Subtree single = make(t2, {{0}});
  EXPECT_TRUE(is_semi_complete(single));
  EXPECT_TRUE(interior(single).empty());
  EXPECT_FALSE(is_semi_complete(make(t2, {{}, {0}})));
}

TEST(EnumerateSkew, Examples) {
  auto t2 = Tree::make({2, 2});
  EXPECT_EQ(enumerate_skew(t2, {SkewKind::complete, 1}).size(), 3u);
  const auto two = enumerate_skew(t2, {SkewKind::complete, 2});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(to_seqs(two[0]), (oracle::SeqSet{{}, {0}, {1}}));
  EXPECT_EQ(enumerate_skew(t2, {SkewKind::semi_complete, 1}).size(), 1u);
}

TEST(EnumerateSkew, BudgetIsEnforced) {
  auto t = Tree::make({2, 4});
  EnumerationBudget tiny;
  tiny.max_items = 2;
  try {
    enumerate_skew(t, {SkewKind::skew, 0}, tiny);
    FAIL() << "expected budget_exceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}

// Every kind equals power-set filtering, and the two complete-skew definitions coincide.
class PowerSet : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(PowerSet, EnumerationEqualsFiltering) {
  const auto [b, n] = GetParam();
  auto tree = Tree::make({b, n});
  const auto sets = oracle::filter_power_set(b, n, [](const oracle::SeqSet&) { return true; });
  std::vector<oracle::SeqSet> skew, complete[4];
  std::map<int, std::vector<oracle::SeqSet>> semi;
  for (const auto& S : sets) {
    const bool sk = oracle::skew(S, b);
    if (sk) skew.push_back(S);
    for (int k = 1; k <= 3; ++k)
      if (oracle::complete_skew(S, b, k)) complete[k].push_back(S);
    if (sk) {
      int interior = 0;
      for (const auto& s : S) interior += !oracle::is_maximal(S, s);
      if (oracle::semi_complete(S, b, interior)) semi[interior].push_back(S);
    }
    // Double definition of completeness, checked on every subset.
    std::vector<Node> nodes(S.begin(), S.end());
    const Subtree sub = subtree_from_nodes(tree, nodes);
    for (int k = 1; k <= 3; ++k)
      EXPECT_EQ(is_complete_skew(sub, k), is_complete_skew_via_skew(sub, k)) << format_subtree(sub).size();
  }
  EXPECT_EQ(to_seqs(enumerate_skew(tree, {SkewKind::skew, 0})), skew);
  for (int k = 1; k <= 3; ++k) {
    const auto got = enumerate_skew(tree, {SkewKind::complete, k});
    EXPECT_EQ(to_seqs(got), complete[k]) << "k=" << k;
    for (const auto& S : got) {
      std::uint64_t expected = 0, p = 1;
      for (int i = 0; i < k; ++i, p *= static_cast<std::uint64_t>(b)) expected += p;
      EXPECT_EQ(S.size(), expected);
      EXPECT_EQ(subtree_height(S), k);
    }
  }
  const int max_interior = static_cast<int>(sets.back().size());
  for (int l = 0; l <= max_interior; ++l) {
    const auto got = enumerate_skew(tree, {SkewKind::semi_complete, l});
    EXPECT_EQ(to_seqs(got), semi[l]) << "l=" << l;
    if (got.empty() && semi[l].empty()) break;
  }
}

INSTANTIATE_TEST_SUITE_P(SmallShapes, PowerSet,
                         ::testing::Values(std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 4},
                                           std::pair{3, 2}, std::pair{3, 3}));

TEST(Interior, EmptyExactlyForSingletonsAndOtherwiseRootedAndInterleaved) {
  for (int n = 1; n <= 4; ++n) {
    auto tree = Tree::make({2, n});
    for (int l = 0; l <= 3; ++l)
      for (const Subtree& S : enumerate_skew(tree, {SkewKind::semi_complete, l})) {
        const Subtree I = interior(S);
        EXPECT_EQ(I.empty(), S.size() == 1);
        if (I.empty()) continue;
        EXPECT_TRUE(root(I).has_value());
        EXPECT_TRUE(satisfies_interleaving(I, layout(I)));
      }
  }
}

// Clause (iv)(c) asks the pivot's successors to start at branch 0, which an interior need not do.
TEST(Interior, CanFailTheBranchClause) {
  auto t3 = Tree::make({2, 3});
  const Subtree S = make(t3, {{}, {0}, {1}, {1, 0}, {1, 1}});
  ASSERT_TRUE(is_semi_complete(S));
  const Subtree I = interior(S);
  EXPECT_EQ(to_seqs(I), (oracle::SeqSet{{}, {1}}));
  EXPECT_FALSE(is_skew(I).has_value());
  EXPECT_FALSE(oracle::skew(to_seqs(I), 2));
}

TEST(SkewIso, Examples) {
  auto t2 = Tree::make({2, 2});
  const SkewIso id(make(t2, {{}, {0}, {1}}), 2);
  for (NodeIndex s = 0; s < 3; ++s) EXPECT_EQ(t2->node(id.forward(s)), id.source()->node(s));

  auto t3 = Tree::make({2, 3});
  const SkewIso iso(make(t3, {{}, {0}, {1, 0}}), 2);
  EXPECT_EQ(t3->node(iso.forward(iso.source()->index({1}))), (Node{1, 0}));
  for (NodeIndex s = 0; s < iso.source()->size(); ++s) EXPECT_EQ(iso.inverse(iso.forward(s)), s);
}

TEST(SkewIso, RejectsNonComplete) {
  auto t3 = Tree::make({2, 3});
  EXPECT_THROW(SkewIso(make(t3, {{}, {0}}), 2), Error);
}

// ⊑ and ≤lex are preserved by I_S on every complete skew subtree of the small shapes.
TEST(SkewIso, PreservesPrefixAndLex) {
  for (auto [b, n] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    auto tree = Tree::make({b, n});
    for (int k = 1; k <= 3; ++k)
      for (const Subtree& S : enumerate_skew(tree, {SkewKind::complete, k})) {
        const SkewIso iso(S, k);
        const Tree& src = *iso.source();
        for (NodeIndex x = 0; x < src.size(); ++x)
          for (NodeIndex y = 0; y < src.size(); ++y) {
            EXPECT_EQ(src.prefix(x, y), tree->prefix(iso.forward(x), iso.forward(y)));
            EXPECT_EQ(src.lex_less(x, y), tree->lex_less(iso.forward(x), iso.forward(y)));
          }
      }
  }
}

// ≼ is not preserved in general: the image of a level can straddle two lengths.
TEST(SkewIso, LengthLexCounterexample) {
  auto t3 = Tree::make({2, 3});
  const SkewIso iso(make(t3, {{}, {0}, {1, 0}}), 2);
  const Tree& src = *iso.source();
  const NodeIndex a = src.index({0}), c = src.index({1});
  EXPECT_TRUE(src.llex_less(c, a));                               // (1) ≼ (0) at equal length
  EXPECT_FALSE(t3->llex_less(iso.forward(c), iso.forward(a)));  // (1,0) is longer than (0)
}

// ---------------------------------------------------------------- vector subtrees

namespace {

int seq_height(const oracle::SeqSet& S) {
  int h = 0;
  for (const auto& s : S) h = std::max(h, oracle::height(S, s) + 1);
  return h;
}

oracle::SeqSet seq_level(const oracle::SeqSet& S, int m) {
  oracle::SeqSet out;
  for (const auto& s : S)
    if (oracle::height(S, s) == m) out.push_back(s);
  return out;
}

bool vector_skew_oracle(const std::vector<oracle::SeqSet>& V, int b, int k) {
  const int d = static_cast<int>(V.size());
  for (const auto& S : V)
    if (!oracle::skew(S, b)) return false;
  bool j0_found = false;
  for (int j0 = 0; j0 < d && !j0_found; ++j0) {
    bool ok = seq_height(V[j0]) == k;
    for (int i = 0; i < d && ok; ++i) {
      if (i < j0) ok = oracle::complete_skew(V[i], b, k);
      if (i > j0) ok = oracle::complete_skew(V[i], b, k - 1);
    }
    j0_found = ok;
  }
  if (!j0_found) return false;
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (const auto& s : seq_level(V[i], m))
          for (const auto& t : seq_level(V[j], m))
            if (s.size() > t.size()) return false;
  for (int m = 0; m + 1 < k; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (const auto& s : seq_level(V[i], m))
          for (const auto& t : seq_level(V[j], m + 1))
            if (s.size() >= t.size()) return false;
  return true;
}

}  // namespace

TEST(VectorSkew, SingleComponentReducesToCompleteSkew) {
  auto tree = Tree::make({2, 3});
  for (int k = 1; k <= 2; ++k)
    for (const Subtree& S : enumerate_skew(tree, {SkewKind::skew, 0}))
      EXPECT_EQ(is_vector_complete_skew(VectorSubtree{{S}}, k), is_complete_skew(S, k));
}

TEST(VectorSkew, IncompatibleLengthsRejected) {
  auto tree = Tree::make({2, 3});
  const Subtree A = make(tree, {{}, {0}, {1}});
  const Subtree B = make(tree, {{0}, {0, 0}, {0, 1}});
  EXPECT_FALSE(is_vector_complete_skew(VectorSubtree{{A, B}}, 2));  // level 0 of B not shorter than level 1 of A
  EXPECT_FALSE(is_vector_complete_skew(VectorSubtree{{B, A}}, 2));  // level 0 lengths decrease across components
  EXPECT_TRUE(is_vector_complete_skew(VectorSubtree{{A, A}}, 2));
}

TEST(VectorSkew, AgreesWithOracleOnAllPairs) {
  const int b = 2, n = 3;
  auto tree = Tree::make({b, n});
  const auto sets = oracle::filter_power_set(b, n, [](const oracle::SeqSet& S) { return oracle::skew(S, 2); });
  for (int k = 1; k <= 3; ++k)
    for (const auto& S1 : sets)
      for (const auto& S2 : sets) {
        const VectorSubtree V{{subtree_from_nodes(tree, std::vector<Node>(S1.begin(), S1.end())),
                               subtree_from_nodes(tree, std::vector<Node>(S2.begin(), S2.end()))}};
        ASSERT_EQ(is_vector_skew(V, k), vector_skew_oracle({S1, S2}, b, k)) << "k=" << k;
      }
}

TEST(EnumerateCT, MatchesFilteredPairs) {
  for (auto [n, k, d] : {std::tuple{2, 1, 2}, std::tuple{3, 1, 2}, std::tuple{3, 2, 2}, std::tuple{2, 1, 3}}) {
    auto tree = Tree::make({2, n});
    VectorSubtree full;
    for (int i = 0; i < d; ++i) full.parts.push_back(full_subtree(tree));
    const auto got = enumerate_ct(full, k);
    const auto comps = oracle::filter_power_set(2, n, [&](const oracle::SeqSet& S) { return oracle::complete_skew(S, 2, k); });
    std::vector<std::vector<oracle::SeqSet>> expected;
    std::vector<oracle::SeqSet> cur;
    auto grow = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == d) {
        bool ok = true;
        for (const auto& S : cur) ok = ok && oracle::complete_skew(S, 2, k);
        if (ok && vector_skew_oracle(cur, 2, k)) expected.push_back(cur);
        return;
      }
      for (const auto& S : comps) {
        cur.push_back(S);
        self(self);
        cur.pop_back();
      }
    };
    grow(grow);
    std::vector<std::vector<oracle::SeqSet>> actual;
    for (const auto& V : got) {
      std::vector<oracle::SeqSet> row;
      for (const auto& S : V.parts) row.push_back(to_seqs(S));
      actual.push_back(row);
    }
    EXPECT_EQ(actual, expected) << "n=" << n << " k=" << k << " d=" << d;
  }
  // The d=2 singleton count over 2^{<2}: pairs (s1, s2) with |s1| <= |s2|.
  auto t2 = Tree::make({2, 2});
  EXPECT_EQ(enumerate_ct(VectorSubtree{{full_subtree(t2), full_subtree(t2)}}, 1).size(), 7u);
}
