#include <gtest/gtest.h>

#include "dualramsey/tree.hpp"
#include "oracle.hpp"

using namespace dr;

TEST(CanonicalIndex, Examples) {
  const Shape s{2, 3};
  EXPECT_EQ(canonical_index(s, {}), 0u);
  EXPECT_EQ(canonical_index(s, {1}), 2u);
  EXPECT_EQ(canonical_index(s, {0, 1}), 4u);
}

TEST(CanonicalIndex, MatchesLengthLexEnumeration) {
  for (int b = 1; b <= 3; ++b)
    for (int n = 1; n <= 5; ++n) {
      const auto nodes = oracle::all_nodes(b, n);
      const Shape s{b, n};
      ASSERT_EQ(node_count(s), nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_EQ(canonical_index(s, nodes[i]), i);
        EXPECT_EQ(node_at(s, i), nodes[i]);
      }
    }
}

TEST(CanonicalIndex, RejectsOutsideShape) {
  EXPECT_THROW(canonical_index({2, 3}, {2}), Error);
  EXPECT_THROW(canonical_index({2, 3}, {0, 0, 0}), Error);
  EXPECT_THROW(node_at({2, 3}, 7), Error);
}

TEST(NodeCount, Examples) {
  EXPECT_EQ(node_count({2, 3}), 7u);
  EXPECT_EQ(node_count({3, 3}), 13u);
  EXPECT_EQ(node_count({1, 5}), 5u);
}

TEST(NodeCount, RejectsInvalidShapes) {
  EXPECT_THROW(validate_shape({0, 3}), Error);
  EXPECT_THROW(validate_shape({2, 0}), Error);
  try {
    node_count({2, 70});
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(Compare, Examples) {
  EXPECT_EQ(compare({}, {0, 1}, Order::initial_segment), Cmp::less);
  EXPECT_EQ(compare({0}, {0, 1}, Order::lex), Cmp::less);
  EXPECT_EQ(compare({1}, {0}, Order::length_lex), Cmp::less);
  EXPECT_EQ(compare({0}, {1}, Order::initial_segment), Cmp::incomparable);
}

TEST(Compare, AgreesWithOracleOnAllPairs) {
  for (int b = 1; b <= 3; ++b)
    for (int n = 1; n <= 4; ++n) {
      const auto nodes = oracle::all_nodes(b, n);
      const Tree T({b, n});
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          const auto& s = nodes[i];
          const auto& t = nodes[j];
          EXPECT_EQ(is_prefix(s, t), oracle::is_prefix(s, t));
          EXPECT_EQ(lex_le(s, t), oracle::lex_le(s, t));
          EXPECT_EQ(length_lex_le(s, t), oracle::llex_le(s, t));
          const auto si = static_cast<NodeIndex>(i), ti = static_cast<NodeIndex>(j);
          EXPECT_EQ(T.prefix(si, ti), oracle::is_prefix(s, t));
          EXPECT_EQ(T.lex_less(si, ti), i != j && oracle::lex_le(s, t));
          EXPECT_EQ(T.llex_less(si, ti), i != j && oracle::llex_le(s, t));
        }
    }
}

TEST(Compare, TotalOrdersAndPrefixCompatibility) {
  const auto nodes = oracle::all_nodes(3, 4);
  for (const auto& s : nodes)
    for (const auto& t : nodes) {
      if (s == t) continue;
      // Exactly one direction holds for the two total orders.
      EXPECT_NE(lex_le(s, t), lex_le(t, s));
      EXPECT_NE(length_lex_le(s, t), length_lex_le(t, s));
      if (is_prefix(s, t)) {
        EXPECT_TRUE(lex_le(s, t));
        EXPECT_TRUE(length_lex_le(s, t));
      }
      for (const auto& u : nodes) {
        if (lex_le(s, t) && lex_le(t, u)) EXPECT_TRUE(lex_le(s, u));
        if (length_lex_le(s, t) && length_lex_le(t, u)) EXPECT_TRUE(length_lex_le(s, u));
      }
    }
}

TEST(Meet, Examples) {
  EXPECT_EQ(meet({0, 1}, {0, 0}), (Node{0}));
  EXPECT_EQ(meet({0, 1}, {0, 1}), (Node{0, 1}));
  EXPECT_EQ(meet({0}, {1}), Node{});
}

TEST(Meet, Laws) {
  for (int b = 1; b <= 3; ++b)
    for (int n = 1; n <= 4; ++n) {
      const auto nodes = oracle::all_nodes(b, n);
      const Tree T({b, n});
      for (const auto& s : nodes)
        for (const auto& t : nodes) {
          const Node st = meet(s, t);
          EXPECT_EQ(st, meet(t, s));
          EXPECT_EQ(st, oracle::meet(s, t));
          EXPECT_TRUE(is_prefix(st, s) && is_prefix(st, t));
          EXPECT_EQ(T.meet(T.index(s), T.index(t)), T.index(st));
          for (const auto& u : nodes) EXPECT_EQ(meet(meet(s, t), u), meet(s, meet(t, u)));
        }
      for (const auto& s : nodes) EXPECT_EQ(meet(s, s), s);
    }
}

TEST(Text, RoundTrip) {
  EXPECT_EQ(format_node({}), "e");
  EXPECT_EQ(format_node({0, 1}), "0.1");
  EXPECT_EQ(parse_node("0.1"), (Node{0, 1}));
  EXPECT_EQ(parse_node("e"), Node{});
  EXPECT_EQ(format_shape({2, 3}), "2^<3");
  EXPECT_EQ(parse_shape("3^<4"), (Shape{3, 4}));
  EXPECT_THROW(parse_node("0..1"), Error);
  EXPECT_THROW(parse_shape("2^3"), Error);
}

TEST(Relatives, Examples) {
  auto tree = Tree::make({2, 3});
  const Subtree full = full_subtree(tree);
  const auto kids = imsucc(full, tree->index({0}));
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(tree->node(kids[0]), (Node{0, 0}));
  EXPECT_EQ(tree->node(kids[1]), (Node{0, 1}));

  const Subtree S = subtree_from_nodes(tree, {{}, {0, 0}});
  EXPECT_EQ(height_in(S, tree->index({0, 0})), 1);

  const Subtree L = subtree_from_nodes(tree, {{}, {0}, {1, 0}});
  EXPECT_EQ(level_set(L), (std::vector<int>{0, 1, 2}));
}

TEST(Relatives, NodeOutsideSubtreeIsRejected) {
  auto tree = Tree::make({2, 3});
  const Subtree S = subtree_from_nodes(tree, {{}, {0}});
  EXPECT_THROW(pred(S, tree->index({1})), Error);
  EXPECT_THROW(height_in(S, tree->index({1})), Error);
}

TEST(Relatives, AgreeWithOracleOnEverySubsetOfSmallTrees) {
  auto tree = Tree::make({2, 3});
  const auto nodes = oracle::all_nodes(2, 3);
  for (std::uint32_t mask = 1; mask < (1u << nodes.size()); ++mask) {
    oracle::SeqSet S;
    std::vector<Node> picked;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (mask >> i & 1) {
        S.push_back(nodes[i]);
        picked.push_back(nodes[i]);
      }
    const Subtree sub = subtree_from_nodes(tree, picked);
    for (const auto& s : S) {
      const NodeIndex si = tree->index(s);
      EXPECT_EQ(height_in(sub, si), oracle::height(S, s));
      std::vector<Node> got;
      for (NodeIndex t : imsucc(sub, si)) got.push_back(tree->node(t));
      EXPECT_EQ(got, oracle::imsucc(S, s));
    }
    EXPECT_EQ(root(sub).has_value(), oracle::has_minimum(S));
  }
}
