#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace zsa {
namespace {

using testing::matching_pennies;
using testing::rock_paper_scissors;

TEST(Symmetrise, MatchingPenniesByHand) {
  const SymmetrisedGame sm = symmetrise(matching_pennies());
  ASSERT_EQ(sm.size(), 4u);
  // Rows and columns in the order HH, HT, TH, TT.
  const long long expected[4][4] = {{0, -2, 2, 0}, {2, 0, 0, -2}, {-2, 0, 0, 2}, {0, 2, -2, 0}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(sm.exact_matrix()(i, j), expected[i][j]) << i << "," << j;
  }
  EXPECT_EQ(sm.entry({0, 0}, {1, 1}), 0);
  EXPECT_EQ(sm.entry({0, 0}, {0, 1}), -2);
  EXPECT_EQ(sm.entry({0, 0}, {0, 1}), weight(sm.base(), {0, 0}, {0, 1}));
  EXPECT_TRUE(sm.is_antisymmetric());
  EXPECT_DOUBLE_EQ(sm.matrix()(2, 3), 2.0);
}

TEST(Symmetrise, RejectsSymmetricGames) {
  EXPECT_THROW(symmetrise(rock_paper_scissors()), std::invalid_argument);
}

TEST(Symmetrise, AsGameIsAValidSymmetricGame) {
  const Game s = symmetrise(matching_pennies()).as_game();
  EXPECT_TRUE(s.is_symmetric());
  EXPECT_EQ(s.row_labels(), (std::vector<std::string>{"H,H", "H,T", "T,H", "T,T"}));
  const Game again = parse_game(game_to_json(s).dump());
  EXPECT_EQ(again.exact_matrix()(1, 3), -2);
  // Ties between non-comparable diagonal pairs: (HH,TT) and (HT,TH).
  EXPECT_EQ(build_graph(s).tie_count(), 2u);
}

TEST(Symmetrise, ZeroDiagonalAndAntiSymmetryOnRandomGames) {
  GameSampler sampler(43);
  for (int k = 0; k < 200; ++k) {
    const SymmetrisedGame sm = symmetrise(sampler.non_symmetric());
    ASSERT_TRUE(sm.is_antisymmetric());
    for (std::size_t i = 0; i < sm.size(); ++i) ASSERT_EQ(sm.exact_matrix()(i, i), 0);
  }
}

TEST(WeightIdentity, MatchingPennies) {
  const WeightIdentityReport rep = check_weight_identity(matching_pennies());
  EXPECT_EQ(rep.pairs_checked, 16u);
  // Each profile has one player-1 and one player-2 neighbour.
  EXPECT_EQ(rep.comparable_pairs_checked, 8u);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(rep.passed());
}

TEST(WeightIdentity, Random3x4) {
  GameSampler sampler(47);
  const Game g = sampler.non_symmetric_exact(3, 4);
  const WeightIdentityReport rep = check_weight_identity(g);
  EXPECT_EQ(rep.pairs_checked, 144u);
  EXPECT_TRUE(rep.passed());
}

TEST(WeightIdentity, HoldsWithRationalPayoffs) {
  const Game g = parse_game(R"({"mode": "non-symmetric", "matrix": [["1/3", "-2/7", 5], ["9/4", 0, "-1/2"]]})");
  EXPECT_TRUE(check_weight_identity(g).passed());
}

TEST(WeightIdentity, SelfPairsAreZero) {
  const Game g = GameSampler(53).non_symmetric_exact(3, 3);
  const SymmetrisedGame sm = symmetrise(g);
  for (std::size_t i = 0; i < g.profile_count(); ++i) {
    const Profile p = g.profile_at(i);
    EXPECT_EQ(sm.entry(p, p), 0);
    EXPECT_EQ(weight(g, p, p), 0);
  }
}

TEST(WeightIdentity, FuzzedGames) {
  GameSampler sampler(59);
  for (int k = 0; k < 200; ++k) {
    const Game g = sampler.non_symmetric();
    const WeightIdentityReport rep = check_weight_identity(g);
    ASSERT_TRUE(rep.passed()) << game_to_json(g).dump();
    ASSERT_EQ(rep.pairs_checked, g.profile_count() * g.profile_count());
  }
}

}  // namespace
}  // namespace zsa
