#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace zsa {
namespace {

using testing::matching_pennies;
using testing::mixed;
using testing::rock_paper_scissors;

TEST(ParseGame, MatchingPenniesFile) {
  const Game g = load_game(testing::games_dir() + "/matching_pennies.json");
  EXPECT_EQ(g.mode(), GameMode::non_symmetric);
  EXPECT_EQ(g.rows(), 2u);
  EXPECT_EQ(g.cols(), 2u);
  EXPECT_EQ(g.payoff(0, 0), 1);
  EXPECT_EQ(g.payoff(0, 1), -1);
  EXPECT_EQ(g.row_labels(), (std::vector<std::string>{"H", "T"}));
}

TEST(ParseGame, RockPaperScissorsFile) {
  const Game g = load_game(testing::games_dir() + "/rps.json");
  EXPECT_TRUE(g.is_symmetric());
  EXPECT_EQ(g.rows(), 3u);
  EXPECT_EQ(g.col_labels(), g.row_labels());
  EXPECT_EQ(g.profile_count(), 3u);
}

TEST(ParseGame, RejectsSymmetricThatIsNotAntiSymmetric) {
  EXPECT_THROW(parse_game(R"({"mode": "symmetric", "matrix": [[0, 1], [1, 0]]})"), ParseError);
}

TEST(ParseGame, RejectsMalformedInput) {
  EXPECT_THROW(parse_game("{"), ParseError);
  EXPECT_THROW(parse_game(R"({"matrix": [[1]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "zero-sum", "matrix": [[1]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": []})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": [[]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": [[1, 2], [3]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": [[1.5]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": [["1/0"]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "symmetric", "matrix": [[0, 1, 2], [-1, 0, 3]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"mode": "non-symmetric", "matrix": [[1]], "row_labels": ["a", "b"]})"), ParseError);
}

TEST(ParseGame, RationalEntriesAndDefaultLabels) {
  const Game g = parse_game(R"({"mode": "non-symmetric", "matrix": [["3/2", "-6/4"], [7, "+2"]]})");
  EXPECT_EQ(g.payoff(0, 0), Rational(3, 2));
  EXPECT_EQ(g.payoff(0, 1), Rational(-3, 2));
  EXPECT_EQ(g.payoff(1, 1), 2);
  EXPECT_EQ(g.row_labels(), (std::vector<std::string>{"s0", "s1"}));
  EXPECT_EQ(g.col_labels(), (std::vector<std::string>{"t0", "t1"}));
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("-12"), -12);
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_EQ(to_string(parse_rational("-8/4")), "-2");
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("0x10"), ParseError);
}

TEST(Comparable, Examples) {
  const Game mp = matching_pennies();
  // H = 0, T = 1.
  EXPECT_EQ(comparable(mp, {1, 0}, {0, 0}), Comparison::player1);
  EXPECT_EQ(comparable(mp, {0, 0}, {0, 1}), Comparison::player2);
  EXPECT_EQ(comparable(mp, {0, 0}, {0, 0}), std::nullopt);
  EXPECT_EQ(comparable(mp, {0, 0}, {1, 1}), std::nullopt);
  const Game rps = rock_paper_scissors();
  EXPECT_EQ(comparable(rps, {0, 0}, {2, 0}), Comparison::all);
  EXPECT_THROW(comparable(mp, {0, 0}, {2, 0}), std::out_of_range);
}

TEST(Weight, Examples) {
  const Game mp = matching_pennies();
  // W_{(T,H),(H,H)} = M_TH - M_HH = -2.
  EXPECT_EQ(weight(mp, {1, 0}, {0, 0}), -2);
  // Player 2 deviation: W_{(H,H),(H,T)} = M_HT - M_HH = -2.
  EXPECT_EQ(weight(mp, {0, 0}, {0, 1}), -2);
  const Game rps = rock_paper_scissors();
  EXPECT_EQ(weight(rps, {2, 0}, {0, 0}), -1);  // Scissors -> Rock
  const Game tie = make_game(GameMode::non_symmetric, {{2, 2}, {2, 0}});
  EXPECT_EQ(weight(tie, {0, 0}, {1, 0}), 0);
  EXPECT_EQ(weight(tie, {1, 1}, {1, 1}), 0);
  EXPECT_THROW(weight(mp, {0, 0}, {1, 1}), std::domain_error);
}

TEST(Weight, SkewSymmetricOnRandomGames) {
  GameSampler sampler(3);
  for (int k = 0; k < 200; ++k) {
    const Game g = sampler.next_mixed();
    for (std::size_t i = 0; i < g.profile_count(); ++i) {
      for (std::size_t j = 0; j < g.profile_count(); ++j) {
        const Profile p = g.profile_at(i), q = g.profile_at(j);
        if (!comparable(g, p, q)) continue;
        ASSERT_EQ(weight(g, p, q), -weight(g, q, p));
      }
    }
  }
}

TEST(ExpectedPayoff, Examples) {
  EXPECT_DOUBLE_EQ(expected_payoff(matching_pennies(), mixed({0.5, 0.5}, {0.5, 0.5})), 0.0);
  EXPECT_NEAR(expected_payoff(rock_paper_scissors(), mixed({1.0 / 3, 1.0 / 3, 1.0 / 3})), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(expected_payoff(matching_pennies(), mixed({1, 0}, {1, 0})), 1.0);
  EXPECT_THROW(expected_payoff(matching_pennies(), mixed({1, 0, 0}, {1, 0})), std::invalid_argument);
}

TEST(ExpectedPayoff, SymmetricSelfPayoffVanishes) {
  GameSampler sampler(11);
  for (int k = 0; k < 1000; ++k) {
    const Game g = sampler.symmetric(7);
    const MixedProfile x = sampler.interior_point(g);
    ASSERT_LE(std::abs(expected_payoff(g, x)), 1e-12);
  }
}

TEST(ProductMass, Examples) {
  const Game mp = matching_pennies();
  EXPECT_DOUBLE_EQ(product_mass(mp, mixed({0.5, 0.5}, {0.5, 0.5}), {0, 0}), 0.25);
  EXPECT_DOUBLE_EQ(product_mass(mp, mixed({1, 0}, {0, 1}), {0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(product_mass(mp, mixed({1, 0}, {0, 1}), {1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(product_mass(rock_paper_scissors(), mixed({0.2, 0.3, 0.5}), {1, 0}), 0.3);
}

TEST(ProductMass, SumsToOne) {
  GameSampler sampler(5);
  for (int k = 0; k < 500; ++k) {
    const Game g = sampler.non_symmetric();
    const MixedProfile z = sampler.interior_point(g);
    double total = 0.0;
    for (std::size_t i = 0; i < g.profile_count(); ++i) total += product_mass(g, z, g.profile_at(i));
    ASSERT_NEAR(total, 1.0, 1e-12);
    ASSERT_NEAR(profile_distribution(g, z).sum(), 1.0, 1e-12);
  }
}

TEST(MixedProfile, Validation) {
  const Game mp = matching_pennies();
  EXPECT_NO_THROW(validate(mp, mixed({0.5, 0.5}, {1, 0})));
  EXPECT_THROW(validate(mp, mixed({0.6, 0.5}, {1, 0})), std::invalid_argument);
  EXPECT_THROW(validate(mp, mixed({1.5, -0.5}, {1, 0})), std::invalid_argument);
  EXPECT_THROW(validate(mp, mixed({0.5, 0.5})), std::invalid_argument);
  const Subgame s = support(mp, mixed({0.5, 0.5}, {0, 1}));
  EXPECT_EQ(s.first, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.second, (std::vector<std::size_t>{1}));
}

TEST(Game, ProfileIndexingIsRowMajor) {
  const Game g = make_game(GameMode::non_symmetric, {{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(g.profile_count(), 6u);
  EXPECT_EQ(g.index_of({1, 2}), 5u);
  EXPECT_EQ(g.profile_at(4), (Profile{1, 1}));
  EXPECT_EQ(g.profile_name(1), "s0,t1");
  EXPECT_THROW(g.profile_at(6), std::out_of_range);
}

}  // namespace
}  // namespace zsa
