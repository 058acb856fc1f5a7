#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

namespace zsa {
namespace {

using testing::matching_pennies;
using testing::outer_diamond;
using testing::rock_paper_scissors;

std::set<std::pair<std::size_t, std::size_t>> arc_pairs(const PreferenceGraph& pg) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const Arc& a : pg.arcs()) out.emplace(a.source, a.target);
  return out;
}

// Profiles HH=0, HT=1, TH=2, TT=3.
TEST(BuildGraph, MatchingPenniesIsAFourCycle) {
  const PreferenceGraph pg = build_graph(matching_pennies());
  EXPECT_EQ(pg.node_count(), 4u);
  const std::set<std::pair<std::size_t, std::size_t>> expected{{0, 1}, {1, 3}, {3, 2}, {2, 0}};
  EXPECT_EQ(arc_pairs(pg), expected);
  for (const Arc& a : pg.arcs()) EXPECT_EQ(a.weight, 2);
  EXPECT_EQ(pg.node_names()[1], "H,T");
}

TEST(BuildGraph, RockPaperScissorsIsATriangle) {
  const PreferenceGraph pg = build_graph(rock_paper_scissors());
  const std::set<std::pair<std::size_t, std::size_t>> expected{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_EQ(arc_pairs(pg), expected);
  EXPECT_EQ(pg.tie_count(), 0u);
}

TEST(BuildGraph, SingleProfileGame) {
  const Game g = make_game(GameMode::non_symmetric, {{7}});
  const PreferenceGraph pg = build_graph(g);
  EXPECT_EQ(pg.node_count(), 1u);
  EXPECT_TRUE(pg.arcs().empty());
  const SinkComponent sink = sink_component(pg);
  EXPECT_TRUE(sink.is_everything());
}

TEST(BuildGraph, TiesGiveAntiparallelZeroArcs) {
  const Game g = make_game(GameMode::non_symmetric, {{1, 1}, {0, 0}});
  const PreferenceGraph pg = build_graph(g);
  EXPECT_TRUE(pg.has_arc(0, 1));
  EXPECT_TRUE(pg.has_arc(1, 0));
  EXPECT_EQ(pg.tie_count(), 2u);  // both rows are constant
  const SccPartition part = scc(pg);
  EXPECT_EQ(part.component_of[0], part.component_of[1]);
  // Row 0 strictly dominates, so the tied pair {(0,0),(0,1)} is the sink.
  const SinkComponent sink = sink_component(pg, part);
  EXPECT_EQ(sink.profiles(), ProfileSet(4, {0, 1}));
}

TEST(BuildGraph, DecidedExactly) {
  // These entries differ by 1 but collapse to the same double.
  const Game g = parse_game(R"({"mode": "non-symmetric",
    "matrix": [["100000000000000000001", "0"], ["100000000000000000000", "0"]]})");
  ASSERT_EQ(g.matrix()(0, 0), g.matrix()(1, 0));
  const PreferenceGraph pg = build_graph(g);
  EXPECT_TRUE(pg.has_arc(2, 0));
  EXPECT_FALSE(pg.has_arc(0, 2));
  EXPECT_EQ(pg.tie_count(), 1u);  // only the zero column
}

TEST(BuildGraph, Deterministic) {
  GameSampler sampler(17);
  for (int k = 0; k < 20; ++k) {
    const Game g = sampler.next_mixed();
    EXPECT_EQ(build_graph(g).arcs(), build_graph(g).arcs());
  }
}

TEST(BuildGraph, SymmetricWithoutTiesIsATournament) {
  GameSampler sampler(23);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const Game g = sampler.symmetric();
    const PreferenceGraph pg = build_graph(g);
    if (pg.tie_count() > 0) continue;
    ++checked;
    const std::size_t n = g.rows();
    ASSERT_EQ(pg.arcs().size(), n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) ASSERT_NE(pg.has_arc(i, j), pg.has_arc(j, i));
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(BuildGraph, InvariantUnderPositiveScaling) {
  GameSampler sampler(29);
  for (int k = 0; k < 100; ++k) {
    const Game g = sampler.next_mixed();
    RationalMatrix scaled = g.exact_matrix();
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
      for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= Rational(5, 11);
    }
    ASSERT_EQ(arc_pairs(build_graph(g)), arc_pairs(build_graph(Game(g.mode(), scaled))));
  }
}

TEST(Scc, Examples) {
  EXPECT_EQ(scc(build_graph(matching_pennies())).component_count(), 1u);
  EXPECT_EQ(scc(build_graph(rock_paper_scissors())).component_count(), 1u);

  const SccPartition part = scc(build_graph(outer_diamond()));
  ASSERT_EQ(part.component_count(), 2u);
  EXPECT_EQ(part.members[0], std::vector<std::size_t>{0});
  EXPECT_EQ(part.members[1], (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(part.condensation[0], std::vector<std::size_t>{1});
  EXPECT_EQ(part.sinks, std::vector<std::size_t>{1});
}

// Components from the transitive closure: i ~ j iff each reaches the other.
std::vector<std::set<std::size_t>> closure_components(const PreferenceGraph& pg) {
  const std::size_t n = pg.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const Arc& a : pg.arcs()) reach[a.source][a.target] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
    }
  }
  std::vector<std::set<std::size_t>> comps;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::set<std::size_t> c;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) {
        c.insert(j);
        done[j] = true;
      }
    }
    comps.push_back(c);
  }
  return comps;
}

TEST(Scc, MatchesTransitiveClosureOnRandomDigraphs) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + rng() % 25;
    const double density = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && std::uniform_real_distribution<double>(0, 1)(rng) < density) arcs.push_back({i, j, 1});
      }
    }
    const PreferenceGraph pg(GameMode::symmetric, std::vector<std::string>(n, "v"), arcs);
    const SccPartition part = scc(pg);
    const auto expected = closure_components(pg);
    ASSERT_EQ(part.component_count(), expected.size());
    for (std::size_t c = 0; c < expected.size(); ++c) {
      ASSERT_EQ(std::set<std::size_t>(part.members[c].begin(), part.members[c].end()), expected[c]);
    }
    // Condensation edges agree with the arcs, and the DAG has a sink.
    for (const Arc& a : arcs) {
      const std::size_t cs = part.component_of[a.source], ct = part.component_of[a.target];
      if (cs == ct) continue;
      const auto& out = part.condensation[cs];
      ASSERT_TRUE(std::binary_search(out.begin(), out.end(), ct));
    }
    ASSERT_FALSE(part.sinks.empty());
  }
}

TEST(Scc, UniqueSinkOnRandomGames) {
  GameSampler sampler(37);
  for (int k = 0; k < 300; ++k) {
    const Game g = sampler.next_mixed();
    ASSERT_EQ(scc(build_graph(g)).sinks.size(), 1u);
  }
}

TEST(SinkComponent, Examples) {
  EXPECT_TRUE(sink_component(build_graph(matching_pennies())).is_everything());
  EXPECT_TRUE(sink_component(build_graph(rock_paper_scissors())).is_everything());
  const SinkComponent sink = sink_component(build_graph(outer_diamond()));
  EXPECT_EQ(sink.size(), 8u);
  EXPECT_FALSE(sink.contains(0));
}

TEST(SinkComponent, ThrowsOnTwoSinks) {
  const PreferenceGraph pg(GameMode::symmetric, {"a", "b", "c"}, {{0, 1, 1}, {0, 2, 1}});
  try {
    sink_component(pg);
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("found 2"), std::string::npos);
    EXPECT_NE(what.find("{b}"), std::string::npos);
    EXPECT_NE(what.find("{c}"), std::string::npos);
  }
}

TEST(StronglyConnected, Examples) {
  const Game fig = outer_diamond();
  const PreferenceGraph pg = build_graph(fig);
  // {b,c} x {b,c}: profiles 4, 5, 7, 8.
  EXPECT_TRUE(is_strongly_connected(pg, ProfileSet(9, {4, 5, 7, 8})));
  EXPECT_TRUE(is_strongly_connected(pg, ProfileSet(9, {0})));
  EXPECT_FALSE(is_strongly_connected(pg, ProfileSet(9, {0, 1})));
  const PreferenceGraph mp = build_graph(matching_pennies());
  EXPECT_FALSE(is_strongly_connected(mp, ProfileSet(4, {0, 3})));
  EXPECT_TRUE(is_strongly_connected(mp, ProfileSet::all(4)));
  EXPECT_THROW(is_strongly_connected(mp, ProfileSet(4)), std::invalid_argument);
}

TEST(Dot, Structure) {
  const PreferenceGraph pg = build_graph(matching_pennies());
  const std::string plain = to_dot(pg);
  EXPECT_EQ(plain.find("fillcolor"), std::string::npos);
  EXPECT_NE(plain.find("\"H,H\" -> \"H,T\""), std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t pos = plain.find("->"); pos != std::string::npos; pos = plain.find("->", pos + 2)) ++arrows;
  EXPECT_EQ(arrows, 4u);

  const std::string shaded = to_dot(pg, ProfileSet(4, {0, 3}));
  std::size_t fills = 0;
  for (std::size_t pos = shaded.find("fillcolor"); pos != std::string::npos; pos = shaded.find("fillcolor", pos + 1)) {
    ++fills;
  }
  EXPECT_EQ(fills, 2u);
  EXPECT_EQ(shaded.rfind('}'), shaded.find_last_not_of('\n'));
}

}  // namespace
}  // namespace zsa
