#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "c2f/estimators.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using fixtures::basis;

namespace {

std::vector<std::vector<double>> random_vectors(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> v(n, std::vector<double>(d));
  for (auto& row : v)
    for (double& x : row) x = g(rng);
  return v;
}

}  // namespace

TEST(BlockRepresentation, MeanOfRows) {
  const auto e = c2f::EmbeddingMatrix::from_rows({basis(3, 0), basis(3, 1), {0.2, 0.4, 0.6}});
  EXPECT_EQ(c2f::block_representation(e, {2, 2, {}}), (std::vector<double>{0.2, 0.4, 0.6}));
  const auto r = c2f::block_representation(e, {0, 1, {}});
  EXPECT_DOUBLE_EQ(r[0], 0.5);
  EXPECT_DOUBLE_EQ(r[1], 0.5);
  EXPECT_DOUBLE_EQ(r[2], 0.0);

  const auto same = c2f::EmbeddingMatrix::from_rows({{0.3, -0.7}, {0.3, -0.7}, {0.3, -0.7}});
  const auto s = c2f::block_representation(same, {0, 2, {}});
  EXPECT_NEAR(s[0], 0.3, 1e-15);
  EXPECT_NEAR(s[1], -0.7, 1e-15);
}

TEST(DirectedCentrality, SmallCases) {
  using V = std::vector<std::vector<double>>;
  EXPECT_EQ(c2f::directed_centrality(V{basis(2, 0), basis(2, 0)}, 1.0, 1.0), (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(c2f::directed_centrality(V{basis(3, 0), basis(3, 1), basis(3, 2)}, 1.0, 1.0),
            (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(c2f::directed_centrality(V{basis(2, 0), basis(2, 0), basis(2, 1)}, 0.0, 1.0),
            (std::vector<double>{1, 0, 0}));
  EXPECT_TRUE(c2f::directed_centrality(V{}, 1.0, 1.0).empty());
}

TEST(DirectedCentrality, CountsUniquePairs) {
  std::mt19937_64 rng(1);
  std::uint64_t dots = 0;
  c2f::directed_centrality(random_vectors(rng, 7, 3), 1.0, 1.0, &dots);
  EXPECT_EQ(dots, 21u);
}

TEST(DirectedCentrality, MatchesDoubleLoop) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_vectors(rng, 1 + rng() % 60, 1 + rng() % 16);
    const double l1 = static_cast<double>(rng() % 5) * 0.5 - 1.0;
    const double l2 = static_cast<double>(rng() % 5) * 0.5;
    const auto got = c2f::directed_centrality(v, l1, l2);
    const auto ref = oracle::centrality(v, l1, l2);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-9);
  }
}

TEST(DirectedCentrality, ReversalInvariantWhenSymmetric) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto v = random_vectors(rng, 2 + rng() % 30, 8);
    const auto fwd = c2f::directed_centrality(v, 0.7, 0.7);
    std::reverse(v.begin(), v.end());
    const auto rev = c2f::directed_centrality(v, 0.7, 0.7);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(fwd[i], rev[v.size() - 1 - i], 1e-9);
  }
}

TEST(DirectedCentrality, ScalingScalesScoresKeepsOrder) {
  std::mt19937_64 rng(9);
  auto v = random_vectors(rng, 25, 6);
  const auto base = c2f::directed_centrality(v, 1.0, 0.5);
  for (auto& row : v)
    for (double& x : row) x *= 3.0;
  const auto scaled = c2f::directed_centrality(v, 1.0, 0.5);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(scaled[i], 9.0 * base[i], 1e-9);
  EXPECT_EQ(c2f::rank_desc(base).ids(), c2f::rank_desc(scaled).ids());
}

TEST(RelevanceScores, Examples) {
  const auto e = c2f::EmbeddingMatrix::from_rows({basis(3, 0), basis(3, 1), basis(3, 2)});
  const auto one = c2f::relevance_scores(e, {1, 1, {}}, basis(3, 1));
  ASSERT_EQ(one.items.size(), 1u);
  EXPECT_EQ(one.items[0].id, 1u);
  EXPECT_NEAR(one.items[0].score, 1.0, 1e-15);

  const std::vector<double> rep{0.5, 0.5, 0.0};
  const auto two = c2f::relevance_scores(e, {0, 1, {}}, rep);
  EXPECT_EQ(two.ids(), (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(two.items[0].score, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(two.items[1].score, std::sqrt(0.5), 1e-12);

  const auto orth = c2f::relevance_scores(e, {2, 2, {}}, rep);
  EXPECT_EQ(orth.items[0].score, 0.0);
}

TEST(RelevanceScores, ScaleInvariant) {
  std::mt19937_64 rng(2);
  const auto e = fixtures::random_matrix(rng, 10, 5);
  const c2f::SemanticBlock block{2, 8, {}};
  const auto rep = c2f::block_representation(e, block);
  auto scaled_rep = rep;
  for (double& x : scaled_rep) x *= 17.0;
  const auto a = c2f::relevance_scores(e, block, rep);
  const auto b = c2f::relevance_scores(e, block, scaled_rep);
  EXPECT_EQ(a.ids(), b.ids());
  for (std::size_t i = 0; i < a.items.size(); ++i) EXPECT_NEAR(a.items[i].score, b.items[i].score, 1e-12);
}

TEST(RankDesc, Examples) {
  EXPECT_EQ(c2f::rank_desc(std::vector<double>{0.2, 0.9, 0.2}).ids(), (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_TRUE(c2f::rank_desc(std::vector<double>{}).items.empty());
  EXPECT_EQ(c2f::rank_desc(std::vector<double>(4, 0.5)).ids(), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(RankDesc, MatchesSelectionOrder) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(rng() % 40);
    for (double& x : s) x = static_cast<double>(rng() % 7);  // many ties
    EXPECT_EQ(c2f::rank_desc(s).ids(), oracle::order(s));
  }
}

TEST(RankDesc, MapsIds) {
  const std::vector<double> s{0.1, 0.3};
  const std::vector<std::size_t> ids{40, 12};
  EXPECT_EQ(c2f::rank_desc(s, ids).ids(), (std::vector<std::size_t>{12, 40}));
}
