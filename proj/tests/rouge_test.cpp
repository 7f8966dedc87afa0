#include <random>

#include <gtest/gtest.h>

#include "c2f/core.hpp"
#include "c2f/rouge.hpp"

using c2f::Tokens;
using c2f::tokenize;

namespace {

Tokens random_tokens(std::mt19937_64& rng, std::size_t max_len, std::size_t vocab) {
  Tokens t(rng() % (max_len + 1));
  for (auto& s : t) s = "w" + std::to_string(rng() % vocab);
  return t;
}

}  // namespace

TEST(RougeN, UnigramExample) {
  const auto s = c2f::rouge_n(tokenize("the cat sat"), tokenize("the cat"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.8);
}

TEST(RougeN, IdentityAndDisjoint) {
  const auto t = tokenize("one two three four");
  for (std::size_t n : {1u, 2u, 4u}) {
    const auto s = c2f::rouge_n(t, t, n);
    EXPECT_DOUBLE_EQ(s.f1, 1.0);
  }
  const auto d = c2f::rouge_n(tokenize("a b c"), tokenize("x y z"), 1);
  EXPECT_EQ(d.precision, 0.0);
  EXPECT_EQ(d.recall, 0.0);
  EXPECT_EQ(d.f1, 0.0);
}

TEST(RougeN, ClipsRepeatedTokens) {
  const auto s = c2f::rouge_n(tokenize("the the the"), tokenize("the cat"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
}

TEST(RougeN, BigramsAcrossSentences) {
  // Sentences are concatenated before counting.
  const std::vector<Tokens> cand{tokenize("a b"), tokenize("c")};
  const std::vector<Tokens> ref{tokenize("a b c")};
  const auto s = c2f::rouge_n(cand, ref, 2);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
}

TEST(RougeN, ShortInputsGiveZero) {
  const auto s = c2f::rouge_n(tokenize("a"), tokenize("a"), 2);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(RougeL, Examples) {
  const std::vector<Tokens> abc{tokenize("a b c")};
  const auto same = c2f::rouge_l(abc, abc);
  EXPECT_DOUBLE_EQ(same.f1, 1.0);

  const std::vector<Tokens> axc{tokenize("a x c")};
  const auto s = c2f::rouge_l(axc, abc);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);

  const auto empty = c2f::rouge_l(std::vector<Tokens>{}, abc);
  EXPECT_EQ(empty.f1, 0.0);
}

TEST(RougeL, UnionAcrossCandidateSentences) {
  // ref "a b c d"; cand sentences cover "a b" and "c d" separately.
  const std::vector<Tokens> cand{tokenize("a b"), tokenize("c d")};
  const std::vector<Tokens> ref{tokenize("a b c d")};
  const auto s = c2f::rouge_l(cand, ref);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
}

TEST(RougeProperties, SymmetryIdentityAndBound) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tokens a = random_tokens(rng, 15, 8);
    const Tokens b = random_tokens(rng, 15, 8);
    for (std::size_t n : {1u, 2u}) {
      const auto ab = c2f::rouge_n(a, b, n);
      const auto ba = c2f::rouge_n(b, a, n);
      EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
      EXPECT_DOUBLE_EQ(ab.recall, ba.precision);
      EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
      EXPECT_LE(std::min(ab.precision, ab.recall), ab.f1 + 1e-15);
      EXPECT_GE(std::max(ab.precision, ab.recall), ab.f1 - 1e-15);
      if (a.size() >= n) {
        EXPECT_DOUBLE_EQ(c2f::rouge_n(a, a, n).f1, 1.0);
      }
    }
    const std::vector<Tokens> sa{a};
    const std::vector<Tokens> sb{b};
    const auto l_ab = c2f::rouge_l(sa, sb);
    const auto l_ba = c2f::rouge_l(sb, sa);
    EXPECT_DOUBLE_EQ(l_ab.precision, l_ba.recall);
    EXPECT_DOUBLE_EQ(l_ab.f1, l_ba.f1);
    if (!a.empty()) {
      EXPECT_DOUBLE_EQ(c2f::rouge_l(sa, sa).f1, 1.0);
    }
  }
}
