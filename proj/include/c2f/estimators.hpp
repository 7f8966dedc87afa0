#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "c2f/core.hpp"
#include "c2f/linalg.hpp"

namespace c2f {

// Sorts ids 0..n-1 by descending score, ties by ascending id.
inline RankedItems rank_desc(std::span<const double> scores) {
  RankedItems out;
  out.items.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out.items.push_back({i, scores[i]});
  std::stable_sort(out.items.begin(), out.items.end(),
                   [](const RankedItem& a, const RankedItem& b) { return a.score > b.score; });
  return out;
}

// Same, but item i carries ids[i] instead of i.
inline RankedItems rank_desc(std::span<const double> scores, std::span<const std::size_t> ids) {
  RankedItems out = rank_desc(scores);
  for (auto& it : out.items) it.id = ids[it.id];
  return out;
}

inline std::vector<double> block_representation(const EmbeddingMatrix& e, const SemanticBlock& block) {
  return mean_rows(e, block.start, block.end);
}

// score_i = lambda1 * sum_{j<i} v_i.v_j + lambda2 * sum_{j>i} v_i.v_j
//
// Each unordered pair is evaluated once and credited to both ends;
// `dot_products` (if given) is increased by the number of pairs evaluated.
template <typename Vectors>
std::vector<double> directed_centrality(const Vectors& vectors, double lambda1, double lambda2,
                                        std::uint64_t* dot_products = nullptr) {
  const std::size_t n = std::size(vectors);
  std::vector<double> scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = dot(vectors[i], vectors[j]);
      scores[i] += lambda2 * s;  // j follows i
      scores[j] += lambda1 * s;  // i precedes j
    }
  }
  if (dot_products) *dot_products += static_cast<std::uint64_t>(n) * (n ? n - 1 : 0) / 2;
  return scores;
}

// Rows of `e` selected by `ids`, as spans, for use with directed_centrality.
inline std::vector<std::span<const double>> select_rows(const EmbeddingMatrix& e, std::span<const std::size_t> ids) {
  std::vector<std::span<const double>> rows;
  rows.reserve(ids.size());
  for (std::size_t id : ids) rows.push_back(e.row(id));
  return rows;
}

inline std::vector<std::span<const double>> all_rows(const EmbeddingMatrix& e) {
  std::vector<std::span<const double>> rows;
  rows.reserve(e.rows());
  for (std::size_t i = 0; i < e.rows(); ++i) rows.push_back(e.row(i));
  return rows;
}

// Cosine of every sentence in `block` with the block representation,
// ranked; ids are document sentence ids.
inline RankedItems relevance_scores(const EmbeddingMatrix& e, const SemanticBlock& block,
                                    std::span<const double> representation) {
  std::vector<double> scores;
  std::vector<std::size_t> ids;
  scores.reserve(block.size());
  ids.reserve(block.size());
  for (std::size_t s = block.start; s <= block.end; ++s) {
    scores.push_back(cosine(e.row(s), representation));
    ids.push_back(s);
  }
  return rank_desc(scores, ids);
}

}  // namespace c2f
