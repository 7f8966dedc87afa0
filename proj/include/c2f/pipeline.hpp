#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "c2f/core.hpp"
#include "c2f/estimators.hpp"
#include "c2f/segmentation.hpp"

namespace c2f {

// Number of blocks kept by the coarse filter: ceil(alpha * m), at least one.
inline std::size_t kept_block_count(std::size_t m, double alpha) {
  const auto raw = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(m) - 1e-12));
  return std::clamp<std::size_t>(raw, 1, m);
}

struct CoarseResult {
  RankedItems block_scores;
  std::vector<std::size_t> kept_blocks;  // document order
  std::uint64_t dot_products = 0;
};

// Scores every block by directed centrality over the block means and keeps
// the top ceil(alpha * m). Fills each block's representation.
inline CoarseResult coarse_stage(const EmbeddingMatrix& e, Segmentation& seg, double alpha, double lambda1,
                                 double lambda2) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::invalid_argument, "alpha must be in (0, 1]");
  std::vector<std::vector<double>> reps;
  reps.reserve(seg.blocks.size());
  for (auto& b : seg.blocks) {
    b.representation = block_representation(e, b);
    reps.push_back(*b.representation);
  }
  CoarseResult out;
  const auto scores = directed_centrality(reps, lambda1, lambda2, &out.dot_products);
  out.block_scores = rank_desc(scores);
  out.kept_blocks = out.block_scores.top_ids_in_order(kept_block_count(seg.blocks.size(), alpha));
  return out;
}

// beta = ceil(n / m) over the unfiltered segmentation.
inline std::size_t derive_beta(const Segmentation& seg) {
  if (seg.blocks.empty()) throw Error(ErrorKind::invalid_argument, "derive_beta on an empty segmentation");
  const std::size_t n = seg.sentence_count();
  const std::size_t m = seg.blocks.size();
  return (n + m - 1) / m;
}

struct FineCandidates {
  std::vector<std::size_t> candidates;  // document order
  std::uint64_t relevance_cosines = 0;
};

// Top min(beta, |block|) sentences of each kept block by cosine relevance to
// the block mean.
inline FineCandidates fine_candidates(const EmbeddingMatrix& e, const Segmentation& seg,
                                      std::span<const std::size_t> kept_blocks, std::size_t beta) {
  if (beta < 1) throw Error(ErrorKind::invalid_argument, "beta must be >= 1");
  FineCandidates out;
  for (std::size_t b : kept_blocks) {
    const SemanticBlock& block = seg.blocks[b];
    const std::vector<double> rep =
        block.representation ? *block.representation : block_representation(e, block);
    const RankedItems rel = relevance_scores(e, block, rep);
    out.relevance_cosines += block.size();
    const auto top = rel.top_ids_in_order(beta);
    out.candidates.insert(out.candidates.end(), top.begin(), top.end());
  }
  std::sort(out.candidates.begin(), out.candidates.end());
  return out;
}

inline SummaryResult summarize(const EmbeddingMatrix& e, const PipelineConfig& config) {
  config.validate();
  const std::size_t n = e.rows();
  if (n == 0) throw Error(ErrorKind::invalid_argument, "cannot summarize an empty document");

  SummaryResult result;
  StageTrace trace;
  auto seg = segment(e, config).segmentation;

  auto coarse = coarse_stage(e, seg, config.alpha, config.lambda1, config.lambda2);
  trace.block_scores = std::move(coarse.block_scores);
  trace.kept_blocks = std::move(coarse.kept_blocks);
  trace.op_counts.coarse_dot_products = coarse.dot_products;

  trace.beta_used = config.beta ? *config.beta : derive_beta(seg);
  auto fine = fine_candidates(e, seg, trace.kept_blocks, trace.beta_used);
  trace.candidates = std::move(fine.candidates);
  trace.op_counts.relevance_cosines = fine.relevance_cosines;

  const auto rows = select_rows(e, trace.candidates);
  const auto scores =
      directed_centrality(rows, config.lambda1, config.lambda2, &trace.op_counts.fine_dot_products);
  trace.candidate_scores = rank_desc(scores, trace.candidates);

  if (n <= config.k) {
    result.sentence_ids.resize(n);
    std::iota(result.sentence_ids.begin(), result.sentence_ids.end(), std::size_t{0});
  } else {
    result.sentence_ids = trace.candidate_scores.top_ids_in_order(config.k);
  }
  result.segmentation = std::move(seg);
  result.trace = std::move(trace);
  return result;
}

inline SummaryResult summarize(const Document& doc, const EmbeddingMatrix& e, const PipelineConfig& config) {
  if (doc.size() != e.rows()) {
    throw Error(ErrorKind::mismatch, "sentence count mismatch for document " + doc.id + ": embeddings have " +
                                         std::to_string(e.rows()) + " rows, document has " +
                                         std::to_string(doc.size()) + " sentences");
  }
  return summarize(e, config);
}

struct FacetSpread {
  std::size_t facet_count = 0;
  double sentences_per_facet = 0.0;
};

// How many blocks the selected sentences fall into, and selected / blocks.
inline FacetSpread facet_spread(std::span<const std::size_t> sentence_ids, const Segmentation& seg) {
  FacetSpread out;
  std::vector<std::size_t> hit;
  for (std::size_t s : sentence_ids) {
    if (s >= seg.sentence_count()) throw Error(ErrorKind::invalid_argument, "sentence id outside segmentation");
    hit.push_back(seg.block_of(s));
  }
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
  out.facet_count = hit.size();
  if (out.facet_count > 0) {
    out.sentences_per_facet = static_cast<double>(sentence_ids.size()) / static_cast<double>(out.facet_count);
  }
  return out;
}

}  // namespace c2f
