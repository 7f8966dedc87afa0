#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "c2f/core.hpp"
#include "c2f/linalg.hpp"

namespace c2f {

// Per-gap intermediates of one segmentation run. Gap g lies between
// sentences g and g + 1, so every list has n - 1 entries.
struct BoundaryProfile {
  std::vector<double> raw_sims;
  std::vector<double> smoothed_sims;
  std::vector<double> depth_scores;
  double epsilon = 0.0;
  std::vector<std::size_t> boundaries;  // ascending gap ids
};

// Cosine between the mean of the w sentences left of each gap and the mean
// of the w sentences right of it. Windows are truncated at the document
// edges; a zero window mean yields similarity 0.
inline std::vector<double> gap_similarities(const EmbeddingMatrix& e, std::size_t w) {
  const std::size_t n = e.rows();
  if (n < 2) throw Error(ErrorKind::invalid_argument, "gap_similarities needs at least 2 sentences");
  if (w < 1) throw Error(ErrorKind::invalid_argument, "window size w must be >= 1");
  std::vector<double> sims(n - 1);
  for (std::size_t g = 0; g + 1 < n; ++g) {
    const std::size_t left_first = g + 1 >= w ? g + 1 - w : 0;
    const std::size_t right_last = std::min(n - 1, g + w);
    const auto left = mean_rows(e, left_first, g);
    const auto right = mean_rows(e, g + 1, right_last);
    sims[g] = cosine(left, right);
  }
  return sims;
}

// Centered moving average with half-width w_hat. At the edges the window is
// cut to the valid range and the divisor is the number of values actually
// averaged. w_hat = 0 is the identity.
inline std::vector<double> smooth(std::span<const double> sims, std::size_t w_hat) {
  std::vector<double> out(sims.begin(), sims.end());
  if (w_hat == 0 || sims.empty()) return out;
  const std::size_t m = sims.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t first = i >= w_hat ? i - w_hat : 0;
    const std::size_t last = std::min(m - 1, i + w_hat);
    double sum = 0.0;
    for (std::size_t j = first; j <= last; ++j) sum += sims[j];
    out[i] = sum / static_cast<double>(last - first + 1);
  }
  return out;
}

// d_i = max(s_{i-1} - s_i, 0) + max(s_{i+1} - s_i, 0); a missing neighbour
// contributes 0.
inline std::vector<double> depth_scores(std::span<const double> smoothed) {
  const std::size_t m = smoothed.size();
  std::vector<double> d(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double v = 0.0;
    if (i > 0) v += std::max(smoothed[i - 1] - smoothed[i], 0.0);
    if (i + 1 < m) v += std::max(smoothed[i + 1] - smoothed[i], 0.0);
    d[i] = v;
  }
  return d;
}

struct BoundarySelection {
  double epsilon = 0.0;
  std::vector<std::size_t> boundaries;
};

// epsilon = mean + lambda * population stddev; a gap is a boundary iff its
// depth is strictly greater than epsilon.
inline BoundarySelection select_boundaries(std::span<const double> depths, double lambda) {
  BoundarySelection sel;
  if (depths.empty()) return sel;
  const double count = static_cast<double>(depths.size());
  double mean = 0.0;
  for (double d : depths) mean += d;
  mean /= count;
  double var = 0.0;
  for (double d : depths) var += (d - mean) * (d - mean);
  var /= count;
  sel.epsilon = mean + lambda * std::sqrt(var);
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] > sel.epsilon) sel.boundaries.push_back(i);
  }
  return sel;
}

// Cuts [0, n) after each boundary gap.
inline Segmentation blocks_from_boundaries(std::size_t n, std::span<const std::size_t> boundaries) {
  Segmentation seg;
  std::size_t start = 0;
  for (std::size_t g : boundaries) {
    seg.blocks.push_back(SemanticBlock{start, g, std::nullopt});
    start = g + 1;
  }
  seg.blocks.push_back(SemanticBlock{start, n - 1, std::nullopt});
  return seg;
}

// Throws unless `seg` partitions sentences [0, n) into ordered contiguous blocks.
inline void validate_segmentation(const Segmentation& seg, std::size_t n) {
  if (!seg.covers(n)) {
    throw Error(ErrorKind::invalid_argument,
                "segmentation does not partition " + std::to_string(n) + " sentences into contiguous blocks");
  }
}

struct SegmentOutput {
  Segmentation segmentation;
  BoundaryProfile profile;
};

inline SegmentOutput segment(const EmbeddingMatrix& e, const PipelineConfig& config) {
  SegmentOutput out;
  const std::size_t n = e.rows();
  if (n == 0) throw Error(ErrorKind::invalid_argument, "cannot segment an empty document");
  if (n == 1) {
    out.segmentation.blocks.push_back(SemanticBlock{0, 0, std::nullopt});
    return out;
  }
  auto& p = out.profile;
  p.raw_sims = gap_similarities(e, config.w);
  p.smoothed_sims = smooth(p.raw_sims, config.w_hat);
  p.depth_scores = depth_scores(p.smoothed_sims);
  auto sel = select_boundaries(p.depth_scores, config.lambda);
  p.epsilon = sel.epsilon;
  p.boundaries = std::move(sel.boundaries);
  out.segmentation = blocks_from_boundaries(n, p.boundaries);
  return out;
}

}  // namespace c2f
