#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "c2f/core.hpp"

namespace c2f {

// Standard normal draws from mt19937_64 via Box-Muller. The engine's output
// sequence is fixed by the standard; std::normal_distribution's is not.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53 random bits -> (0, 1]
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SyntheticDocument {
  Document doc;
  EmbeddingMatrix embeddings;
  std::vector<std::size_t> boundaries;  // planted gap ids
};

// Block b's sentences embed as basis vector e_b plus N(0, noise^2) per
// coordinate, re-normalized. One reference sentence per block (its first).
inline SyntheticDocument make_synthetic_document(std::string id, const std::vector<std::size_t>& block_sizes,
                                                 std::size_t dim, double noise, GaussianSource& rng) {
  if (block_sizes.empty()) throw Error(ErrorKind::invalid_argument, "need at least one block");
  if (dim < block_sizes.size()) {
    throw Error(ErrorKind::invalid_argument, "dim (" + std::to_string(dim) + ") must be >= block count (" +
                                                 std::to_string(block_sizes.size()) + ")");
  }
  SyntheticDocument out;
  out.doc.id = std::move(id);
  std::vector<std::vector<std::string>> reference;
  std::vector<double> values;
  std::size_t sentence = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] == 0) throw Error(ErrorKind::invalid_argument, "block sizes must be >= 1");
    for (std::size_t j = 0; j < block_sizes[b]; ++j, ++sentence) {
      const std::string text = "Topic" + std::to_string(b) + " covers point " + std::to_string(j) + " of facet " +
                               std::to_string(b) + " in sentence " + std::to_string(sentence) + ".";
      out.doc.sentences.emplace_back(text);
      if (j == 0) reference.push_back(out.doc.sentences.back().tokens);

      std::vector<double> row(dim, 0.0);
      row[b] = 1.0;
      if (noise > 0.0) {
        for (double& v : row) v += noise * rng.normal();
      }
      double sq = 0.0;
      for (double v : row) sq += v * v;
      const double inv = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
      for (double v : row) values.push_back(v * inv);
    }
    if (b + 1 < block_sizes.size()) out.boundaries.push_back(sentence - 1);
  }
  out.doc.reference = std::move(reference);
  out.embeddings = EmbeddingMatrix(sentence, dim, std::move(values));
  return out;
}

struct SyntheticSpec {
  std::size_t documents = 1;
  std::size_t blocks = 2;               // used when min/max block size are unset
  std::size_t sentences_per_block = 4;  // ditto
  std::size_t min_block = 0;            // > 0: sizes drawn uniformly from [min_block, max_block]
  std::size_t max_block = 0;
  std::size_t min_blocks = 0;           // > 0: block count drawn from [min_blocks, max_blocks]
  std::size_t max_blocks = 0;
  std::size_t sentences = 0;            // > 0: draw block sizes until exactly this many sentences
  std::size_t dim = 16;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

inline std::vector<SyntheticDocument> make_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.blocks < 1) throw Error(ErrorKind::invalid_argument, "blocks must be >= 1");
  if (spec.min_block > spec.max_block || (spec.min_block == 0) != (spec.max_block == 0)) {
    throw Error(ErrorKind::invalid_argument, "invalid block size range");
  }
  GaussianSource rng(spec.seed);
  std::vector<SyntheticDocument> docs;
  for (std::size_t d = 0; d < spec.documents; ++d) {
    std::vector<std::size_t> sizes;
    if (spec.sentences > 0) {
      const std::size_t lo = spec.min_block ? spec.min_block : spec.sentences_per_block;
      const std::size_t hi = spec.max_block ? spec.max_block : spec.sentences_per_block;
      std::size_t total = 0;
      while (total < spec.sentences) {
        std::size_t s = rng.uniform_int(lo, hi);
        s = std::min(s, spec.sentences - total);
        sizes.push_back(s);
        total += s;
      }
    } else {
      std::size_t count = spec.blocks;
      if (spec.min_blocks > 0) count = rng.uniform_int(spec.min_blocks, spec.max_blocks);
      for (std::size_t b = 0; b < count; ++b) {
        sizes.push_back(spec.min_block ? rng.uniform_int(spec.min_block, spec.max_block) : spec.sentences_per_block);
      }
    }
    docs.push_back(make_synthetic_document("syn-" + std::to_string(spec.seed) + "-" + std::to_string(d), sizes,
                                           spec.dim, spec.noise, rng));
  }
  return docs;
}

}  // namespace c2f
