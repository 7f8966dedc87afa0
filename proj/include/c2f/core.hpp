#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Shared domain types. Sentence ids, block ids and gap ids are 0-based
// everywhere in this library, in files and on the command line. Gap g sits
// between sentence g and sentence g + 1.

namespace c2f {

enum class ErrorKind {
  io,
  format,
  not_found,
  mismatch,
  invalid_argument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::format: return "format";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::mismatch: return "mismatch";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Non-ASCII bytes belong to multi-byte UTF-8 code points; they count as
// word characters so trimming never splits a code point.
inline bool is_word_byte(unsigned char c) { return c >= 0x80 || is_ascii_alnum(c); }

// Length in bytes of a whitespace code point starting at s[i], or 0.
inline std::size_t whitespace_len(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c == ' ' || (c >= 0x09 && c <= 0x0d)) return 1;
  auto at = [&](std::size_t k) -> unsigned char {
    return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0;
  };
  if (c == 0xc2 && (at(1) == 0x85 || at(1) == 0xa0)) return 2;  // NEL, NBSP
  if (c == 0xe1 && at(1) == 0x9a && at(2) == 0x80) return 3;    // U+1680
  if (c == 0xe2 && at(1) == 0x80) {
    const unsigned char t = at(2);
    if ((t >= 0x80 && t <= 0x8a) || t == 0xa8 || t == 0xa9 || t == 0xaf) return 3;
  }
  if (c == 0xe2 && at(1) == 0x81 && at(2) == 0x9f) return 3;  // U+205F
  if (c == 0xe3 && at(1) == 0x80 && at(2) == 0x80) return 3;  // U+3000
  return 0;
}

}  // namespace detail

// Lowercase, split on Unicode whitespace, strip leading/trailing
// non-alphanumeric characters, drop empty tokens. Lowercasing is ASCII-only.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size()) {
      const std::size_t ws = detail::whitespace_len(text, i);
      if (ws == 0) break;
      i += ws;
    }
    std::size_t end = i;
    while (end < text.size() && detail::whitespace_len(text, end) == 0) ++end;
    std::string_view raw = text.substr(i, end - i);
    i = end;

    std::size_t b = 0;
    std::size_t e = raw.size();
    while (b < e && !detail::is_word_byte(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && !detail::is_word_byte(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (b == e) continue;
    std::string tok(raw.substr(b, e - b));
    for (char& ch : tok) {
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;

  Sentence() = default;
  explicit Sentence(std::string t) : text(std::move(t)), tokens(tokenize(text)) {}
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  // Reference summary sentences, tokenized; absent when the corpus line has none.
  std::optional<std::vector<std::vector<std::string>>> reference;

  std::size_t size() const { return sentences.size(); }

  static Document from_text(std::string id, const std::vector<std::string>& sentences) {
    Document doc;
    doc.id = std::move(id);
    doc.sentences.reserve(sentences.size());
    for (const auto& s : sentences) doc.sentences.emplace_back(s);
    return doc;
  }
};

// Dense n x d matrix of sentence vectors, row-major, 64-bit.
// Construction rejects non-finite entries and repairs all-zero rows to the
// unit vector on coordinate 0; repaired row ids are kept for diagnostics.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;

  EmbeddingMatrix(std::size_t rows, std::size_t dim, std::vector<double> values)
      : rows_(rows), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) throw Error(ErrorKind::invalid_argument, "embedding dimension must be >= 1");
    if (values_.size() != rows_ * dim_) {
      throw Error(ErrorKind::invalid_argument, "embedding value count does not match rows * dim");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::format, "embedding contains a non-finite value");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      auto r = mutable_row(i);
      if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
        r[0] = 1.0;
        repaired_.push_back(i);
      }
    }
  }

  static EmbeddingMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw Error(ErrorKind::invalid_argument, "embedding matrix needs at least one row");
    const std::size_t dim = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * dim);
    for (const auto& r : rows) {
      if (r.size() != dim) throw Error(ErrorKind::invalid_argument, "ragged embedding rows");
      values.insert(values.end(), r.begin(), r.end());
    }
    return EmbeddingMatrix(rows.size(), dim, std::move(values));
  }

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<const double> values() const { return values_; }
  const std::vector<std::size_t>& repaired_rows() const { return repaired_; }

 private:
  std::span<double> mutable_row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }

  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<std::size_t> repaired_;
};

// Contiguous run of sentences [start, end], both inclusive.
struct SemanticBlock {
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<std::vector<double>> representation;

  std::size_t size() const { return end - start + 1; }
  bool contains(std::size_t sentence) const { return sentence >= start && sentence <= end; }
};

struct Segmentation {
  std::vector<SemanticBlock> blocks;

  std::size_t sentence_count() const { return blocks.empty() ? 0 : blocks.back().end + 1; }

  // Block id holding `sentence`; blocks are sorted so binary search works.
  std::size_t block_of(std::size_t sentence) const {
    auto it = std::upper_bound(blocks.begin(), blocks.end(), sentence,
                               [](std::size_t s, const SemanticBlock& b) { return s < b.start; });
    return static_cast<std::size_t>(it - blocks.begin()) - 1;
  }

  // Checks the partition invariant against a document of n sentences.
  bool covers(std::size_t n) const {
    if (blocks.empty() || n == 0) return false;
    std::size_t next = 0;
    for (const auto& b : blocks) {
      if (b.start != next || b.end < b.start) return false;
      next = b.end + 1;
    }
    return next == n;
  }

  std::size_t max_block_size() const {
    std::size_t m = 0;
    for (const auto& b : blocks) m = std::max(m, b.size());
    return m;
  }
};

struct PipelineConfig {
  std::size_t w = 2;
  std::size_t w_hat = 2;
  double lambda = 1.0;
  double alpha = 0.5;
  std::size_t k = 10;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  // Unset: beta = ceil(n / m) from the unfiltered segmentation.
  std::optional<std::size_t> beta;

  void validate() const {
    if (w < 1) throw Error(ErrorKind::invalid_argument, "w must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::invalid_argument, "alpha must be in (0, 1]");
    if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
    if (beta && *beta < 1) throw Error(ErrorKind::invalid_argument, "beta must be >= 1");
    if (!std::isfinite(lambda) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
      throw Error(ErrorKind::invalid_argument, "lambda, lambda1 and lambda2 must be finite");
    }
  }
};

struct RankedItem {
  std::size_t id = 0;
  double score = 0.0;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

// Items sorted by descending score, ties broken by ascending id.
struct RankedItems {
  std::vector<RankedItem> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }

  std::vector<std::size_t> ids() const {
    std::vector<std::size_t> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(it.id);
    return out;
  }

  // First `count` ids, re-sorted ascending.
  std::vector<std::size_t> top_ids_in_order(std::size_t count) const {
    count = std::min(count, items.size());
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(items[i].id);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Pairwise-work counters used by the benchmark harness.
struct OpCounts {
  std::uint64_t coarse_dot_products = 0;
  std::uint64_t relevance_cosines = 0;
  std::uint64_t fine_dot_products = 0;

  std::uint64_t total() const { return coarse_dot_products + relevance_cosines + fine_dot_products; }
};

struct StageTrace {
  RankedItems block_scores;
  std::vector<std::size_t> kept_blocks;
  std::size_t beta_used = 0;
  std::vector<std::size_t> candidates;
  RankedItems candidate_scores;
  OpCounts op_counts;
};

struct SummaryResult {
  std::vector<std::size_t> sentence_ids;
  std::optional<Segmentation> segmentation;
  std::optional<StageTrace> trace;
};

}  // namespace c2f
