#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "c2f/core.hpp"
#include "c2f/estimators.hpp"
#include "c2f/linalg.hpp"
#include "c2f/rouge.hpp"

namespace c2f {

// First min(k, n) sentences.
inline SummaryResult lead(const Document& doc, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  SummaryResult r;
  r.sentence_ids.resize(std::min(k, doc.size()));
  std::iota(r.sentence_ids.begin(), r.sentence_ids.end(), std::size_t{0});
  return r;
}

// Directed centrality over every sentence; top k in document order.
inline SummaryResult pacsum_like(const EmbeddingMatrix& e, std::size_t k, double lambda1, double lambda2,
                                 OpCounts* ops = nullptr) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  std::uint64_t dots = 0;
  const auto scores = directed_centrality(all_rows(e), lambda1, lambda2, &dots);
  if (ops) ops->fine_dot_products += dots;
  SummaryResult r;
  r.sentence_ids = rank_desc(scores).top_ids_in_order(k);
  return r;
}

// ---------------------------------------------------------------------------
// TextRank
// ---------------------------------------------------------------------------

struct WeightMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // row-major n x n

  explicit WeightMatrix(std::size_t size = 0) : n(size), values(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// Cosine of TF-IDF vectors; idf = ln((1 + n) / (1 + df)) + 1.
inline WeightMatrix tfidf_weights(const Document& doc) {
  const std::size_t n = doc.size();
  std::map<std::string, std::size_t> df;
  for (const auto& s : doc.sentences) {
    std::vector<std::string> uniq = s.tokens;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (const auto& t : uniq) ++df[t];
  }
  std::map<std::string, std::size_t> vocab;
  for (const auto& [t, c] : df) vocab.emplace(t, vocab.size());

  std::vector<std::vector<double>> vecs(n, std::vector<double>(vocab.size(), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : doc.sentences[i].tokens) vecs[i][vocab[t]] += 1.0;
    for (const auto& [t, idx] : vocab) {
      if (vecs[i][idx] != 0.0) {
        vecs[i][idx] *= std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(df[t]))) + 1.0;
      }
    }
  }
  WeightMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = std::max(cosine(vecs[i], vecs[j]), 0.0);
      w(i, j) = c;
      w(j, i) = c;
    }
  }
  return w;
}

// Embedding cosine with negatives clamped to 0.
inline WeightMatrix embedding_weights(const EmbeddingMatrix& e) {
  const std::size_t n = e.rows();
  WeightMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = std::max(cosine(e.row(i), e.row(j)), 0.0);
      w(i, j) = c;
      w(j, i) = c;
    }
  }
  return w;
}

struct TextRankOptions {
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;
};

struct TextRankScores {
  std::vector<double> scores;
  std::size_t iterations = 0;
};

// Power iteration of damped PageRank on the row-normalized graph. Rows with
// no outgoing weight spread their mass uniformly, so scores stay a
// probability distribution.
inline TextRankScores textrank_scores(const WeightMatrix& w, const TextRankOptions& opt = {}) {
  if (!(opt.damping > 0.0 && opt.damping < 1.0)) throw Error(ErrorKind::invalid_argument, "damping must be in (0, 1)");
  const std::size_t n = w.n;
  for (std::size_t i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw Error(ErrorKind::invalid_argument, "textrank weights need a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(w(i, j) >= 0.0) || std::abs(w(i, j) - w(j, i)) > 1e-12) {
        throw Error(ErrorKind::invalid_argument, "textrank weights must be symmetric and non-negative");
      }
    }
  }
  TextRankScores out;
  if (n == 0) return out;
  const double dn = static_cast<double>(n);
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out_weight[i] += w(i, j);
  }
  std::vector<double> x(n, 1.0 / dn);
  std::vector<double> next(n);
  for (out.iterations = 0; out.iterations < opt.max_iterations;) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] == 0.0) dangling += x[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = dangling / dn;
      for (std::size_t j = 0; j < n; ++j) {
        if (out_weight[j] != 0.0) s += x[j] * w(j, i) / out_weight[j];
      }
      next[i] = (1.0 - opt.damping) / dn + opt.damping * s;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - x[i]);
    x.swap(next);
    ++out.iterations;
    if (delta < opt.tolerance) break;
  }
  out.scores = std::move(x);
  return out;
}

inline SummaryResult textrank(const WeightMatrix& w, std::size_t k, double damping = 0.85) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  TextRankOptions opt;
  opt.damping = damping;
  const auto tr = textrank_scores(w, opt);
  SummaryResult r;
  r.sentence_ids = rank_desc(tr.scores).top_ids_in_order(k);
  return r;
}

// ---------------------------------------------------------------------------
// Greedy oracle
// ---------------------------------------------------------------------------

// Mean of ROUGE-1 and ROUGE-2 F1 of the chosen sentences (document order)
// against the reference; the oracle's objective.
inline double oracle_objective(const Document& doc, std::span<const std::size_t> ids,
                               std::span<const Tokens> reference) {
  std::vector<std::size_t> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Tokens> cand;
  cand.reserve(sorted.size());
  for (std::size_t i : sorted) cand.push_back(doc.sentences[i].tokens);
  return 0.5 * (rouge_n(cand, reference, 1).f1 + rouge_n(cand, reference, 2).f1);
}

// Adds the sentence with the largest objective until k are chosen or no
// sentence strictly improves it. Ties go to the earlier sentence.
inline SummaryResult oracle(const Document& doc, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  if (!doc.reference) throw Error(ErrorKind::invalid_argument, "oracle needs a reference summary: " + doc.id);
  const auto& ref = *doc.reference;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(doc.size(), false);
  double current = 0.0;
  while (chosen.size() < k) {
    double best = current;
    std::size_t best_id = doc.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (used[i]) continue;
      chosen.push_back(i);
      const double v = oracle_objective(doc, chosen, ref);
      chosen.pop_back();
      if (v > best) {
        best = v;
        best_id = i;
      }
    }
    if (best_id == doc.size()) break;
    chosen.push_back(best_id);
    used[best_id] = true;
    current = best;
  }
  SummaryResult r;
  std::sort(chosen.begin(), chosen.end());
  r.sentence_ids = std::move(chosen);
  return r;
}

}  // namespace c2f
