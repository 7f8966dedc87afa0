#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "c2f/rouge.hpp"
#include "c2f/systems.hpp"

namespace c2f {

inline nlohmann::json to_json(const RougeScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

inline nlohmann::json to_json(const RougeTriple& t) {
  return {{"rouge1", to_json(t.rouge1)}, {"rouge2", to_json(t.rouge2)}, {"rougeL", to_json(t.rougeL)}};
}

// Supplies the embedding matrix for a document (file-backed or hashed).
using EmbeddingSource = std::function<EmbeddingMatrix(const Document&)>;

// ---------------------------------------------------------------------------
// Corpus evaluation
// ---------------------------------------------------------------------------

struct DocEvaluation {
  std::string id;
  std::vector<std::size_t> summary_ids;
  RougeTriple scores;
};

struct CorpusEvaluation {
  std::string system;
  std::vector<DocEvaluation> documents;
  RougeTriple mean;
  std::size_t skipped = 0;  // documents without a reference
};

inline RougeTriple mean_scores(const std::vector<RougeTriple>& all) {
  RougeTriple m;
  if (all.empty()) return m;
  auto add = [](RougeScore& acc, const RougeScore& s) {
    acc.precision += s.precision;
    acc.recall += s.recall;
    acc.f1 += s.f1;
  };
  for (const auto& t : all) {
    add(m.rouge1, t.rouge1);
    add(m.rouge2, t.rouge2);
    add(m.rougeL, t.rougeL);
  }
  const double n = static_cast<double>(all.size());
  for (RougeScore* s : {&m.rouge1, &m.rouge2, &m.rougeL}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  return m;
}

inline DocEvaluation evaluate_document(const Document& doc, System system, const EmbeddingSource& embeddings,
                                       const PipelineConfig& config) {
  std::optional<EmbeddingMatrix> e;
  if (needs_embeddings(system)) e = embeddings(doc);
  const auto result = run_system(system, doc, e ? &*e : nullptr, config);
  DocEvaluation out;
  out.id = doc.id;
  out.summary_ids = result.sentence_ids;
  std::vector<Tokens> cand;
  for (std::size_t i : result.sentence_ids) cand.push_back(doc.sentences[i].tokens);
  out.scores = rouge_all(cand, *doc.reference);
  return out;
}

// Per-document ROUGE-1/2/L, arithmetic mean over documents that have a
// reference; the rest are counted in `skipped`.
inline CorpusEvaluation evaluate_corpus(const std::vector<Document>& corpus, System system,
                                        const EmbeddingSource& embeddings, const PipelineConfig& config) {
  CorpusEvaluation out;
  out.system = std::string(system_name(system));
  std::vector<RougeTriple> all;
  for (const auto& doc : corpus) {
    if (!doc.reference) {
      ++out.skipped;
      continue;
    }
    out.documents.push_back(evaluate_document(doc, system, embeddings, config));
    all.push_back(out.documents.back().scores);
  }
  out.mean = mean_scores(all);
  return out;
}

// ---------------------------------------------------------------------------
// Benchmarking
// ---------------------------------------------------------------------------

struct BenchReport {
  std::string system;
  std::size_t repeats = 1;
  std::vector<double> per_doc_seconds;  // mean over repeats
  double mean_seconds = 0.0;            // mean over documents and repeats
  double total_seconds = 0.0;           // one pass over the corpus, averaged over repeats
  OpCounts op_counts;                   // one pass over the corpus
  std::map<std::string, double> speedup_vs;  // other system's time / this system's time
};

// Times the scoring of each document by each system. Embeddings are
// materialized before timing starts; only ranking work is measured.
inline std::vector<BenchReport> bench(const std::vector<Document>& corpus,
                                      const std::vector<EmbeddingMatrix>& embeddings,
                                      const std::vector<System>& systems, std::size_t repeats,
                                      const PipelineConfig& config) {
  if (repeats < 1) throw Error(ErrorKind::invalid_argument, "repeats must be >= 1");
  if (embeddings.size() != corpus.size()) throw Error(ErrorKind::mismatch, "one embedding matrix per document");
  using clock = std::chrono::steady_clock;
  std::vector<BenchReport> reports;
  std::size_t sink = 0;
  for (System s : systems) {
    BenchReport rep;
    rep.system = std::string(system_name(s));
    rep.repeats = repeats;
    rep.per_doc_seconds.assign(corpus.size(), 0.0);
    for (std::size_t r = 0; r < repeats; ++r) {
      for (std::size_t d = 0; d < corpus.size(); ++d) {
        OpCounts ops;
        const auto t0 = clock::now();
        const auto res = run_system(s, corpus[d], &embeddings[d], config, r == 0 ? &ops : nullptr);
        const auto t1 = clock::now();
        sink += res.sentence_ids.size();
        rep.per_doc_seconds[d] += std::chrono::duration<double>(t1 - t0).count();
        if (r == 0) {
          rep.op_counts.coarse_dot_products += ops.coarse_dot_products;
          rep.op_counts.relevance_cosines += ops.relevance_cosines;
          rep.op_counts.fine_dot_products += ops.fine_dot_products;
        }
      }
    }
    for (double& t : rep.per_doc_seconds) {
      t /= static_cast<double>(repeats);
      rep.total_seconds += t;
    }
    rep.mean_seconds = corpus.empty() ? 0.0 : rep.total_seconds / static_cast<double>(corpus.size());
    reports.push_back(std::move(rep));
  }
  for (auto& a : reports) {
    for (const auto& b : reports) {
      if (&a != &b && a.mean_seconds > 0.0) a.speedup_vs[b.system] = b.mean_seconds / a.mean_seconds;
    }
  }
  if (sink == static_cast<std::size_t>(-1)) reports.clear();  // keeps results observable
  return reports;
}

inline nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json j;
  j["system"] = r.system;
  j["repeats"] = r.repeats;
  j["documents"] = r.per_doc_seconds.size();
  j["mean_seconds"] = r.mean_seconds;
  j["total_seconds"] = r.total_seconds;
  j["per_doc_seconds"] = r.per_doc_seconds;
  j["op_counts"] = {{"coarse_dot_products", r.op_counts.coarse_dot_products},
                    {"relevance_cosines", r.op_counts.relevance_cosines},
                    {"fine_dot_products", r.op_counts.fine_dot_products}};
  j["speedup_vs"] = r.speedup_vs;
  return j;
}

// ---------------------------------------------------------------------------
// Combination-scoring cost model
// ---------------------------------------------------------------------------

struct CombinationCount {
  std::uint64_t count = 0;
  bool saturated = false;  // true when C(n, k) does not fit in 64 bits
};

// C(n_candidates, k): how many candidate summaries a ranker that scores every
// k-subset of the candidates would evaluate.
inline CombinationCount far_cost_model(std::uint64_t n_candidates, std::uint64_t k) {
  if (k > n_candidates) throw Error(ErrorKind::invalid_argument, "k must not exceed n_candidates");
  k = std::min(k, n_candidates - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n_candidates - i) / (i + 1);
    if (c > UINT64_MAX) return {UINT64_MAX, true};
  }
  return {static_cast<std::uint64_t>(c), false};
}

}  // namespace c2f
