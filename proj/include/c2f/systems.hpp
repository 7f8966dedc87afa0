#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "c2f/baselines.hpp"
#include "c2f/pipeline.hpp"

namespace c2f {

enum class System { c2f, lead, pacsum, textrank_tfidf, textrank_emb, oracle };

inline constexpr std::array<System, 6> kAllSystems = {System::c2f,            System::lead,
                                                      System::pacsum,         System::textrank_tfidf,
                                                      System::textrank_emb,   System::oracle};

inline std::string_view system_name(System s) {
  switch (s) {
    case System::c2f: return "c2f";
    case System::lead: return "lead";
    case System::pacsum: return "pacsum";
    case System::textrank_tfidf: return "textrank-tfidf";
    case System::textrank_emb: return "textrank-emb";
    case System::oracle: return "oracle";
  }
  return "?";
}

inline System parse_system(std::string_view name) {
  for (System s : kAllSystems) {
    if (system_name(s) == name) return s;
  }
  throw Error(ErrorKind::invalid_argument, "unknown system: " + std::string(name));
}

inline bool needs_embeddings(System s) {
  return s == System::c2f || s == System::pacsum || s == System::textrank_emb;
}

// Runs one system on one document. `e` is required for systems that use
// embeddings. Dot-product counts are added to `ops` when given.
inline SummaryResult run_system(System s, const Document& doc, const EmbeddingMatrix* e,
                                const PipelineConfig& config, OpCounts* ops = nullptr) {
  if (needs_embeddings(s)) {
    if (!e) throw Error(ErrorKind::invalid_argument, std::string(system_name(s)) + " needs embeddings");
    if (e->rows() != doc.size()) {
      throw Error(ErrorKind::mismatch, "sentence count mismatch for document " + doc.id + ": embeddings have " +
                                           std::to_string(e->rows()) + " rows, document has " +
                                           std::to_string(doc.size()) + " sentences");
    }
  }
  switch (s) {
    case System::c2f: {
      auto r = summarize(doc, *e, config);
      if (ops) {
        ops->coarse_dot_products += r.trace->op_counts.coarse_dot_products;
        ops->relevance_cosines += r.trace->op_counts.relevance_cosines;
        ops->fine_dot_products += r.trace->op_counts.fine_dot_products;
      }
      return r;
    }
    case System::lead: return lead(doc, config.k);
    case System::pacsum: return pacsum_like(*e, config.k, config.lambda1, config.lambda2, ops);
    case System::textrank_tfidf: return textrank(tfidf_weights(doc), config.k);
    case System::textrank_emb: return textrank(embedding_weights(*e), config.k);
    case System::oracle: return oracle(doc, config.k);
  }
  throw Error(ErrorKind::invalid_argument, "unhandled system");
}

}  // namespace c2f
