// Command-line front end: segment, summarize, evaluate, bench, gen-synthetic.
//
// All sentence, block and gap ids on the command line and in output are
// 0-based. Errors go to stderr as {"error": {"kind": ..., "message": ...}}.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "c2f/c2f.hpp"

namespace {

using nlohmann::json;

struct ConfigFlags {
  std::size_t w = 0;
  std::size_t w_hat = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  std::size_t k = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t beta = 0;

  CLI::Option* o_w = nullptr;
  CLI::Option* o_w_hat = nullptr;
  CLI::Option* o_lambda = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_k = nullptr;
  CLI::Option* o_lambda1 = nullptr;
  CLI::Option* o_lambda2 = nullptr;
  CLI::Option* o_beta = nullptr;

  void add_segmentation(CLI::App& app) {
    o_w = app.add_option("--w", w, "Similarity window, sentences per side (default 2)");
    o_w_hat = app.add_option("--w-hat", w_hat, "Smoothing half-width (default 2)");
    o_lambda = app.add_option("--lambda", lambda, "Boundary threshold multiplier (default 1.0)");
  }

  void add_all(CLI::App& app) {
    add_segmentation(app);
    o_alpha = app.add_option("--alpha", alpha, "Fraction of blocks kept (default 0.5)");
    o_k = app.add_option("--k", k, "Summary length in sentences (default 10)");
    o_lambda1 = app.add_option("--lambda1", lambda1, "Weight on preceding items (default 1.0)");
    o_lambda2 = app.add_option("--lambda2", lambda2, "Weight on following items (default 1.0)");
    o_beta = app.add_option("--beta", beta, "Per-block candidate count (default ceil(n / m))");
  }
};

// defaults < --config file < flags
c2f::PipelineConfig build_config(const std::string& config_path, const ConfigFlags& f) {
  c2f::PipelineConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw c2f::Error(c2f::ErrorKind::io, "cannot open config: " + config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw c2f::Error(c2f::ErrorKind::format, std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw c2f::Error(c2f::ErrorKind::format, "config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "w") cfg.w = v.get<std::size_t>();
      else if (key == "w_hat" || key == "w-hat") cfg.w_hat = v.get<std::size_t>();
      else if (key == "lambda") cfg.lambda = v.get<double>();
      else if (key == "alpha") cfg.alpha = v.get<double>();
      else if (key == "k") cfg.k = v.get<std::size_t>();
      else if (key == "lambda1") cfg.lambda1 = v.get<double>();
      else if (key == "lambda2") cfg.lambda2 = v.get<double>();
      else if (key == "beta") cfg.beta = v.get<std::size_t>();
      else throw c2f::Error(c2f::ErrorKind::format, "unknown config key: " + key);
    }
  }
  auto set = [](CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (set(f.o_w)) cfg.w = f.w;
  if (set(f.o_w_hat)) cfg.w_hat = f.w_hat;
  if (set(f.o_lambda)) cfg.lambda = f.lambda;
  if (set(f.o_alpha)) cfg.alpha = f.alpha;
  if (set(f.o_k)) cfg.k = f.k;
  if (set(f.o_lambda1)) cfg.lambda1 = f.lambda1;
  if (set(f.o_lambda2)) cfg.lambda2 = f.lambda2;
  if (set(f.o_beta)) cfg.beta = f.beta;
  cfg.validate();
  return cfg;
}

struct EmbeddingFlags {
  std::string path;
  std::size_t hash_dim = 256;

  void add(CLI::App& app) {
    auto* e = app.add_option("--embeddings", path, "Embedding file (binary .c2fe or JSONL)");
    app.add_option("--hash-dim", hash_dim, "Dimension of the built-in hashing embedder (default 256)")
        ->excludes(e);
  }

  c2f::EmbeddingSource source() const {
    if (!path.empty()) {
      auto store = std::make_shared<c2f::EmbeddingStore>(c2f::EmbeddingStore::open(path));
      return [store](const c2f::Document& d) { return store->get(d); };
    }
    const std::size_t dim = hash_dim;
    return [dim](const c2f::Document& d) { return c2f::hash_embed(d, dim); };
  }
};

// Runs fn(i) for every document on `jobs` threads; results keep corpus order.
template <typename Fn>
std::vector<std::string> parallel_lines(std::size_t count, std::size_t jobs, Fn fn) {
  std::vector<std::string> out(count);
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::size_t next = 0;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (failure || next >= count) return;
          i = next++;
        }
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw c2f::Error(c2f::ErrorKind::io, "cannot write " + path);
  out << text;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) {
    s += l;
    s += '\n';
  }
  return s;
}

std::vector<c2f::System> parse_systems(const std::string& csv) {
  std::vector<c2f::System> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(c2f::parse_system(item));
  }
  if (out.empty()) throw c2f::Error(c2f::ErrorKind::invalid_argument, "no systems given");
  return out;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse-to-fine facet-aware extractive summarizer for long documents"};
  app.set_version_flag("--version", C2F_VERSION);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string config_path;
  app.add_option("--seed", seed, "Random seed (gen-synthetic)");
  app.add_option("--jobs", jobs, "Documents processed in parallel (default 1)")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "JSON file with pipeline parameters; flags override it");

  // segment
  auto* seg_cmd = app.add_subcommand("segment", "Split documents into semantic blocks");
  std::string seg_corpus;
  std::string seg_out;
  EmbeddingFlags seg_emb;
  ConfigFlags seg_flags;
  seg_cmd->add_option("--corpus", seg_corpus, "Corpus JSONL")->required();
  seg_cmd->add_option("--out", seg_out, "Output JSONL (default stdout)");
  seg_emb.add(*seg_cmd);
  seg_flags.add_segmentation(*seg_cmd);

  // summarize
  auto* sum_cmd = app.add_subcommand("summarize", "Extract a summary for every document");
  std::string sum_corpus;
  std::string sum_out;
  std::string sum_system = "c2f";
  bool sum_trace = false;
  EmbeddingFlags sum_emb;
  ConfigFlags sum_flags;
  sum_cmd->add_option("--corpus", sum_corpus, "Corpus JSONL")->required();
  sum_cmd->add_option("--out", sum_out, "Output JSONL (default stdout)");
  sum_cmd->add_option("--system", sum_system, "c2f|lead|pacsum|textrank-tfidf|textrank-emb|oracle");
  sum_cmd->add_flag("--trace", sum_trace, "Attach per-stage trace (c2f only)");
  sum_emb.add(*sum_cmd);
  sum_flags.add_all(*sum_cmd);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "ROUGE-1/2/L of a system against corpus references");
  std::string eval_corpus;
  std::string eval_out;
  std::string eval_per_doc;
  std::string eval_system = "c2f";
  EmbeddingFlags eval_emb;
  ConfigFlags eval_flags;
  eval_cmd->add_option("--corpus", eval_corpus, "Corpus JSONL with references")->required();
  eval_cmd->add_option("--out", eval_out, "Aggregate JSON (default stdout)");
  eval_cmd->add_option("--per-doc", eval_per_doc, "Per-document JSONL output");
  eval_cmd->add_option("--system", eval_system, "System to evaluate");
  eval_emb.add(*eval_cmd);
  eval_flags.add_all(*eval_cmd);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time ranking systems on a corpus");
  std::string bench_corpus;
  std::string bench_out;
  std::string bench_systems = "c2f,pacsum,textrank-emb";
  std::size_t bench_repeats = 10;
  EmbeddingFlags bench_emb;
  ConfigFlags bench_flags;
  bench_cmd->add_option("--corpus", bench_corpus, "Corpus JSONL")->required();
  bench_cmd->add_option("--out", bench_out, "Report JSON (default stdout)");
  bench_cmd->add_option("--systems", bench_systems, "Comma-separated systems");
  bench_cmd->add_option("--repeats", bench_repeats, "Runs per system (default 10)")->check(CLI::PositiveNumber);
  bench_emb.add(*bench_cmd);
  bench_flags.add_all(*bench_cmd);

  // gen-synthetic
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a corpus with planted block boundaries");
  c2f::SyntheticSpec gen;
  std::string gen_corpus;
  std::string gen_embeddings;
  gen_cmd->add_option("--blocks", gen.blocks, "Blocks per document (default 2)");
  gen_cmd->add_option("--sentences-per-block", gen.sentences_per_block, "Sentences per block (default 4)");
  gen_cmd->add_option("--min-block", gen.min_block, "Draw block sizes from [min-block, max-block]");
  gen_cmd->add_option("--max-block", gen.max_block, "Upper end of the block size range");
  gen_cmd->add_option("--sentences", gen.sentences, "Fixed sentence count per document (with size range)");
  gen_cmd->add_option("--docs", gen.documents, "Number of documents (default 1)");
  gen_cmd->add_option("--dim", gen.dim, "Embedding dimension (default 16)");
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise scale per coordinate (default 0)");
  gen_cmd->add_option("--out-corpus", gen_corpus, "Corpus JSONL to write")->required();
  gen_cmd->add_option("--out-embeddings", gen_embeddings, "Embedding file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*seg_cmd) {
      const auto cfg = build_config(config_path, seg_flags);
      const auto corpus = c2f::read_corpus(seg_corpus);
      const auto source = seg_emb.source();
      const auto lines = parallel_lines(corpus.size(), jobs, [&](std::size_t i) {
        const auto e = source(corpus[i]);
        return c2f::segment_json(corpus[i].id, c2f::segment(e, cfg)).dump();
      });
      write_output(seg_out, join_lines(lines));
    } else if (*sum_cmd) {
      const auto cfg = build_config(config_path, sum_flags);
      const auto system = c2f::parse_system(sum_system);
      const auto corpus = c2f::read_corpus(sum_corpus);
      const auto source = sum_emb.source();
      const auto lines = parallel_lines(corpus.size(), jobs, [&](std::size_t i) {
        const auto& doc = corpus[i];
        std::optional<c2f::EmbeddingMatrix> e;
        if (c2f::needs_embeddings(system)) e = source(doc);
        const auto r = c2f::run_system(system, doc, e ? &*e : nullptr, cfg);
        json j{{"id", doc.id}, {"summary_ids", r.sentence_ids}, {"summary", json::array()}};
        for (std::size_t s : r.sentence_ids) j["summary"].push_back(doc.sentences[s].text);
        if (sum_trace && r.trace) {
          j["trace"] = c2f::to_json(*r.trace);
          j["trace"]["blocks"] = c2f::blocks_json(*r.segmentation);
        }
        return j.dump();
      });
      write_output(sum_out, join_lines(lines));
    } else if (*eval_cmd) {
      const auto cfg = build_config(config_path, eval_flags);
      const auto system = c2f::parse_system(eval_system);
      const auto corpus = c2f::read_corpus(eval_corpus);
      const auto source = eval_emb.source();
      std::vector<c2f::FacetSpread> spreads(corpus.size());
      std::vector<std::optional<c2f::DocEvaluation>> results(corpus.size());
      parallel_lines(corpus.size(), jobs, [&](std::size_t i) {
        const auto& doc = corpus[i];
        if (!doc.reference) return std::string();
        results[i] = c2f::evaluate_document(doc, system, source, cfg);
        const auto seg = c2f::segment(source(doc), cfg).segmentation;
        spreads[i] = c2f::facet_spread(results[i]->summary_ids, seg);
        return std::string();
      });
      std::vector<c2f::RougeTriple> all;
      std::string per_doc;
      double facets = 0.0;
      double per_facet = 0.0;
      std::size_t skipped = 0;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!results[i]) {
          ++skipped;
          continue;
        }
        all.push_back(results[i]->scores);
        facets += static_cast<double>(spreads[i].facet_count);
        per_facet += spreads[i].sentences_per_facet;
        json j = c2f::to_json(results[i]->scores);
        j["id"] = results[i]->id;
        j["summary_ids"] = results[i]->summary_ids;
        j["facet_count"] = spreads[i].facet_count;
        per_doc += j.dump() + "\n";
      }
      if (!eval_per_doc.empty()) write_output(eval_per_doc, per_doc);
      if (skipped > 0) std::cerr << "warning: skipped " << skipped << " document(s) without reference\n";
      const double n = all.empty() ? 1.0 : static_cast<double>(all.size());
      json agg = c2f::to_json(c2f::mean_scores(all));
      agg["system"] = eval_system;
      agg["documents"] = all.size();
      agg["skipped"] = skipped;
      agg["mean_facet_count"] = facets / n;
      agg["mean_sentences_per_facet"] = per_facet / n;
      write_output(eval_out, agg.dump(2) + "\n");
    } else if (*bench_cmd) {
      const auto cfg = build_config(config_path, bench_flags);
      const auto systems = parse_systems(bench_systems);
      const auto corpus = c2f::read_corpus(bench_corpus);
      const auto source = bench_emb.source();
      std::vector<c2f::EmbeddingMatrix> embeddings;
      embeddings.reserve(corpus.size());
      for (const auto& d : corpus) embeddings.push_back(source(d));
      const auto reports = c2f::bench(corpus, embeddings, systems, bench_repeats, cfg);
      json j{{"repeats", bench_repeats}, {"documents", corpus.size()}, {"systems", json::array()}};
      for (const auto& r : reports) j["systems"].push_back(c2f::to_json(r));
      write_output(bench_out, j.dump(2) + "\n");
    } else if (*gen_cmd) {
      gen.seed = seed;
      const auto docs = c2f::make_synthetic_corpus(gen);
      std::ofstream corpus_out(gen_corpus, std::ios::binary | std::ios::trunc);
      if (!corpus_out) throw c2f::Error(c2f::ErrorKind::io, "cannot write " + gen_corpus);
      c2f::EmbeddingWriter writer(gen_embeddings, gen.dim);
      for (const auto& d : docs) {
        corpus_out << c2f::to_json(d.doc).dump() << '\n';
        writer.add(d.doc.id, d.embeddings);
      }
      writer.finish();
    }
  } catch (const c2f::Error& e) {
    print_error(c2f::to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
