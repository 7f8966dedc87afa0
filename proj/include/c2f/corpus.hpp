#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "c2f/core.hpp"

namespace c2f {

// Corpus JSONL, one document per line:
//   {"id": "...", "sentences": ["...", ...], "reference": ["...", ...]}
// "reference" is optional. Sentences are already split.

inline Document parse_document(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::format, "corpus line is not a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) throw Error(ErrorKind::format, "corpus line lacks string id");
  if (!j.contains("sentences") || !j["sentences"].is_array()) {
    throw Error(ErrorKind::format, "corpus document " + j["id"].get<std::string>() + " lacks sentences array");
  }
  Document doc;
  doc.id = j["id"].get<std::string>();
  for (const auto& s : j["sentences"]) doc.sentences.emplace_back(s.get<std::string>());
  if (doc.sentences.empty()) throw Error(ErrorKind::format, "corpus document " + doc.id + " has no sentences");
  if (j.contains("reference") && !j["reference"].is_null()) {
    std::vector<std::vector<std::string>> ref;
    for (const auto& s : j["reference"]) ref.push_back(tokenize(s.get<std::string>()));
    doc.reference = std::move(ref);
  }
  return doc;
}

inline std::vector<Document> read_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(parse_document(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::format, "corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

inline std::vector<Document> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open corpus: " + path.string());
  return read_corpus(in);
}

// Reference sentences are written back as space-joined tokens, since the
// document keeps only their tokenized form.
inline nlohmann::json to_json(const Document& doc) {
  nlohmann::json j;
  j["id"] = doc.id;
  j["sentences"] = nlohmann::json::array();
  for (const auto& s : doc.sentences) j["sentences"].push_back(s.text);
  if (doc.reference) {
    j["reference"] = nlohmann::json::array();
    for (const auto& toks : *doc.reference) {
      std::string joined;
      for (const auto& t : toks) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t;
      }
      j["reference"].push_back(joined);
    }
  }
  return j;
}

inline void write_corpus(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& d : docs) out << to_json(d).dump() << '\n';
}

}  // namespace c2f
