#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "c2f/core.hpp"

namespace c2f {

// ---------------------------------------------------------------------------
// Feature-hashing fallback embedder
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kHashSeed = 0x9e3779b97f4a7c15ULL;

// FNV-1a over the token bytes, xor the fixed seed, then the splitmix64
// finalizer. Stable across runs, processes and platforms.
inline std::uint64_t token_hash(std::string_view token) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= kHashSeed;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

// Bag-of-tokens vector per sentence: token_hash(t) % dim picks the
// coordinate, bit 63 of the hash picks the sign (set = negative). Rows are
// L2-normalized; a sentence without tokens becomes the unit vector e_0.
inline EmbeddingMatrix hash_embed(const Document& doc, std::size_t dim) {
  if (dim < 8) throw Error(ErrorKind::invalid_argument, "hash_embed requires dim >= 8");
  std::vector<double> values(doc.size() * dim, 0.0);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    double* row = values.data() + i * dim;
    for (const auto& tok : doc.sentences[i].tokens) {
      const std::uint64_t h = token_hash(tok);
      row[h % dim] += (h >> 63) ? -1.0 : 1.0;
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) sq += row[j] * row[j];
    if (sq == 0.0) {
      row[0] = 1.0;
      continue;
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t j = 0; j < dim; ++j) row[j] *= inv;
  }
  return EmbeddingMatrix(doc.size(), dim, std::move(values));
}

// ---------------------------------------------------------------------------
// Embedding files
//
// Binary, little-endian:
//   "C2FE" | version:u16 = 1 | dim:u32 | doc_count:u32
//   doc_count x { id_len:u16 | id bytes | n:u32 | n*dim float32, row-major }
// doc_count is written last, so an interrupted writer leaves a file whose
// header disagrees with its body and fails to load.
//
// JSONL debug format, one object per line: {"id": "...", "vectors": [[...], ...]}
// ---------------------------------------------------------------------------

inline constexpr char kEmbeddingMagic[4] = {'C', '2', 'F', 'E'};
inline constexpr std::uint16_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderSize = 4 + 2 + 4 + 4;

namespace detail {

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

inline void put_f32(std::string& out, float f) { put_le(out, std::bit_cast<std::uint32_t>(f)); }

inline float get_f32(const unsigned char* p) { return std::bit_cast<float>(get_le<std::uint32_t>(p)); }

}  // namespace detail

// Streams records to disk. finish() patches doc_count into the header;
// dropping the writer without finish() leaves an unloadable file.
class EmbeddingWriter {
 public:
  EmbeddingWriter(const std::filesystem::path& path, std::size_t dim)
      : out_(path, std::ios::binary | std::ios::trunc), dim_(dim) {
    if (!out_) throw Error(ErrorKind::io, "cannot open embedding file for writing: " + path.string());
    if (dim_ == 0 || dim_ > UINT32_MAX) throw Error(ErrorKind::invalid_argument, "embedding dim out of range");
    std::string header(kEmbeddingMagic, 4);
    detail::put_le<std::uint16_t>(header, kEmbeddingVersion);
    detail::put_le<std::uint32_t>(header, static_cast<std::uint32_t>(dim_));
    detail::put_le<std::uint32_t>(header, 0);
    out_.write(header.data(), static_cast<std::streamsize>(header.size()));
  }

  void add(std::string_view id, const EmbeddingMatrix& m) {
    if (m.dim() != dim_) throw Error(ErrorKind::mismatch, "record dim differs from file dim");
    add(id, m.rows(), m.values());
  }

  void add(std::string_view id, std::size_t rows, std::span<const double> values) {
    if (finished_) throw Error(ErrorKind::invalid_argument, "embedding writer already finished");
    if (id.size() > UINT16_MAX) throw Error(ErrorKind::invalid_argument, "document id too long");
    if (values.size() != rows * dim_) throw Error(ErrorKind::mismatch, "record value count != n * dim");
    std::string rec;
    rec.reserve(2 + id.size() + 4 + values.size() * 4);
    detail::put_le<std::uint16_t>(rec, static_cast<std::uint16_t>(id.size()));
    rec.append(id);
    detail::put_le<std::uint32_t>(rec, static_cast<std::uint32_t>(rows));
    for (double v : values) detail::put_f32(rec, static_cast<float>(v));
    out_.write(rec.data(), static_cast<std::streamsize>(rec.size()));
    ++count_;
  }

  void finish() {
    if (finished_) return;
    std::string patch;
    detail::put_le<std::uint32_t>(patch, count_);
    out_.seekp(static_cast<std::streamoff>(kEmbeddingHeaderSize - 4));
    out_.write(patch.data(), 4);
    out_.flush();
    if (!out_) throw Error(ErrorKind::io, "failed writing embedding file");
    finished_ = true;
  }

 private:
  std::ofstream out_;
  std::size_t dim_;
  std::uint32_t count_ = 0;
  bool finished_ = false;
};

// Read-only view of an embedding file, indexed by document id.
class EmbeddingStore {
 public:
  static EmbeddingStore open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "embedding file not found: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EmbeddingStore store;
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kEmbeddingMagic, 4) == 0) {
      store.parse_binary(std::move(bytes));
    } else if (looks_like_json(bytes)) {
      store.parse_jsonl(bytes);
    } else {
      throw Error(ErrorKind::format, "bad embedding file magic: " + path.string());
    }
    return store;
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return order_.size(); }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  const std::vector<std::string>& ids() const { return order_; }

  EmbeddingMatrix get(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorKind::not_found, "document not found: " + id);
    const Record& r = it->second;
    if (!r.json_values.empty() || r.rows == 0) {
      return EmbeddingMatrix(r.rows, dim_, r.json_values);
    }
    std::vector<double> values(r.rows * dim_);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes_.data()) + r.offset;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = detail::get_f32(p + 4 * i);
    return EmbeddingMatrix(r.rows, dim_, std::move(values));
  }

  // Same as get(doc.id), additionally checking the row count against the
  // document's sentence count.
  EmbeddingMatrix get(const Document& doc) const {
    EmbeddingMatrix m = get(doc.id);
    if (m.rows() != doc.size()) {
      throw Error(ErrorKind::mismatch, "sentence count mismatch for document " + doc.id + ": embeddings have " +
                                           std::to_string(m.rows()) + " rows, corpus has " +
                                           std::to_string(doc.size()) + " sentences");
    }
    return m;
  }

 private:
  struct Record {
    std::size_t rows = 0;
    std::size_t offset = 0;
    std::vector<double> json_values;
  };

  static bool looks_like_json(const std::string& bytes) {
    for (char c : bytes) {
      if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
      return c == '{';
    }
    return false;
  }

  void insert(std::string id, Record rec) {
    if (index_.count(id)) throw Error(ErrorKind::format, "duplicate document id in embedding file: " + id);
    order_.push_back(id);
    index_.emplace(std::move(id), std::move(rec));
  }

  void parse_binary(std::string bytes) {
    bytes_ = std::move(bytes);
    const auto* base = reinterpret_cast<const unsigned char*>(bytes_.data());
    const std::size_t size = bytes_.size();
    if (size < kEmbeddingHeaderSize) throw Error(ErrorKind::format, "truncated embedding header");
    const auto version = detail::get_le<std::uint16_t>(base + 4);
    if (version != kEmbeddingVersion) {
      throw Error(ErrorKind::format, "unsupported embedding file version " + std::to_string(version));
    }
    dim_ = detail::get_le<std::uint32_t>(base + 6);
    const auto doc_count = detail::get_le<std::uint32_t>(base + 10);
    if (dim_ == 0) throw Error(ErrorKind::format, "embedding dim must be >= 1");

    std::size_t pos = kEmbeddingHeaderSize;
    auto need = [&](std::size_t n) {
      if (size - pos < n) throw Error(ErrorKind::format, "truncated embedding record");
    };
    for (std::uint32_t d = 0; d < doc_count; ++d) {
      need(2);
      const auto id_len = detail::get_le<std::uint16_t>(base + pos);
      pos += 2;
      need(id_len);
      std::string id(bytes_.data() + pos, id_len);
      pos += id_len;
      need(4);
      const auto rows = detail::get_le<std::uint32_t>(base + pos);
      pos += 4;
      const std::size_t payload = static_cast<std::size_t>(rows) * dim_ * 4;
      need(payload);
      insert(std::move(id), Record{rows, pos, {}});
      pos += payload;
    }
    if (pos != size) {
      throw Error(ErrorKind::format, "embedding file has data past the declared doc_count (incomplete write?)");
    }
  }

  void parse_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::format, "embedding jsonl line " + std::to_string(lineno) + ": " + e.what());
      }
      if (!j.is_object() || !j.contains("id") || !j.contains("vectors") || !j["vectors"].is_array()) {
        throw Error(ErrorKind::format, "embedding jsonl line " + std::to_string(lineno) + ": need id and vectors");
      }
      Record rec;
      rec.rows = j["vectors"].size();
      for (const auto& row : j["vectors"]) {
        if (!row.is_array()) throw Error(ErrorKind::format, "embedding jsonl: vector rows must be arrays");
        if (dim_ == 0) dim_ = row.size();
        if (row.size() != dim_ || dim_ == 0) {
          throw Error(ErrorKind::format, "embedding jsonl line " + std::to_string(lineno) + ": inconsistent dim");
        }
        for (const auto& v : row) rec.json_values.push_back(v.get<double>());
      }
      insert(j["id"].get<std::string>(), std::move(rec));
    }
  }

  std::string bytes_;
  std::size_t dim_ = 0;
  std::map<std::string, Record> index_;
  std::vector<std::string> order_;
};

inline EmbeddingMatrix load_embeddings(const std::filesystem::path& path, const std::string& doc_id) {
  return EmbeddingStore::open(path).get(doc_id);
}

inline EmbeddingMatrix load_embeddings(const std::filesystem::path& path, const Document& doc) {
  return EmbeddingStore::open(path).get(doc);
}

}  // namespace c2f
