#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "c2f/core.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::vector<double> basis(std::size_t dim, std::size_t i) {
  std::vector<double> v(dim, 0.0);
  v[i] = 1.0;
  return v;
}

// Rows: e_0 repeated sizes[0] times, e_1 repeated sizes[1] times, ...
inline c2f::EmbeddingMatrix planted(const std::vector<std::size_t>& sizes, std::size_t dim) {
  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (std::size_t j = 0; j < sizes[b]; ++j) rows.push_back(basis(dim, b));
  return c2f::EmbeddingMatrix::from_rows(rows);
}

inline oracle::Mat to_mat(const c2f::EmbeddingMatrix& e) {
  oracle::Mat m;
  for (std::size_t i = 0; i < e.rows(); ++i) m.emplace_back(e.row(i).begin(), e.row(i).end());
  return m;
}

inline c2f::EmbeddingMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n * d);
  for (double& x : v) x = g(rng);
  return c2f::EmbeddingMatrix(n, d, std::move(v));
}

inline c2f::Document numbered_doc(std::size_t n, const std::string& id = "doc") {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back("sentence number " + std::to_string(i));
  return c2f::Document::from_text(id, s);
}

}  // namespace fixtures
