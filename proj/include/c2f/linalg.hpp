#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "c2f/core.hpp"

namespace c2f {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Cosine similarity; 0 when either side is the zero vector.
inline double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

// Arithmetic mean of rows [first, last] inclusive.
inline std::vector<double> mean_rows(const EmbeddingMatrix& e, std::size_t first, std::size_t last) {
  std::vector<double> out(e.dim(), 0.0);
  for (std::size_t i = first; i <= last; ++i) {
    auto r = e.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += r[j];
  }
  const double count = static_cast<double>(last - first + 1);
  for (double& v : out) v /= count;
  return out;
}

}  // namespace c2f
