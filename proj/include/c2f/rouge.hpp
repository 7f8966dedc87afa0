#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace c2f {

using Tokens = std::vector<std::string>;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_pr(double p, double r) {
    RougeScore s{p, r, 0.0};
    if (p + r > 0.0) s.f1 = 2.0 * p * r / (p + r);
    return s;
  }
};

namespace detail {

inline Tokens flatten(std::span<const Tokens> sentences) {
  Tokens out;
  for (const auto& s : sentences) out.insert(out.end(), s.begin(), s.end());
  return out;
}

inline std::map<std::vector<std::string>, std::size_t> ngram_counts(const Tokens& tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

// Positions in `ref` that belong to one longest common subsequence with `cand`.
inline std::vector<std::size_t> lcs_positions(const Tokens& ref, const Tokens& cand) {
  const std::size_t r = ref.size();
  const std::size_t c = cand.size();
  std::vector<std::vector<std::size_t>> len(r + 1, std::vector<std::size_t>(c + 1, 0));
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = 1; j <= c; ++j) {
      len[i][j] = ref[i - 1] == cand[j - 1] ? len[i - 1][j - 1] + 1 : std::max(len[i - 1][j], len[i][j - 1]);
    }
  }
  std::vector<std::size_t> pos;
  std::size_t i = r;
  std::size_t j = c;
  while (i > 0 && j > 0) {
    if (ref[i - 1] == cand[j - 1]) {
      pos.push_back(i - 1);
      --i;
      --j;
    } else if (len[i - 1][j] >= len[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(pos.begin(), pos.end());
  return pos;
}

}  // namespace detail

// ROUGE-N over the concatenated token streams, with clipped n-gram counts.
inline RougeScore rouge_n(std::span<const Tokens> candidate, std::span<const Tokens> reference, std::size_t n) {
  const auto cand = detail::ngram_counts(detail::flatten(candidate), n);
  const auto ref = detail::ngram_counts(detail::flatten(reference), n);
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  std::size_t overlap = 0;
  for (const auto& [g, c] : cand) cand_total += c;
  for (const auto& [g, c] : ref) {
    ref_total += c;
    if (auto it = cand.find(g); it != cand.end()) overlap += std::min(c, it->second);
  }
  const double p = cand_total ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
  const double r = ref_total ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
  return RougeScore::from_pr(p, r);
}

inline RougeScore rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n) {
  return rouge_n(std::span<const Tokens>(&candidate, 1), std::span<const Tokens>(&reference, 1), n);
}

// Summary-level ROUGE-L: for each reference sentence, take the union of its
// LCS positions against every candidate sentence; union tokens are counted
// as hits while both sides still have that token left.
inline RougeScore rouge_l(std::span<const Tokens> candidate, std::span<const Tokens> reference) {
  std::map<std::string, std::size_t> cand_left;
  std::map<std::string, std::size_t> ref_left;
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (const auto& s : candidate) {
    for (const auto& t : s) ++cand_left[t];
    cand_total += s.size();
  }
  for (const auto& s : reference) {
    for (const auto& t : s) ++ref_left[t];
    ref_total += s.size();
  }
  if (cand_total == 0 || ref_total == 0) return {};

  std::size_t hits = 0;
  for (const auto& ref_sent : reference) {
    std::vector<bool> in_union(ref_sent.size(), false);
    for (const auto& cand_sent : candidate) {
      for (std::size_t p : detail::lcs_positions(ref_sent, cand_sent)) in_union[p] = true;
    }
    for (std::size_t p = 0; p < ref_sent.size(); ++p) {
      if (!in_union[p]) continue;
      const auto& tok = ref_sent[p];
      auto& rc = ref_left[tok];
      auto& cc = cand_left[tok];
      if (rc > 0 && cc > 0) {
        ++hits;
        --rc;
        --cc;
      }
    }
  }
  return RougeScore::from_pr(static_cast<double>(hits) / static_cast<double>(cand_total),
                             static_cast<double>(hits) / static_cast<double>(ref_total));
}

struct RougeTriple {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
};

inline RougeTriple rouge_all(std::span<const Tokens> candidate, std::span<const Tokens> reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2), rouge_l(candidate, reference)};
}

}  // namespace c2f
