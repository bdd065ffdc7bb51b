#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/embedding.hpp"
#include "rle/errors.hpp"
#include "rle/matrix.hpp"

namespace rle {

struct RankedWord {
  std::string word;
  double score = 0.0;
};

// Unweighted mean of the member documents' vectors.
inline std::vector<double> class_centroid(const EmbeddingMatrix& d, const std::vector<int>& labels,
                                          int class_id) {
  if (labels.size() != d.size()) throw DataError("class_centroid: label count mismatch");
  std::vector<double> centroid(d.dim(), 0.0);
  std::size_t members = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != class_id) continue;
    const auto row = d.row(i);
    for (std::size_t k = 0; k < centroid.size(); ++k) centroid[k] += row[k];
    ++members;
  }
  if (members == 0) {
    throw DataError("class_centroid: class " + std::to_string(class_id) + " is empty");
  }
  for (auto& v : centroid) v /= static_cast<double>(members);
  return centroid;
}

// Words ranked by descending cosine similarity to the center; ties break
// lexicographically and zero word vectors (e.g. out-of-coverage terms) are
// excluded because their direction is undefined.
inline std::vector<RankedWord> nearest_words(std::span<const double> center,
                                             const EmbeddingMatrix& u, std::size_t top_k) {
  if (top_k > u.size()) throw ConfigError("nearest_words: top_k exceeds vocabulary size");
  if (l2_norm(center) == 0.0) throw DataError("nearest_words: zero centroid has no direction");
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto row = u.row(i);
    if (l2_norm(row) == 0.0) continue;
    scored.emplace_back(cosine(center, row), i);
  }
  std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return u.keys[a.second] < u.keys[b.second];
  });
  const std::size_t n = std::min(top_k, scored.size());
  std::vector<RankedWord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({u.keys[scored[i].second], scored[i].first});
  }
  return out;
}

// tf-idf baseline: weight every document row, average the rows of the class,
// return the heaviest terms. Zero-weight terms never rank.
inline std::vector<RankedWord> tfidf_class_terms(const SparseMatrix& t_counts,
                                                 const Vocabulary& vocab,
                                                 const std::vector<int>& labels, int class_id,
                                                 std::size_t top_k, bool smooth_idf = false) {
  if (labels.size() != t_counts.n_rows) throw DataError("tfidf_class_terms: label count mismatch");
  if (vocab.size() != t_counts.n_cols) {
    throw ConfigError("tfidf_class_terms: vocabulary does not match matrix columns");
  }
  const SparseMatrix weighted = tfidf_transform(t_counts, smooth_idf);
  std::vector<double> mean(t_counts.n_cols, 0.0);
  std::size_t members = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != class_id) continue;
    for (std::size_t k = weighted.row_offsets[i]; k < weighted.row_offsets[i + 1]; ++k) {
      mean[weighted.col_indices[k]] += weighted.values[k];
    }
    ++members;
  }
  if (members == 0) {
    throw DataError("tfidf_class_terms: class " + std::to_string(class_id) + " is empty");
  }
  for (auto& v : mean) v /= static_cast<double>(members);

  std::vector<std::size_t> order;
  order.reserve(mean.size());
  for (std::size_t j = 0; j < mean.size(); ++j) {
    if (mean[j] > 0.0) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mean[a] != mean[b]) return mean[a] > mean[b];
    return vocab.terms[a] < vocab.terms[b];
  });
  const std::size_t n = std::min(top_k, order.size());
  std::vector<RankedWord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({vocab.terms[order[i]], mean[order[i]]});
  return out;
}

}  // namespace rle
