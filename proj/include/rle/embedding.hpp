#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rle/errors.hpp"
#include "rle/matrix.hpp"

namespace rle {

// Dense vectors keyed by string: word embeddings (keys = vocabulary terms)
// or document embeddings (keys = document ids). Row order follows `keys`.
struct EmbeddingMatrix {
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> index;
  DenseMatrix vectors;

  std::size_t size() const { return keys.size(); }
  std::size_t dim() const { return vectors.n_cols; }

  std::span<const double> row(std::size_t i) const { return vectors.row(i); }

  std::span<const double> row(const std::string& key) const {
    const auto it = index.find(key);
    if (it == index.end()) throw ConfigError("embedding: unknown key '" + key + "'");
    return vectors.row(it->second);
  }

  bool contains(const std::string& key) const { return index.find(key) != index.end(); }

  static EmbeddingMatrix zeros(std::vector<std::string> row_keys, std::size_t dim) {
    EmbeddingMatrix emb;
    emb.vectors = DenseMatrix(row_keys.size(), dim);
    emb.keys = std::move(row_keys);
    emb.index.reserve(emb.keys.size());
    for (std::size_t i = 0; i < emb.keys.size(); ++i) {
      if (!emb.index.emplace(emb.keys[i], i).second) {
        throw ConfigError("embedding: duplicate key '" + emb.keys[i] + "'");
      }
    }
    return emb;
  }

  static EmbeddingMatrix from_dense(std::vector<std::string> row_keys, DenseMatrix m) {
    if (row_keys.size() != m.n_rows) {
      throw ConfigError("embedding: key count does not match row count");
    }
    EmbeddingMatrix emb = zeros(std::move(row_keys), 0);
    emb.vectors = std::move(m);
    return emb;
  }
};

}  // namespace rle
