#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/embedding.hpp"
#include "rle/errors.hpp"
#include "rle/graph.hpp"
#include "rle/matrix.hpp"
#include "rle/rng.hpp"
#include "rle/wordvec.hpp"

namespace rle {

struct DeepWalkConfig {
  std::size_t walks_per_node = 40;
  std::size_t walk_length = 40;  // nodes per walk, including the start
  std::size_t window = 10;
  std::size_t dim = 160;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Uniform random walks over the symmetrized graph. Walks stop early at dead
// ends; isolated nodes contribute single-node walks. Each (node, walk) pair
// draws from its own stream so the corpus is independent of scheduling.
inline std::vector<std::vector<std::size_t>> generate_walks(const EdgeList& edges,
                                                            std::size_t walks_per_node,
                                                            std::size_t walk_length,
                                                            std::uint64_t seed) {
  if (edges.n_nodes < 1) throw ConfigError("generate_walks: graph has no nodes");
  if (walk_length < 1) throw ConfigError("generate_walks: walk_length must be >= 1");
  std::vector<std::vector<std::size_t>> adj(edges.n_nodes);
  for (const auto& [s, d] : edges.edges) {
    if (s >= edges.n_nodes || d >= edges.n_nodes) {
      throw DataError("generate_walks: edge endpoint out of range");
    }
    if (s == d) continue;
    adj[s].push_back(d);
    adj[d].push_back(s);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  std::vector<std::vector<std::size_t>> walks;
  walks.reserve(edges.n_nodes * walks_per_node);
  for (std::size_t node = 0; node < edges.n_nodes; ++node) {
    for (std::size_t w = 0; w < walks_per_node; ++w) {
      Rng rng(seed, node * walks_per_node + w + 1);
      std::vector<std::size_t> walk{node};
      while (walk.size() < walk_length) {
        const auto& nbrs = adj[walk.back()];
        if (nbrs.empty()) break;
        walk.push_back(nbrs[rng.next_below(nbrs.size())]);
      }
      walks.push_back(std::move(walk));
    }
  }
  Rng shuffle_rng(seed, 0);
  shuffle_rng.shuffle(walks);
  return walks;
}

// DeepWalk: random walks fed as sentences to skip-gram negative sampling.
inline EmbeddingMatrix deepwalk(const EdgeList& edges, const std::vector<std::string>& node_ids,
                                const DeepWalkConfig& cfg = {}) {
  if (node_ids.size() != edges.n_nodes) {
    throw ConfigError("deepwalk: node id count does not match graph");
  }
  const auto walks = generate_walks(edges, cfg.walks_per_node, cfg.walk_length, cfg.seed);
  SgnsConfig sg;
  sg.dim = cfg.dim;
  sg.window = cfg.window;
  sg.negatives = cfg.negatives;
  sg.epochs = cfg.epochs;
  sg.learning_rate = cfg.learning_rate;
  sg.seed = cfg.seed;
  sg.workers = cfg.workers;
  EmbeddingMatrix emb = EmbeddingMatrix::zeros(node_ids, cfg.dim);
  emb.vectors = train_sgns_ids(walks, edges.n_nodes, sg);
  return emb;
}

namespace detail {

// Modified Gram-Schmidt over the columns of m, run twice for stability.
// Columns that collapse numerically are left as zero vectors.
inline void orthonormalize_columns(DenseMatrix& m) {
  const std::size_t n = m.n_rows;
  const std::size_t p = m.n_cols;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        double r = 0.0;
        for (std::size_t k = 0; k < n; ++k) r += m.at(k, i) * m.at(k, j);
        for (std::size_t k = 0; k < n; ++k) m.at(k, j) -= r * m.at(k, i);
      }
      double norm = 0.0;
      for (std::size_t k = 0; k < n; ++k) norm += m.at(k, j) * m.at(k, j);
      norm = std::sqrt(norm);
      if (norm > 1e-300) {
        for (std::size_t k = 0; k < n; ++k) m.at(k, j) /= norm;
      } else {
        for (std::size_t k = 0; k < n; ++k) m.at(k, j) = 0.0;
      }
    }
  }
}

// Cyclic Jacobi eigensolver for a small symmetric matrix. Returns
// eigenvalues in descending order with matching eigenvector columns in v.
inline void jacobi_eigh(DenseMatrix a, DenseMatrix& v, std::vector<double>& w) {
  const std::size_t p = a.n_rows;
  v = DenseMatrix(p, p);
  for (std::size_t i = 0; i < p; ++i) v.at(i, i) = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) off += a.at(i, j) * a.at(i, j);
    }
    if (std::sqrt(off) < 1e-14 * (1.0 + std::sqrt(off))) break;
    double scale = 0.0;
    for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::abs(a.at(i, i)));
    if (std::sqrt(off) < 1e-13 * std::max(scale, 1e-300)) break;

    for (std::size_t i = 0; i + 1 < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        const double apq = a.at(i, j);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a.at(i, i);
        const double aqq = a.at(j, j);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double aki = a.at(k, i);
          const double akj = a.at(k, j);
          a.at(k, i) = c * aki - s * akj;
          a.at(k, j) = s * aki + c * akj;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aik = a.at(i, k);
          const double ajk = a.at(j, k);
          a.at(i, k) = c * aik - s * ajk;
          a.at(j, k) = s * aik + c * ajk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vki = v.at(k, i);
          const double vkj = v.at(k, j);
          v.at(k, i) = c * vki - s * vkj;
          v.at(k, j) = s * vki + c * vkj;
        }
      }
    }
  }

  std::vector<std::size_t> order(p);
  for (std::size_t i = 0; i < p; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a.at(x, x) > a.at(y, y); });
  w.resize(p);
  DenseMatrix sorted_v(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    w[j] = a.at(order[j], order[j]);
    for (std::size_t k = 0; k < p; ++k) sorted_v.at(k, j) = v.at(k, order[j]);
  }
  v = std::move(sorted_v);
}

}  // namespace detail

struct SvdResult {
  DenseMatrix u;                       // n_rows x rank, orthonormal columns
  std::vector<double> singular_values;  // length rank, non-increasing
};

// Randomized truncated SVD (range finder + power iterations). The small
// projected problem is solved through its Gram matrix with a Jacobi
// eigensolver, which is accurate here because oversampling keeps the
// projected spectrum well conditioned.
inline SvdResult randomized_svd(const SparseMatrix& m, std::size_t rank,
                                std::size_t oversample = 10, std::size_t power_iters = 10,
                                std::uint64_t seed = 1, int workers = 1) {
  const std::size_t min_dim = std::min(m.n_rows, m.n_cols);
  if (rank < 1 || rank > min_dim) {
    throw ConfigError("randomized_svd: rank must lie in [1, min(n_rows, n_cols)]");
  }
  const std::size_t p = std::min(rank + oversample, min_dim);

  DenseMatrix omega(m.n_cols, p);
  Rng rng(seed, 0x5fd);
  for (auto& v : omega.values) v = rng.next_gaussian();

  DenseMatrix y = sp_dense_mm(m, omega, workers);
  detail::orthonormalize_columns(y);
  for (std::size_t it = 0; it < power_iters; ++it) {
    DenseMatrix z = spt_dense_mm(m, y);
    detail::orthonormalize_columns(z);
    y = sp_dense_mm(m, z, workers);
    detail::orthonormalize_columns(y);
  }

  // G = (Y^T M)(M^T Y), eigenpairs give the projected singular structure.
  DenseMatrix bt = spt_dense_mm(m, y);  // n_cols x p
  DenseMatrix gram(p, p);
  for (std::size_t r = 0; r < bt.n_rows; ++r) {
    const double* row = bt.values.data() + r * p;
    for (std::size_t i = 0; i < p; ++i) {
      if (row[i] == 0.0) continue;
      for (std::size_t j = i; j < p; ++j) gram.at(i, j) += row[i] * row[j];
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < i; ++j) gram.at(i, j) = gram.at(j, i);
  }

  DenseMatrix eigvecs;
  std::vector<double> eigvals;
  detail::jacobi_eigh(std::move(gram), eigvecs, eigvals);

  SvdResult out;
  out.u = DenseMatrix(m.n_rows, rank);
  out.singular_values.resize(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    out.singular_values[j] = std::sqrt(std::max(0.0, eigvals[j]));
  }
  for (std::size_t i = 0; i < m.n_rows; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += y.at(i, k) * eigvecs.at(k, j);
      out.u.at(i, j) = s;
    }
  }
  return out;
}

// Latent semantic analysis: tf-idf weighting followed by a rank-k truncated
// SVD; document vectors are the left singular vectors scaled by the
// singular values.
inline EmbeddingMatrix lsa(const SparseMatrix& t_counts, const std::vector<std::string>& doc_ids,
                           std::size_t dim, bool smooth_idf = false, std::uint64_t seed = 1,
                           int workers = 1) {
  if (doc_ids.size() != t_counts.n_rows) {
    throw ConfigError("lsa: doc id count does not match matrix rows");
  }
  if (dim > std::min(t_counts.n_rows, t_counts.n_cols)) {
    throw ConfigError("lsa: dimension " + std::to_string(dim) +
                      " exceeds min(n_docs, vocabulary size)");
  }
  const SparseMatrix weighted = tfidf_transform(t_counts, smooth_idf);
  SvdResult svd = randomized_svd(weighted, dim, 10, 10, seed, workers);
  DenseMatrix d(t_counts.n_rows, dim);
  for (std::size_t i = 0; i < d.n_rows; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      d.at(i, j) = svd.u.at(i, j) * svd.singular_values[j];
    }
  }
  return EmbeddingMatrix::from_dense(doc_ids, std::move(d));
}

// Row-wise concatenation of two embeddings over the same key set; rows
// follow a's order.
inline EmbeddingMatrix concatenate(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.size() != b.size()) {
    throw ConfigError("concatenate: embeddings index different key sets");
  }
  DenseMatrix d(a.size(), a.dim() + b.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto it = b.index.find(a.keys[i]);
    if (it == b.index.end()) {
      throw ConfigError("concatenate: key '" + a.keys[i] + "' missing from second embedding");
    }
    const auto ra = a.row(i);
    const auto rb = b.row(it->second);
    std::copy(ra.begin(), ra.end(), d.row(i).begin());
    std::copy(rb.begin(), rb.end(), d.row(i).begin() + static_cast<std::ptrdiff_t>(a.dim()));
  }
  return EmbeddingMatrix::from_dense(a.keys, std::move(d));
}

}  // namespace rle
