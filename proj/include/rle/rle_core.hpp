#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/embedding.hpp"
#include "rle/errors.hpp"
#include "rle/graph.hpp"
#include "rle/log.hpp"
#include "rle/matrix.hpp"

namespace rle {

struct RleConfig {
  double lambda = 0.7;  // smoothing intensity in [0, 1]
  bool fuse = true;     // compute D = (1-l)TU + l BU instead of materializing P
  bool symmetrize = true;
  std::size_t max_similarity_nnz = 2'000'000'000ULL;
  int workers = 1;

  void validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw ConfigError("rle: lambda must lie in [0, 1]");
    }
  }
};

namespace detail {

// New CSR equal to `dst` with the listed rows replaced by the rows of `src`.
inline SparseMatrix replace_rows(const SparseMatrix& dst, const SparseMatrix& src,
                                 const std::vector<std::size_t>& rows) {
  if (rows.empty()) return dst;
  if (dst.n_rows != src.n_rows || dst.n_cols != src.n_cols) {
    throw ConfigError("replace_rows: shape mismatch");
  }
  std::vector<bool> take_src(dst.n_rows, false);
  for (const std::size_t r : rows) take_src[r] = true;
  SparseMatrix out(dst.n_rows, dst.n_cols);
  for (std::size_t i = 0; i < dst.n_rows; ++i) {
    const SparseMatrix& m = take_src[i] ? src : dst;
    for (std::size_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      out.col_indices.push_back(m.col_indices[k]);
      out.values.push_back(m.values[k]);
    }
    out.row_offsets[i + 1] = out.values.size();
  }
  return out;
}

}  // namespace detail

// Smoothing matrix B: row i is the similarity-weighted centroid of the
// document-term rows, b_i = (1/sum_j s_ij) sum_j s_ij t_j. Rows of s with
// zero sum (isolated documents) fall back to b_i = t_i, so smoothing leaves
// them unchanged. The prefactor makes this correct for any non-negative s,
// not only row-stochastic similarity matrices.
inline SparseMatrix smooth(const SparseMatrix& t, const SparseMatrix& s, int workers = 1) {
  if (s.n_rows != s.n_cols) throw ConfigError("smooth: similarity matrix must be square");
  if (s.n_rows != t.n_rows) {
    throw ConfigError("smooth: similarity is " + std::to_string(s.n_rows) +
                      "x" + std::to_string(s.n_cols) + " but T has " +
                      std::to_string(t.n_rows) + " rows");
  }
  auto normalized = row_normalize(s);
  SparseMatrix b = spmm(normalized.matrix, t, workers);
  return detail::replace_rows(b, t, normalized.dangling_rows);
}

// P = (1 - lambda) T + lambda B.
inline SparseMatrix combine(const SparseMatrix& t, const SparseMatrix& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("combine: lambda must lie in [0, 1]");
  }
  return add_scaled(t, 1.0 - lambda, b, lambda);
}

// D = P U; row i is the document embedding p_i U in word-vector space.
inline EmbeddingMatrix project(const SparseMatrix& p, const EmbeddingMatrix& u,
                               const std::vector<std::string>& doc_ids, int workers = 1) {
  if (p.n_cols != u.vectors.n_rows) {
    throw ConfigError("project: P has " + std::to_string(p.n_cols) +
                      " columns but U has " + std::to_string(u.vectors.n_rows) +
                      " rows; vocabulary is misaligned");
  }
  if (doc_ids.size() != p.n_rows) {
    throw ConfigError("project: doc id count does not match row count");
  }
  return EmbeddingMatrix::from_dense(doc_ids, sp_dense_mm(p, u.vectors, workers));
}

// Full pipeline: T from the corpus (columns aligned to u's keys), A from the
// edges, S = (A + A^2)/2, then D = (1-lambda) TU + lambda BU. The fused path
// uses B U = W (T U) with W = row-normalized S and patches isolated rows,
// which avoids materializing both P and B; the materialized path computes
// P = (1-lambda)T + lambda B explicitly. Both agree within 1e-9.
inline EmbeddingMatrix embed(const Corpus& corpus, const EdgeList& edges,
                             const EmbeddingMatrix& u, const RleConfig& cfg = {}) {
  cfg.validate();
  if (edges.n_nodes != corpus.n_docs()) {
    throw ConfigError("embed: edge list covers " + std::to_string(edges.n_nodes) +
                      " nodes but corpus has " + std::to_string(corpus.n_docs()) +
                      " documents");
  }
  DocTermMatrix dt = build_doc_term_matrix(corpus, u.index, u.size());
  const SparseMatrix a = build_transition(edges, cfg.symmetrize);
  const SparseMatrix s = build_similarity(a, cfg.max_similarity_nnz, cfg.workers);

  DenseMatrix d;
  std::vector<std::size_t> isolated;
  if (cfg.fuse) {
    DenseMatrix tu = sp_dense_mm(dt.t, u.vectors, cfg.workers);
    auto normalized = row_normalize(s);
    isolated = normalized.dangling_rows;
    DenseMatrix bu = sp_dense_mm(normalized.matrix, tu, cfg.workers);
    for (const std::size_t i : isolated) {
      std::copy(tu.row(i).begin(), tu.row(i).end(), bu.row(i).begin());
    }
    d = DenseMatrix(tu.n_rows, tu.n_cols);
    const double lm = cfg.lambda;
    for (std::size_t k = 0; k < d.values.size(); ++k) {
      d.values[k] = (1.0 - lm) * tu.values[k] + lm * bu.values[k];
    }
  } else {
    const SparseMatrix b = smooth(dt.t, s, cfg.workers);
    const SparseMatrix p = combine(dt.t, b, cfg.lambda);
    d = sp_dense_mm(p, u.vectors, cfg.workers);
    isolated = row_normalize(s).dangling_rows;
  }

  if (!dt.empty_docs.empty()) {
    std::vector<bool> iso(corpus.n_docs(), false);
    for (const std::size_t i : isolated) iso[i] = true;
    std::size_t zeroed = 0;
    for (const std::size_t i : dt.empty_docs) {
      if (iso[i]) ++zeroed;
    }
    if (zeroed > 0) {
      log_warn(std::to_string(zeroed) +
               " document(s) have neither in-vocabulary tokens nor links; their "
               "embeddings are zero vectors");
    }
  }
  return EmbeddingMatrix::from_dense(corpus.doc_ids, std::move(d));
}

}  // namespace rle
