#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/errors.hpp"
#include "rle/matrix.hpp"

namespace rle {

struct EdgeList {
  std::size_t n_nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Edge file: `src_doc_id<TAB>dst_doc_id` per line; ids resolved against the
// documents file.
inline EdgeList load_edges(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edges file: " + path);
  EdgeList list;
  list.n_nodes = corpus.n_docs();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(std::move(line));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("edges file " + path + ": line " + std::to_string(line_no) +
                      " has no <TAB> separator");
    }
    const std::string src = line.substr(0, tab);
    const std::string dst = line.substr(tab + 1);
    const auto s = corpus.id_to_index.find(src);
    if (s == corpus.id_to_index.end()) {
      throw DataError("edges file " + path + ": unknown doc id '" + src + "'");
    }
    const auto d = corpus.id_to_index.find(dst);
    if (d == corpus.id_to_index.end()) {
      throw DataError("edges file " + path + ": unknown doc id '" + dst + "'");
    }
    list.edges.emplace_back(s->second, d->second);
  }
  return list;
}

// Transition matrix of the graph: self-loops removed, duplicate edges
// collapsed to weight 1, optionally symmetrized, then row-normalized so
// every non-isolated row is a distribution over neighbors. Isolated nodes
// keep empty rows.
inline SparseMatrix build_transition(const EdgeList& edges, bool symmetrize = true) {
  if (edges.n_nodes < 1) throw ConfigError("build_transition: graph has no nodes");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(edges.edges.size() * (symmetrize ? 2 : 1));
  for (const auto& [s, d] : edges.edges) {
    if (s >= edges.n_nodes || d >= edges.n_nodes) {
      throw DataError("build_transition: edge endpoint out of range (" + std::to_string(s) +
                      ", " + std::to_string(d) + ")");
    }
    if (s == d) continue;
    pairs.emplace_back(s, d);
    if (symmetrize) pairs.emplace_back(d, s);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  SparseMatrix adj(edges.n_nodes, edges.n_nodes);
  adj.col_indices.reserve(pairs.size());
  adj.values.assign(pairs.size(), 1.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < edges.n_nodes; ++i) {
    while (k < pairs.size() && pairs[k].first == i) {
      adj.col_indices.push_back(pairs[k].second);
      ++k;
    }
    adj.row_offsets[i + 1] = adj.col_indices.size();
  }
  return row_normalize(adj).matrix;
}

// S = (A + A^2) / 2, mixing first- and second-order proximities. The
// symbolic nnz of A^2 is checked against max_nnz before the numeric pass;
// squaring can densify the matrix on graphs with high-degree hubs.
inline SparseMatrix build_similarity(const SparseMatrix& a,
                                     std::size_t max_nnz = 2'000'000'000ULL,
                                     int workers = 1) {
  if (a.n_rows != a.n_cols) throw ConfigError("build_similarity: matrix must be square");
  const std::size_t estimated = a.nnz() + spmm_nnz(a, a);
  if (estimated > max_nnz) {
    throw DataError("build_similarity: result would hold about " + std::to_string(estimated) +
                    " stored entries, above the cap of " + std::to_string(max_nnz) +
                    "; raise the cap only if the host has memory for it");
  }
  return add_scaled(a, 0.5, spmm(a, a, workers), 0.5);
}

}  // namespace rle
