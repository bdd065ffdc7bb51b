#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rle/errors.hpp"
#include "rle/log.hpp"
#include "rle/matrix.hpp"

namespace rle {

// Lowercases and splits on any non-alphanumeric byte; empty and pure-digit
// tokens are dropped ("2nd" survives, "2007" does not).
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  bool all_digits = true;
  const auto flush = [&] {
    if (!cur.empty() && !all_digits) tokens.push_back(cur);
    cur.clear();
    all_digits = true;
  };
  for (const char raw : text) {
    const unsigned char ch = static_cast<unsigned char>(raw);
    if (ch >= '0' && ch <= '9') {
      cur.push_back(static_cast<char>(ch));
    } else if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z')) {
      cur.push_back(static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch));
      all_digits = false;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

struct Corpus {
  std::vector<std::string> doc_ids;
  std::vector<std::vector<std::string>> token_lists;
  std::vector<int> labels;                // -1 = unlabeled; empty if no labels loaded
  std::vector<std::string> class_names;   // class id = position (first appearance order)
  std::unordered_map<std::string, std::size_t> id_to_index;

  std::size_t n_docs() const { return doc_ids.size(); }
  bool has_labels() const { return !labels.empty(); }
  std::size_t n_classes() const { return class_names.size(); }
};

struct Vocabulary {
  std::vector<std::string> terms;  // sorted lexicographically
  std::unordered_map<std::string, std::size_t> term_to_index;
  std::vector<std::size_t> doc_freq;
  std::vector<std::size_t> total_count;

  std::size_t size() const { return terms.size(); }
};

// Keeps term t iff t is not a stopword, occurs at least min_count times in
// the whole corpus, and appears in at most max_df_ratio of the documents.
inline Vocabulary build_vocabulary(const Corpus& corpus,
                                   const std::unordered_set<std::string>& stopwords,
                                   std::size_t min_count = 10, double max_df_ratio = 0.25) {
  if (min_count < 1) throw ConfigError("build_vocabulary: min_count must be >= 1");
  if (!(max_df_ratio > 0.0) || max_df_ratio > 1.0) {
    throw ConfigError("build_vocabulary: max_df_ratio must lie in (0, 1]");
  }

  struct Stat {
    std::size_t total = 0;
    std::size_t df = 0;
    std::size_t last_doc = std::numeric_limits<std::size_t>::max();
  };
  std::unordered_map<std::string, Stat> stats;
  for (std::size_t i = 0; i < corpus.n_docs(); ++i) {
    for (const auto& tok : corpus.token_lists[i]) {
      Stat& s = stats[tok];
      ++s.total;
      if (s.last_doc != i) {
        s.last_doc = i;
        ++s.df;
      }
    }
  }

  const double max_df = max_df_ratio * static_cast<double>(corpus.n_docs());
  Vocabulary vocab;
  for (const auto& [term, s] : stats) {
    if (stopwords.count(term) != 0) continue;
    if (s.total < min_count) continue;
    if (static_cast<double>(s.df) > max_df) continue;
    vocab.terms.push_back(term);
  }
  if (vocab.terms.empty()) {
    throw DataError("build_vocabulary: no terms survive pruning");
  }
  std::sort(vocab.terms.begin(), vocab.terms.end());

  vocab.doc_freq.resize(vocab.terms.size());
  vocab.total_count.resize(vocab.terms.size());
  vocab.term_to_index.reserve(vocab.terms.size());
  for (std::size_t j = 0; j < vocab.terms.size(); ++j) {
    const Stat& s = stats.at(vocab.terms[j]);
    vocab.doc_freq[j] = s.df;
    vocab.total_count[j] = s.total;
    vocab.term_to_index.emplace(vocab.terms[j], j);
  }
  return vocab;
}

// Raw in-vocabulary term counts per document, columns aligned to the given
// term -> column map.
inline SparseMatrix build_doc_term_counts(
    const Corpus& corpus, const std::unordered_map<std::string, std::size_t>& term_to_col,
    std::size_t n_cols) {
  SparseMatrix counts(corpus.n_docs(), n_cols);
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < corpus.n_docs(); ++i) {
    ids.clear();
    for (const auto& tok : corpus.token_lists[i]) {
      const auto it = term_to_col.find(tok);
      if (it != term_to_col.end()) ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    std::size_t k = 0;
    while (k < ids.size()) {
      const std::size_t col = ids[k];
      std::size_t run = 0;
      while (k < ids.size() && ids[k] == col) {
        ++run;
        ++k;
      }
      counts.col_indices.push_back(col);
      counts.values.push_back(static_cast<double>(run));
    }
    counts.row_offsets[i + 1] = counts.values.size();
  }
  return counts;
}

inline SparseMatrix build_doc_term_counts(const Corpus& corpus, const Vocabulary& vocab) {
  return build_doc_term_counts(corpus, vocab.term_to_index, vocab.size());
}

struct DocTermMatrix {
  SparseMatrix t;                       // relative frequencies; rows sum to 1 or are empty
  std::vector<std::size_t> empty_docs;  // documents with no in-vocabulary token
};

// T[i][j] = count of term j in document i, divided by the document's total
// in-vocabulary token count. The denominator deliberately ignores pruned
// tokens so each non-empty row is a probability distribution.
inline DocTermMatrix build_doc_term_matrix(
    const Corpus& corpus, const std::unordered_map<std::string, std::size_t>& term_to_col,
    std::size_t n_cols) {
  auto normalized = row_normalize(build_doc_term_counts(corpus, term_to_col, n_cols));
  if (!normalized.dangling_rows.empty()) {
    log_warn(std::to_string(normalized.dangling_rows.size()) +
             " document(s) have no in-vocabulary tokens; their rows of T are empty");
  }
  return {std::move(normalized.matrix), std::move(normalized.dangling_rows)};
}

inline DocTermMatrix build_doc_term_matrix(const Corpus& corpus, const Vocabulary& vocab) {
  return build_doc_term_matrix(corpus, vocab.term_to_index, vocab.size());
}

// tf-idf weighting of a count matrix. Plain variant: idf = ln(n/df), so a
// term present in every document gets weight 0 and drops out. The smooth
// variant ln((1+n)/(1+df)) + 1 never vanishes.
inline SparseMatrix tfidf_transform(const SparseMatrix& counts, bool smooth_idf = false) {
  std::vector<std::size_t> df(counts.n_cols, 0);
  for (std::size_t k = 0; k < counts.col_indices.size(); ++k) ++df[counts.col_indices[k]];
  const double n = static_cast<double>(counts.n_rows);
  std::vector<double> idf(counts.n_cols, 0.0);
  for (std::size_t j = 0; j < counts.n_cols; ++j) {
    if (df[j] == 0) continue;
    idf[j] = smooth_idf ? std::log((1.0 + n) / (1.0 + static_cast<double>(df[j]))) + 1.0
                        : std::log(n / static_cast<double>(df[j]));
  }
  SparseMatrix w(counts.n_rows, counts.n_cols);
  w.col_indices.reserve(counts.nnz());
  w.values.reserve(counts.nnz());
  for (std::size_t i = 0; i < counts.n_rows; ++i) {
    for (std::size_t k = counts.row_offsets[i]; k < counts.row_offsets[i + 1]; ++k) {
      const double v = counts.values[k] * idf[counts.col_indices[k]];
      if (std::abs(v) >= kSparseDropTol) {
        w.col_indices.push_back(counts.col_indices[k]);
        w.values.push_back(v);
      }
    }
    w.row_offsets[i + 1] = w.values.size();
  }
  return w;
}

namespace detail {

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

// Documents file: one document per line, `doc_id<TAB>text`.
inline Corpus load_documents(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open documents file: " + path);
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(std::move(line));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("documents file " + path + ": line " + std::to_string(line_no) +
                      " has no <TAB> separator");
    }
    std::string id = line.substr(0, tab);
    if (id.empty()) {
      throw DataError("documents file " + path + ": empty doc id on line " +
                      std::to_string(line_no));
    }
    if (!corpus.id_to_index.emplace(id, corpus.doc_ids.size()).second) {
      throw DataError("documents file " + path + ": duplicate doc id '" + id + "'");
    }
    corpus.token_lists.push_back(tokenize(std::string_view(line).substr(tab + 1)));
    corpus.doc_ids.push_back(std::move(id));
  }
  if (corpus.doc_ids.empty()) throw DataError("documents file " + path + " is empty");
  return corpus;
}

// Labels file: `doc_id<TAB>label_string`. Labels map to dense class ids by
// first appearance; documents absent from the file stay unlabeled (-1).
inline void load_labels(const std::string& path, Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open labels file: " + path);
  corpus.labels.assign(corpus.n_docs(), -1);
  corpus.class_names.clear();
  std::unordered_map<std::string, int> class_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(std::move(line));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("labels file " + path + ": line " + std::to_string(line_no) +
                      " has no <TAB> separator");
    }
    const std::string id = line.substr(0, tab);
    const std::string label = line.substr(tab + 1);
    const auto doc = corpus.id_to_index.find(id);
    if (doc == corpus.id_to_index.end()) {
      throw DataError("labels file " + path + ": unknown doc id '" + id + "'");
    }
    auto [it, inserted] = class_ids.emplace(label, static_cast<int>(corpus.class_names.size()));
    if (inserted) corpus.class_names.push_back(label);
    corpus.labels[doc->second] = it->second;
  }
}

// Stopwords file: one lowercase token per line.
inline std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopwords file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::strip_cr(std::move(line));
    if (!line.empty()) words.insert(line);
  }
  return words;
}

}  // namespace rle
