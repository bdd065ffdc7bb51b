#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/embedding.hpp"
#include "rle/errors.hpp"
#include "rle/log.hpp"
#include "rle/parallel.hpp"
#include "rle/rng.hpp"

namespace rle {

struct SgnsConfig {
  std::size_t dim = 160;
  std::size_t window = 15;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  double subsample = 0.0;  // word2vec-style frequent-token threshold; 0 disables
  std::uint64_t seed = 1;
  int workers = 1;

  void validate() const {
    if (dim < 1) throw ConfigError("sgns: dim must be >= 1");
    if (window < 1) throw ConfigError("sgns: window must be >= 1");
    if (negatives < 1) throw ConfigError("sgns: negatives must be >= 1");
    if (learning_rate <= 0.0) throw ConfigError("sgns: learning rate must be positive");
  }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Loss of a single training step in double precision:
//   -log s(w.c) - sum_neg log s(-w.u)
// where w is the center's input vector, c the context's output vector and u
// the negatives' output vectors. The float trainer below applies the exact
// gradient of this expression.
inline double sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                             const std::vector<std::vector<double>>& negatives) {
  double loss = -std::log(sigmoid(dot(center, context)));
  for (const auto& neg : negatives) {
    loss -= std::log(sigmoid(-dot(center, std::span<const double>(neg))));
  }
  return loss;
}

struct SgnsPairGrad {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

inline SgnsPairGrad sgns_pair_grad(std::span<const double> center,
                                   std::span<const double> context,
                                   const std::vector<std::vector<double>>& negatives) {
  const std::size_t k = center.size();
  SgnsPairGrad g;
  g.center.assign(k, 0.0);
  g.context.assign(k, 0.0);
  const double sp = sigmoid(dot(center, context));
  for (std::size_t d = 0; d < k; ++d) {
    g.center[d] -= (1.0 - sp) * context[d];
    g.context[d] -= (1.0 - sp) * center[d];
  }
  for (const auto& neg : negatives) {
    const double sn = sigmoid(dot(center, std::span<const double>(neg)));
    auto& gn = g.negatives.emplace_back(k, 0.0);
    for (std::size_t d = 0; d < k; ++d) {
      g.center[d] += sn * neg[d];
      gn[d] += sn * center[d];
    }
  }
  return g;
}

namespace detail {

// Cumulative unigram^(3/4) sampling table, the classic word2vec scheme.
inline std::vector<std::uint32_t> build_unigram_table(const std::vector<std::uint64_t>& counts,
                                                      std::size_t table_size) {
  std::vector<std::uint32_t> table(table_size);
  double total = 0.0;
  for (const auto c : counts) total += std::pow(static_cast<double>(c), 0.75);
  if (total <= 0.0) throw DataError("sgns: no occurrences to sample negatives from");
  std::size_t item = 0;
  double cum = std::pow(static_cast<double>(counts[0]), 0.75) / total;
  for (std::size_t i = 0; i < table_size; ++i) {
    table[i] = static_cast<std::uint32_t>(item);
    if (static_cast<double>(i + 1) / static_cast<double>(table_size) > cum &&
        item + 1 < counts.size()) {
      ++item;
      cum += std::pow(static_cast<double>(counts[item]), 0.75) / total;
    }
  }
  return table;
}

}  // namespace detail

// Skip-gram with negative sampling over integer id sequences. Returns the
// input vectors as an n_items x dim matrix. With workers == 1 the run is
// bit-reproducible for a fixed seed; with more workers the updates are
// interleaved without synchronization (word2vec-style) and only
// statistically equivalent.
inline DenseMatrix train_sgns_ids(const std::vector<std::vector<std::size_t>>& sequences,
                                  std::size_t n_items, const SgnsConfig& cfg) {
  cfg.validate();
  if (n_items == 0) throw DataError("sgns: empty vocabulary");

  std::vector<std::uint64_t> counts(n_items, 0);
  std::uint64_t total_tokens = 0;
  std::uint64_t total_pairs_per_epoch = 0;
  for (const auto& seq : sequences) {
    const std::size_t len = seq.size();
    for (std::size_t c = 0; c < len; ++c) {
      if (seq[c] >= n_items) throw ConfigError("sgns: item id out of range");
      ++counts[seq[c]];
      ++total_tokens;
      total_pairs_per_epoch += std::min(c, cfg.window) + std::min(len - 1 - c, cfg.window);
    }
  }
  if (total_tokens == 0) throw DataError("sgns: no trainable tokens in input");

  const std::size_t dim = cfg.dim;
  std::vector<float> input(n_items * dim);
  std::vector<float> output(n_items * dim, 0.0f);
  {
    Rng init_rng(cfg.seed);
    for (auto& v : input) {
      v = static_cast<float>((init_rng.next_double() - 0.5) / static_cast<double>(dim));
    }
  }

  if (cfg.epochs > 0 && total_pairs_per_epoch > 0) {
    constexpr std::size_t kTableSize = 1u << 20;
    const std::vector<std::uint32_t> table = detail::build_unigram_table(counts, kTableSize);

    // Subsampling keep-probabilities (word2vec formula), only if enabled.
    std::vector<double> keep_prob;
    if (cfg.subsample > 0.0) {
      keep_prob.resize(n_items, 1.0);
      for (std::size_t w = 0; w < n_items; ++w) {
        if (counts[w] == 0) continue;
        const double f =
            static_cast<double>(counts[w]) / static_cast<double>(total_tokens);
        keep_prob[w] = (std::sqrt(f / cfg.subsample) + 1.0) * cfg.subsample / f;
      }
    }

    const double total_pairs =
        static_cast<double>(total_pairs_per_epoch) * static_cast<double>(cfg.epochs);
    std::atomic<std::uint64_t> pairs_done{0};

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      parallel_chunks(sequences.size(), cfg.workers, [&](std::size_t lo, std::size_t hi) {
        Rng rng(cfg.seed, 0x7261696eULL + epoch * (sequences.size() + 1) + lo);
        std::vector<float> grad(dim);
        std::vector<std::size_t> filtered;
        for (std::size_t s = lo; s < hi; ++s) {
          const std::vector<std::size_t>* seq = &sequences[s];
          if (!keep_prob.empty()) {
            filtered.clear();
            for (const std::size_t w : *seq) {
              if (keep_prob[w] >= 1.0 || rng.next_double() < keep_prob[w]) {
                filtered.push_back(w);
              }
            }
            seq = &filtered;
          }
          const std::size_t len = seq->size();
          for (std::size_t c = 0; c < len; ++c) {
            const std::size_t span_lo = c - std::min(c, cfg.window);
            const std::size_t span_hi = c + std::min(len - 1 - c, cfg.window);
            const std::uint64_t done =
                pairs_done.fetch_add(span_hi - span_lo, std::memory_order_relaxed);
            const double frac = std::min(1.0, static_cast<double>(done) / total_pairs);
            const float lr = static_cast<float>(std::max(
                cfg.min_learning_rate,
                cfg.learning_rate - (cfg.learning_rate - cfg.min_learning_rate) * frac));

            const std::size_t center = (*seq)[c];
            float* w_cen = input.data() + center * dim;
            for (std::size_t p = span_lo; p <= span_hi; ++p) {
              if (p == c) continue;
              const std::size_t context = (*seq)[p];
              for (std::size_t d = 0; d < dim; ++d) grad[d] = 0.0f;
              for (std::size_t k = 0; k <= cfg.negatives; ++k) {
                std::size_t target;
                float label;
                if (k == 0) {
                  target = context;
                  label = 1.0f;
                } else {
                  target = table[rng.next_below(table.size())];
                  if (target == context) continue;
                  label = 0.0f;
                }
                float* u = output.data() + target * dim;
                float f = 0.0f;
                for (std::size_t d = 0; d < dim; ++d) f += w_cen[d] * u[d];
                const float g =
                    (label - static_cast<float>(sigmoid(static_cast<double>(f)))) * lr;
                for (std::size_t d = 0; d < dim; ++d) grad[d] += g * u[d];
                for (std::size_t d = 0; d < dim; ++d) u[d] += g * w_cen[d];
              }
              for (std::size_t d = 0; d < dim; ++d) w_cen[d] += grad[d];
            }
          }
        }
      });
      for (const float v : input) {
        if (!std::isfinite(v)) {
          throw std::runtime_error("sgns: non-finite input vector after epoch " +
                                   std::to_string(epoch + 1));
        }
      }
      for (const float v : output) {
        if (!std::isfinite(v)) {
          throw std::runtime_error("sgns: non-finite output vector after epoch " +
                                   std::to_string(epoch + 1));
        }
      }
    }
  }

  DenseMatrix result(n_items, dim);
  for (std::size_t i = 0; i < n_items * dim; ++i) {
    result.values[i] = static_cast<double>(input[i]);
  }
  return result;
}

// Trains word vectors on the corpus restricted to the vocabulary; rows are
// aligned to vocab order.
inline EmbeddingMatrix train_sgns(const std::vector<std::vector<std::string>>& token_lists,
                                  const Vocabulary& vocab, const SgnsConfig& cfg) {
  std::vector<std::vector<std::size_t>> sequences(token_lists.size());
  std::size_t kept = 0;
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    for (const auto& tok : token_lists[i]) {
      const auto it = vocab.term_to_index.find(tok);
      if (it != vocab.term_to_index.end()) {
        sequences[i].push_back(it->second);
        ++kept;
      }
    }
  }
  if (kept == 0) throw DataError("sgns: corpus is empty after vocabulary filtering");
  EmbeddingMatrix emb = EmbeddingMatrix::zeros(vocab.terms, cfg.dim);
  emb.vectors = train_sgns_ids(sequences, vocab.size(), cfg);
  return emb;
}

struct LoadedVectors {
  EmbeddingMatrix emb;  // aligned to vocab order; missing terms are zero rows
  double coverage = 0.0;
};

// Reads word2vec text format and aligns the vectors to the vocabulary.
inline LoadedVectors load_word_vectors(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vectors file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("vectors file " + path + " is empty");
  std::size_t declared_rows = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(detail::strip_cr(std::move(line)));
    if (!(header >> declared_rows >> dim) || dim == 0) {
      throw DataError("vectors file " + path + ": malformed header line");
    }
  }
  LoadedVectors out;
  out.emb = EmbeddingMatrix::zeros(vocab.terms, dim);
  std::vector<bool> found(vocab.size(), false);
  std::size_t n_found = 0;
  std::size_t line_no = 1;
  std::size_t rows_seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(std::move(line));
    if (line.empty()) continue;
    ++rows_seen;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    const auto it = vocab.term_to_index.find(token);
    if (it == vocab.term_to_index.end()) {
      // Still validate the field count so truncated files are caught.
      double v = 0.0;
      std::size_t count = 0;
      while (ls >> v) ++count;
      if (count != dim) {
        throw DataError("vectors file " + path + ": line " + std::to_string(line_no) +
                        " has " + std::to_string(count) + " values, expected " +
                        std::to_string(dim));
      }
      continue;
    }
    if (found[it->second]) continue;  // first occurrence wins
    auto row = out.emb.vectors.row(it->second);
    std::size_t count = 0;
    double v = 0.0;
    while (ls >> v) {
      if (count < dim) row[count] = v;
      ++count;
    }
    if (count != dim) {
      throw DataError("vectors file " + path + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(count) + " values, expected " + std::to_string(dim));
    }
    found[it->second] = true;
    ++n_found;
  }
  if (rows_seen != declared_rows) {
    log_warn("vectors file " + path + ": header declares " + std::to_string(declared_rows) +
             " rows but " + std::to_string(rows_seen) + " were read");
  }
  out.coverage =
      vocab.size() == 0 ? 0.0 : static_cast<double>(n_found) / static_cast<double>(vocab.size());
  if (out.coverage < 1.0) {
    log_warn("vectors file " + path + ": " + std::to_string(vocab.size() - n_found) +
             " vocabulary term(s) missing; their rows stay zero");
  }
  return out;
}

// word2vec text format, 6 significant digits.
inline void save_vectors(const EmbeddingMatrix& emb, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vectors file: " + path);
  out << emb.size() << ' ' << emb.dim() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < emb.size(); ++i) {
    out << emb.keys[i];
    const auto row = emb.row(i);
    for (const double v : row) {
      std::snprintf(buf, sizeof(buf), " %.6g", v);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("failed while writing vectors file: " + path);
}

}  // namespace rle
