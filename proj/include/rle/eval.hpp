#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rle/corpus.hpp"
#include "rle/embedding.hpp"
#include "rle/errors.hpp"
#include "rle/graph.hpp"
#include "rle/matrix.hpp"
#include "rle/parallel.hpp"
#include "rle/rle_core.hpp"
#include "rle/rng.hpp"

namespace rle {

struct SplitSpec {
  double train_ratio = 0.5;
  std::size_t n_repeats = 10;
  std::uint64_t seed = 1;
};

struct EvalReport {
  std::string task;            // "classification" or "link_prediction"
  double setting = 0.0;        // train ratio or hidden-edge ratio
  std::vector<double> scores;  // per repeat, as fractions in [0, 1]
  double mean = 0.0;
  double stddev = 0.0;         // population standard deviation
  double wall_time_seconds = 0.0;

  void finalize() {
    const double n = static_cast<double>(scores.size());
    mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    double var = 0.0;
    for (const double s : scores) var += (s - mean) * (s - mean);
    stddev = std::sqrt(var / n);
  }
};

// Micro-averaged F1; for single-label multiclass this equals accuracy.
inline double micro_f1(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) throw DataError("micro_f1: length mismatch");
  if (pred.empty()) throw DataError("micro_f1: empty inputs");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

namespace detail {

// L-BFGS (m = 10) with Armijo backtracking. fg fills the gradient and
// returns the objective. Deterministic: no randomness, fixed iteration order.
template <typename FG>
inline std::vector<double> lbfgs_minimize(std::size_t dim, FG&& fg, std::size_t max_iters,
                                          double grad_tol) {
  constexpr std::size_t kHistory = 10;
  std::vector<double> w(dim, 0.0), g(dim, 0.0), w_new(dim, 0.0), g_new(dim, 0.0);
  std::vector<std::vector<double>> s_hist, y_hist;
  std::vector<double> rho_hist;
  std::vector<double> q(dim), alpha(kHistory);

  double f = fg(w, g);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    const double gnorm = l2_norm(g);
    if (gnorm < grad_tol) break;

    // Two-loop recursion for the search direction.
    q = g;
    const std::size_t h = s_hist.size();
    for (std::size_t i = h; i-- > 0;) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], q);
      for (std::size_t d = 0; d < dim; ++d) q[d] -= alpha[i] * y_hist[i][d];
    }
    double gamma = 1.0;
    if (h > 0) {
      const double sy = dot(s_hist[h - 1], y_hist[h - 1]);
      const double yy = dot(y_hist[h - 1], y_hist[h - 1]);
      if (yy > 0.0) gamma = sy / yy;
    }
    for (auto& v : q) v *= gamma;
    for (std::size_t i = 0; i < h; ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], q);
      for (std::size_t d = 0; d < dim; ++d) q[d] += (alpha[i] - beta) * s_hist[i][d];
    }
    // q now approximates H^{-1} g; descend along -q.
    double dg = -dot(q, g);
    if (!(dg < 0.0)) {
      q = g;
      dg = -dot(g, g);
    }

    double step = (iter == 0 && h == 0) ? std::min(1.0, 1.0 / gnorm) : 1.0;
    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < 50; ++ls) {
      for (std::size_t d = 0; d < dim; ++d) w_new[d] = w[d] - step * q[d];
      f_new = fg(w_new, g_new);
      if (f_new <= f + 1e-4 * step * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> s(dim), y(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      s[d] = w_new[d] - w[d];
      y[d] = g_new[d] - g[d];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      if (s_hist.size() == kHistory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    w.swap(w_new);
    g.swap(g_new);
    f = f_new;
  }
  return w;
}

}  // namespace detail

// One-vs-rest linear model; weights row c holds the separator for class
// class_ids[c], with the bias as the trailing coefficient.
struct LinearModel {
  std::vector<int> class_ids;  // ascending
  DenseMatrix weights;         // n_classes x (dim + 1)

  double score(std::size_t c, std::span<const double> x) const {
    const auto w = weights.row(c);
    double s = w[x.size()];
    for (std::size_t d = 0; d < x.size(); ++d) s += w[d] * x[d];
    return s;
  }

  int predict(std::span<const double> x) const {
    std::size_t best = 0;
    double best_score = score(0, x);
    for (std::size_t c = 1; c < class_ids.size(); ++c) {
      const double sc = score(c, x);
      if (sc > best_score) {
        best_score = sc;
        best = c;
      }
    }
    return class_ids[best];
  }
};

// L2-regularized one-vs-rest linear classifier. Default loss is the squared
// hinge (primal SVM); set logistic for log-loss. Full-batch L-BFGS, stopping
// at gradient norm < 1e-6 or 1000 iterations. The data term is averaged over
// samples, so duplicating every training point leaves the model unchanged;
// the bias is not regularized.
inline LinearModel train_linear_classifier(const DenseMatrix& x, const std::vector<int>& y,
                                           double l2_strength, bool logistic = false) {
  if (x.n_rows != y.size()) throw DataError("classifier: feature/label count mismatch");
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw DataError("classifier: training data has a single class");

  const std::size_t n = x.n_rows;
  const std::size_t dim = x.n_cols;
  LinearModel model;
  model.class_ids = classes;
  model.weights = DenseMatrix(classes.size(), dim + 1);

  std::vector<double> target(n);
  std::vector<double> margins(n);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) target[i] = y[i] == classes[c] ? 1.0 : -1.0;

    const auto fg = [&](const std::vector<double>& w, std::vector<double>& grad) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.values.data() + i * dim;
        double m = w[dim];
        for (std::size_t d = 0; d < dim; ++d) m += w[d] * xi[d];
        margins[i] = target[i] * m;
      }
      const double inv_n = 1.0 / static_cast<double>(n);
      if (!logistic) {
        for (std::size_t i = 0; i < n; ++i) {
          const double hinge = 1.0 - margins[i];
          if (hinge > 0.0) {
            loss += hinge * hinge * inv_n;
            const double coef = -2.0 * hinge * target[i] * inv_n;
            const double* xi = x.values.data() + i * dim;
            for (std::size_t d = 0; d < dim; ++d) grad[d] += coef * xi[d];
            grad[dim] += coef;
          }
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          const double t = margins[i];
          loss += (t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t))) * inv_n;
          const double coef = -target[i] / (1.0 + std::exp(t)) * inv_n;
          const double* xi = x.values.data() + i * dim;
          for (std::size_t d = 0; d < dim; ++d) grad[d] += coef * xi[d];
          grad[dim] += coef;
        }
      }
      for (std::size_t d = 0; d < dim; ++d) {  // bias stays unregularized
        loss += 0.5 * l2_strength * w[d] * w[d];
        grad[d] += l2_strength * w[d];
      }
      return loss;
    };

    const std::vector<double> w = detail::lbfgs_minimize(dim + 1, fg, 1000, 1e-6);
    std::copy(w.begin(), w.end(), model.weights.row(c).begin());
  }
  return model;
}

namespace detail {

// Deterministic stratified fold assignment: members of each class are dealt
// round-robin, so no RNG is involved and folds are stable across runs.
inline std::vector<std::size_t> round_robin_folds(const std::vector<int>& y,
                                                  std::size_t folds) {
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<std::size_t> fold_of(y.size(), 0);
  for (const int c : classes) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == c) fold_of[i] = pos++ % folds;
    }
  }
  return fold_of;
}

inline DenseMatrix take_rows(const DenseMatrix& x, const std::vector<std::size_t>& rows) {
  DenseMatrix out(rows.size(), x.n_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = x.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace detail

inline const std::vector<double>& default_l2_grid() {
  static const std::vector<double> grid{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  return grid;
}

// Cross-validated selection of the regularization strength: the value with
// the best mean micro-F1 wins, ties going to the smallest strength.
inline double grid_search_l2(const DenseMatrix& x, const std::vector<int>& y,
                             const std::vector<double>& grid, std::size_t folds = 4,
                             bool logistic = false) {
  if (grid.empty()) throw ConfigError("grid_search_l2: empty grid");
  if (grid.size() == 1) return grid[0];
  if (folds < 2) throw ConfigError("grid_search_l2: folds must be >= 2");
  const std::vector<std::size_t> fold_of = detail::round_robin_folds(y, folds);

  double best_value = grid[0];
  double best_score = -1.0;
  for (const double l2 : grid) {
    double total = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_rows, val_rows;
      for (std::size_t i = 0; i < y.size(); ++i) {
        (fold_of[i] == f ? val_rows : train_rows).push_back(i);
      }
      if (val_rows.empty()) continue;
      std::vector<int> y_train, y_val;
      for (const auto i : train_rows) y_train.push_back(y[i]);
      for (const auto i : val_rows) y_val.push_back(y[i]);
      std::vector<int> distinct(y_train);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (distinct.size() < 2) continue;
      const LinearModel model =
          train_linear_classifier(detail::take_rows(x, train_rows), y_train, l2, logistic);
      std::vector<int> pred;
      pred.reserve(val_rows.size());
      for (const auto i : val_rows) pred.push_back(model.predict(x.row(i)));
      total += micro_f1(pred, y_val);
      ++evaluated;
    }
    if (evaluated == 0) continue;
    const double score = total / static_cast<double>(evaluated);
    if (score > best_score + 1e-12 ||
        (std::abs(score - best_score) <= 1e-12 && l2 < best_value)) {
      best_score = score;
      best_value = l2;
    }
  }
  return best_value;
}

namespace detail {

// Stratified train/test split; every class keeps at least one point on each
// side. Returned index lists are sorted.
inline void stratified_split(const std::vector<int>& y, double train_ratio, Rng& rng,
                             std::vector<std::size_t>& train, std::vector<std::size_t>& test) {
  train.clear();
  test.clear();
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (const int c : classes) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == c) members.push_back(i);
    }
    rng.shuffle(members);
    const auto size = static_cast<double>(members.size());
    std::size_t n_train = static_cast<std::size_t>(std::llround(train_ratio * size));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < n_train ? train : test).push_back(members[i]);
    }
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
}

}  // namespace detail

// Repeated stratified splits, each with its own grid search over the
// regularization strength on the training part only. Labels < 0 mark
// unlabeled documents and are skipped. Repeats are independent and may run
// on separate workers; scores land in per-repeat slots, so the report does
// not depend on scheduling.
inline EvalReport classification_experiment(const EmbeddingMatrix& d,
                                            const std::vector<int>& labels,
                                            const SplitSpec& spec,
                                            const std::vector<double>& l2_grid = default_l2_grid(),
                                            std::size_t folds = 4, int workers = 1,
                                            bool logistic = false) {
  if (!(spec.train_ratio > 0.0 && spec.train_ratio < 1.0)) {
    throw ConfigError("classification_experiment: train_ratio must lie in (0, 1)");
  }
  if (spec.n_repeats < 1) throw ConfigError("classification_experiment: n_repeats must be >= 1");
  if (labels.size() != d.size()) {
    throw DataError("classification_experiment: label count does not match embedding rows");
  }
  std::vector<std::size_t> labeled;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) labeled.push_back(i);
  }
  if (labeled.empty()) throw DataError("classification_experiment: no labeled documents");
  {
    std::unordered_map<int, std::size_t> counts;
    for (const auto i : labeled) ++counts[labels[i]];
    for (const auto& [c, count] : counts) {
      if (count < 2) {
        throw DataError("classification_experiment: class " + std::to_string(c) +
                        " has fewer than 2 labeled documents");
      }
    }
  }
  std::vector<int> y;
  y.reserve(labeled.size());
  for (const auto i : labeled) y.push_back(labels[i]);
  const DenseMatrix x = detail::take_rows(d.vectors, labeled);

  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  report.task = "classification";
  report.setting = spec.train_ratio;
  report.scores.assign(spec.n_repeats, 0.0);

  parallel_chunks(spec.n_repeats, workers, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> train, test;
    for (std::size_t rep = lo; rep < hi; ++rep) {
      Rng rng(spec.seed, rep);
      detail::stratified_split(y, spec.train_ratio, rng, train, test);
      std::vector<int> y_train, y_test;
      for (const auto i : train) y_train.push_back(y[i]);
      for (const auto i : test) y_test.push_back(y[i]);
      const DenseMatrix x_train = detail::take_rows(x, train);
      const double l2 = grid_search_l2(x_train, y_train, l2_grid, folds, logistic);
      const LinearModel model = train_linear_classifier(x_train, y_train, l2, logistic);
      std::vector<int> pred;
      pred.reserve(test.size());
      for (const auto i : test) pred.push_back(model.predict(x.row(i)));
      report.scores[rep] = micro_f1(pred, y_test);
    }
  });

  report.finalize();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace detail {

// Canonical undirected edge set: self-loops dropped, (u, v) with u < v,
// duplicates collapsed.
inline std::vector<std::pair<std::size_t, std::size_t>> canonical_edges(const EdgeList& edges) {
  std::vector<std::pair<std::size_t, std::size_t>> canon;
  canon.reserve(edges.edges.size());
  for (const auto& [s, d] : edges.edges) {
    if (s == d) continue;
    canon.emplace_back(std::min(s, d), std::max(s, d));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return canon;
}

}  // namespace detail

struct HideResult {
  EdgeList visible;
  std::vector<std::pair<std::size_t, std::size_t>> hidden;
};

// Uniformly hides round(ratio * m) of the m canonical undirected edges.
inline HideResult hide_edges(const EdgeList& edges, double hide_ratio, std::uint64_t seed) {
  if (!(hide_ratio > 0.0 && hide_ratio < 1.0)) {
    throw ConfigError("hide_edges: hide_ratio must lie in (0, 1)");
  }
  auto canon = detail::canonical_edges(edges);
  const std::size_t n_hidden = static_cast<std::size_t>(
      std::llround(hide_ratio * static_cast<double>(canon.size())));
  Rng rng(seed);
  rng.shuffle(canon);
  HideResult out;
  out.hidden.assign(canon.begin(), canon.begin() + static_cast<std::ptrdiff_t>(n_hidden));
  out.visible.n_nodes = edges.n_nodes;
  out.visible.edges.assign(canon.begin() + static_cast<std::ptrdiff_t>(n_hidden), canon.end());
  std::sort(out.hidden.begin(), out.hidden.end());
  std::sort(out.visible.edges.begin(), out.visible.edges.end());
  return out;
}

// AUC through rank statistics with midranks for ties, which matches the
// pairwise definition P(pos > neg) + 0.5 P(pos = neg).
inline double auc_rank(const std::vector<double>& pos, const std::vector<double>& neg) {
  if (pos.empty() || neg.empty()) throw DataError("auc: need both positive and negative scores");
  std::vector<std::pair<double, int>> all;
  all.reserve(pos.size() + neg.size());
  for (const double s : pos) all.emplace_back(s, 1);
  for (const double s : neg) all.emplace_back(s, 0);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second == 1) rank_sum_pos += midrank;
    }
    i = j;
  }
  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

// Uniformly samples `count` unordered node pairs that are not edges of the
// original graph (and are not self-pairs), with replacement across draws.
inline std::vector<std::pair<std::size_t, std::size_t>> sample_negative_pairs(
    const EdgeList& edges, std::size_t count, Rng& rng) {
  const auto canon = detail::canonical_edges(edges);
  const std::size_t n = edges.n_nodes;
  if (n < 3) throw DataError("sample_negative_pairs: graph too small");
  if (canon.size() >= n * (n - 1) / 2) {
    throw DataError("sample_negative_pairs: graph is complete, no negative pairs exist");
  }
  std::unordered_set<std::uint64_t> edge_keys;
  edge_keys.reserve(canon.size() * 2);
  for (const auto& [a, b] : canon) {
    edge_keys.insert(static_cast<std::uint64_t>(a) * n + b);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(count);
  while (pairs.size() < count) {
    const std::size_t a = rng.next_below(n);
    const std::size_t b = rng.next_below(n);
    if (a == b) continue;
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    if (edge_keys.count(static_cast<std::uint64_t>(lo) * n + hi) != 0) continue;
    pairs.emplace_back(lo, hi);
  }
  return pairs;
}

// Link prediction protocol: hide a share of the edges, re-embed on the
// visible graph only, then score hidden pairs against an equal number of
// uniformly sampled never-connected pairs by cosine similarity. The
// embed_visible callback must return embeddings whose row i corresponds to
// node i.
template <typename EmbedFn>
inline EvalReport link_prediction_experiment_fn(EmbedFn&& embed_visible, const EdgeList& edges,
                                                double hide_ratio, std::size_t n_repeats,
                                                std::uint64_t seed) {
  if (detail::canonical_edges(edges).size() < 10) {
    throw DataError("link prediction: graph has fewer than 10 edges");
  }

  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  report.task = "link_prediction";
  report.setting = hide_ratio;
  report.scores.assign(n_repeats, 0.0);

  for (std::size_t rep = 0; rep < n_repeats; ++rep) {
    const std::uint64_t rep_seed = Rng(seed, 1000 + rep).next_u64();
    const HideResult hr = hide_edges(edges, hide_ratio, rep_seed);
    const EmbeddingMatrix emb = embed_visible(hr.visible);

    std::vector<double> pos_scores, neg_scores;
    pos_scores.reserve(hr.hidden.size());
    neg_scores.reserve(hr.hidden.size());
    for (const auto& [a, b] : hr.hidden) {
      pos_scores.push_back(cosine(emb.row(a), emb.row(b)));
    }
    Rng neg_rng(rep_seed, 0xeb);
    for (const auto& [a, b] : sample_negative_pairs(edges, hr.hidden.size(), neg_rng)) {
      neg_scores.push_back(cosine(emb.row(a), emb.row(b)));
    }
    report.scores[rep] = auc_rank(pos_scores, neg_scores);
  }

  report.finalize();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// Link prediction for the smoothed-projection method itself: word vectors
// stay fixed (they depend on text only); the similarity matrix is rebuilt
// from the visible edges each repeat.
inline EvalReport link_prediction_experiment(const Corpus& corpus, const EdgeList& edges,
                                             const EmbeddingMatrix& u, const RleConfig& cfg,
                                             double hide_ratio, std::uint64_t seed,
                                             std::size_t n_repeats = 10) {
  return link_prediction_experiment_fn(
      [&](const EdgeList& visible) { return embed(corpus, visible, u, cfg); }, edges,
      hide_ratio, n_repeats, seed);
}

struct LambdaPoint {
  double lambda = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Classification score as a function of lambda, sharing the splits across
// grid points. D(lambda) interpolates linearly between the lambda = 0 and
// lambda = 1 embeddings, which reproduces the fused pipeline exactly.
inline std::vector<LambdaPoint> lambda_sweep(const Corpus& corpus, const EdgeList& edges,
                                             const EmbeddingMatrix& u,
                                             const std::vector<double>& lambdas,
                                             const SplitSpec& spec, RleConfig cfg = {},
                                             int workers = 1) {
  if (lambdas.empty()) throw ConfigError("lambda_sweep: empty lambda grid");
  for (const double lm : lambdas) {
    if (!(lm >= 0.0 && lm <= 1.0)) throw ConfigError("lambda_sweep: lambda out of [0, 1]");
  }
  if (!corpus.has_labels()) throw DataError("lambda_sweep: corpus has no labels");
  cfg.fuse = true;
  cfg.lambda = 0.0;
  const EmbeddingMatrix d0 = embed(corpus, edges, u, cfg);
  cfg.lambda = 1.0;
  const EmbeddingMatrix d1 = embed(corpus, edges, u, cfg);

  std::vector<LambdaPoint> curve;
  curve.reserve(lambdas.size());
  for (const double lm : lambdas) {
    DenseMatrix d(d0.vectors.n_rows, d0.vectors.n_cols);
    for (std::size_t k = 0; k < d.values.size(); ++k) {
      d.values[k] = (1.0 - lm) * d0.vectors.values[k] + lm * d1.vectors.values[k];
    }
    const EmbeddingMatrix emb = EmbeddingMatrix::from_dense(corpus.doc_ids, std::move(d));
    const EvalReport rep =
        classification_experiment(emb, corpus.labels, spec, default_l2_grid(), 4, workers);
    curve.push_back({lm, rep.mean, rep.stddev});
  }
  return curve;
}

struct ReportRow {
  std::string task;
  std::string method;
  double ratio = 0.0;
  double mean = 0.0;    // percentage points, paper-style
  double stddev = 0.0;  // percentage points
  double seconds = 0.0;
};

inline void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path);
  out << "task,method,ratio,mean,stddev,seconds\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.2f,%.4f,%.4f,%.3f\n", r.task.c_str(),
                  r.method.c_str(), r.ratio, r.mean, r.stddev, r.seconds);
    out << buf;
  }
  if (!out) throw DataError("failed while writing report file: " + path);
}

inline void write_report_text(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path);
  char buf[160];
  for (const auto& r : rows) {
    out << "task = " << r.task << '\n';
    out << "method = " << r.method << '\n';
    std::snprintf(buf, sizeof(buf), "ratio = %.2f\nmean = %.4f\nstddev = %.4f\nseconds = %.3f\n\n",
                  r.ratio, r.mean, r.stddev, r.seconds);
    out << buf;
  }
  if (!out) throw DataError("failed while writing report file: " + path);
}

}  // namespace rle
