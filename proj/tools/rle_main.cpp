// Command-line front end: embed | eval-classify | eval-linkpred | sweep |
// keywords. Exit codes: 0 success, 1 internal error, 2 user/data error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "rle/rle.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string docs;
  std::string edges;
  std::string labels;
  std::string stopwords;
  std::string vectors;
  std::string out = "rle_out";
  std::string method = "rle";

  double lambda = 0.7;
  std::size_t dim = 160;
  std::size_t window = 15;  // text SGNS window (15 suits abstracts-sized docs)
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  double subsample = 0.0;

  std::size_t min_count = 10;
  double max_df = 0.25;

  std::size_t dw_walks = 40;
  std::size_t dw_length = 40;
  std::size_t dw_window = 10;

  std::vector<double> ratios{0.1, 0.3, 0.5};
  std::vector<double> hide_ratios{0.5, 0.25};
  std::vector<double> grid;  // lambda grid; empty means 0, 0.05, ..., 1
  std::size_t repeats = 10;
  std::size_t top_k = 5;
  std::uint64_t seed = 1;
  int workers = 1;
  bool directed = false;
};

struct Inputs {
  rle::Corpus corpus;
  rle::Vocabulary vocab;
  rle::SparseMatrix counts;
  std::optional<rle::EdgeList> edges;
};

void require_file(const char* flag, const std::string& path) {
  if (path.empty()) {
    throw rle::ConfigError(std::string("required flag --") + flag + " was not given");
  }
  if (!fs::exists(path)) {
    throw rle::DataError(std::string("--") + flag + ": file not found: " + path);
  }
}

bool method_needs_graph(const std::string& method) {
  return method == "rle" || method == "deepwalk" || method == "concat";
}

bool method_needs_text(const std::string& method) {
  return method == "rle" || method == "word_average" || method == "lsa" || method == "concat";
}

Inputs load_inputs(const Options& opt, bool need_labels) {
  require_file("docs", opt.docs);
  Inputs in;
  in.corpus = rle::load_documents(opt.docs);
  rle::log_info("loaded " + std::to_string(in.corpus.n_docs()) + " documents from " + opt.docs);

  if (need_labels || !opt.labels.empty()) {
    require_file("labels", opt.labels);
    rle::load_labels(opt.labels, in.corpus);
    rle::log_info("loaded labels: " + std::to_string(in.corpus.n_classes()) + " classes");
  }

  std::unordered_set<std::string> stopwords;
  if (!opt.stopwords.empty()) {
    require_file("stopwords", opt.stopwords);
    stopwords = rle::load_stopwords(opt.stopwords);
  } else {
    rle::log_info("no stopwords file given; keeping all tokens");
  }

  in.vocab = rle::build_vocabulary(in.corpus, stopwords, opt.min_count, opt.max_df);
  rle::log_info("vocabulary: " + std::to_string(in.vocab.size()) + " terms");
  in.counts = rle::build_doc_term_counts(in.corpus, in.vocab);

  if (method_needs_graph(opt.method) || !opt.edges.empty()) {
    require_file("edges", opt.edges);
    in.edges = rle::load_edges(opt.edges, in.corpus);
    rle::log_info("loaded " + std::to_string(in.edges->edges.size()) + " edges");
  }
  return in;
}

rle::RleConfig rle_config(const Options& opt) {
  rle::RleConfig cfg;
  cfg.lambda = opt.lambda;
  cfg.symmetrize = !opt.directed;
  cfg.workers = opt.workers;
  return cfg;
}

rle::SgnsConfig sgns_config(const Options& opt) {
  rle::SgnsConfig cfg;
  cfg.dim = opt.dim;
  cfg.window = opt.window;
  cfg.negatives = opt.negatives;
  cfg.epochs = opt.epochs;
  cfg.learning_rate = opt.learning_rate;
  cfg.subsample = opt.subsample;
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  return cfg;
}

rle::DeepWalkConfig deepwalk_config(const Options& opt, std::size_t dim) {
  rle::DeepWalkConfig cfg;
  cfg.walks_per_node = opt.dw_walks;
  cfg.walk_length = opt.dw_length;
  cfg.window = opt.dw_window;
  cfg.dim = dim;
  cfg.negatives = opt.negatives;
  cfg.epochs = opt.epochs;
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  return cfg;
}

// Word vectors for text-based methods: pretrained if --vectors is given,
// otherwise trained on the corpus.
rle::EmbeddingMatrix word_vectors(const Options& opt, const Inputs& in) {
  if (!opt.vectors.empty()) {
    require_file("vectors", opt.vectors);
    rle::LoadedVectors loaded = rle::load_word_vectors(opt.vectors, in.vocab);
    rle::log_info("loaded word vectors, coverage " + std::to_string(loaded.coverage));
    return std::move(loaded.emb);
  }
  const auto t0 = std::chrono::steady_clock::now();
  rle::EmbeddingMatrix u = rle::train_sgns(in.corpus.token_lists, in.vocab, sgns_config(opt));
  rle::log_info("trained word vectors in " +
                std::to_string(std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count()) +
                " s");
  return u;
}

rle::EmbeddingMatrix word_average(const Inputs& in, const rle::EmbeddingMatrix& u,
                                  int workers) {
  const rle::DocTermMatrix dt =
      rle::build_doc_term_matrix(in.corpus, u.index, u.size());
  return rle::EmbeddingMatrix::from_dense(in.corpus.doc_ids,
                                          rle::sp_dense_mm(dt.t, u.vectors, workers));
}

// Document embedding on the full graph for any supported method.
rle::EmbeddingMatrix compute_embedding(const Options& opt, const Inputs& in,
                                       const rle::EmbeddingMatrix* u) {
  if (opt.method == "rle") {
    return rle::embed(in.corpus, *in.edges, *u, rle_config(opt));
  }
  if (opt.method == "word_average") {
    return word_average(in, *u, opt.workers);
  }
  if (opt.method == "deepwalk") {
    return rle::deepwalk(*in.edges, in.corpus.doc_ids, deepwalk_config(opt, opt.dim));
  }
  if (opt.method == "lsa") {
    return rle::lsa(in.counts, in.corpus.doc_ids, opt.dim, false, opt.seed, opt.workers);
  }
  if (opt.method == "concat") {
    const std::size_t half = opt.dim / 2;
    const rle::EmbeddingMatrix dw =
        rle::deepwalk(*in.edges, in.corpus.doc_ids, deepwalk_config(opt, half));
    const rle::EmbeddingMatrix ls =
        rle::lsa(in.counts, in.corpus.doc_ids, opt.dim - half, false, opt.seed, opt.workers);
    return rle::concatenate(ls, dw);
  }
  throw rle::ConfigError("unknown method '" + opt.method +
                         "' (expected rle|word_average|deepwalk|lsa|concat)");
}

void write_manifest(const Options& opt, const std::string& command, double wall_seconds) {
  std::ofstream out(fs::path(opt.out) / "manifest.txt");
  if (!out) throw rle::DataError("cannot write manifest in " + opt.out);
  out << "command = " << command << '\n';
  out << "version = " << rle::kVersion << '\n';
  out << "docs = " << opt.docs << '\n';
  out << "edges = " << opt.edges << '\n';
  out << "labels = " << opt.labels << '\n';
  out << "stopwords = " << opt.stopwords << '\n';
  out << "vectors = " << opt.vectors << '\n';
  out << "out = " << opt.out << '\n';
  out << "method = " << opt.method << '\n';
  out << "lambda = " << opt.lambda << '\n';
  out << "dim = " << opt.dim << '\n';
  out << "window = " << opt.window << '\n';
  out << "negatives = " << opt.negatives << '\n';
  out << "epochs = " << opt.epochs << '\n';
  out << "learning_rate = " << opt.learning_rate << '\n';
  out << "subsample = " << opt.subsample << '\n';
  out << "min_count = " << opt.min_count << '\n';
  out << "max_df = " << opt.max_df << '\n';
  out << "dw_walks = " << opt.dw_walks << '\n';
  out << "dw_length = " << opt.dw_length << '\n';
  out << "dw_window = " << opt.dw_window << '\n';
  out << "ratios =";
  for (const double r : opt.ratios) out << ' ' << r;
  out << '\n';
  out << "hide_ratios =";
  for (const double r : opt.hide_ratios) out << ' ' << r;
  out << '\n';
  out << "grid =";
  for (const double g : opt.grid) out << ' ' << g;
  out << '\n';
  out << "repeats = " << opt.repeats << '\n';
  out << "top_k = " << opt.top_k << '\n';
  out << "seed = " << opt.seed << '\n';
  out << "workers = " << opt.workers << '\n';
  out << "directed = " << (opt.directed ? 1 : 0) << '\n';
  out << "wall_time_seconds = " << wall_seconds << '\n';
}

int cmd_embed(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Inputs in = load_inputs(opt, /*need_labels=*/false);
  rle::EmbeddingMatrix d;
  if (method_needs_text(opt.method)) {
    const rle::EmbeddingMatrix u = word_vectors(opt, in);
    d = compute_embedding(opt, in, &u);
  } else {
    d = compute_embedding(opt, in, nullptr);
  }
  fs::create_directories(opt.out);
  const std::string out_path = (fs::path(opt.out) / "embeddings.vec").string();
  rle::save_vectors(d, out_path);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(opt, "embed", secs);
  std::cout << "wrote " << out_path << " (" << d.size() << " x " << d.dim() << ")\n";
  return 0;
}

int cmd_eval_classify(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Inputs in = load_inputs(opt, /*need_labels=*/true);
  rle::EmbeddingMatrix d;
  if (method_needs_text(opt.method)) {
    const rle::EmbeddingMatrix u = word_vectors(opt, in);
    d = compute_embedding(opt, in, &u);
  } else {
    d = compute_embedding(opt, in, nullptr);
  }

  std::vector<rle::ReportRow> rows;
  for (const double ratio : opt.ratios) {
    rle::SplitSpec spec;
    spec.train_ratio = ratio;
    spec.n_repeats = opt.repeats;
    spec.seed = opt.seed;
    const rle::EvalReport rep = rle::classification_experiment(
        d, in.corpus.labels, spec, rle::default_l2_grid(), 4, opt.workers);
    rows.push_back({rep.task, opt.method, ratio, 100.0 * rep.mean, 100.0 * rep.stddev,
                    rep.wall_time_seconds});
    std::cout << "classification ratio " << ratio << ": micro-F1 " << 100.0 * rep.mean
              << " (" << 100.0 * rep.stddev << ")\n";
  }
  fs::create_directories(opt.out);
  rle::write_report_csv((fs::path(opt.out) / "classification_report.csv").string(), rows);
  rle::write_report_text((fs::path(opt.out) / "classification_report.txt").string(), rows);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(opt, "eval-classify", secs);
  return 0;
}

int cmd_eval_linkpred(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Options graph_opt = opt;
  if (graph_opt.edges.empty()) {
    throw rle::ConfigError("eval-linkpred requires --edges");
  }
  const Inputs in = load_inputs(graph_opt, /*need_labels=*/false);
  if (!in.edges) throw rle::ConfigError("eval-linkpred requires --edges");

  std::optional<rle::EmbeddingMatrix> u;
  if (method_needs_text(opt.method)) u = word_vectors(opt, in);

  // Text-only methods do not see the graph; compute them once.
  std::optional<rle::EmbeddingMatrix> fixed;
  if (opt.method == "word_average") fixed = word_average(in, *u, opt.workers);
  if (opt.method == "lsa") {
    fixed = rle::lsa(in.counts, in.corpus.doc_ids, opt.dim, false, opt.seed, opt.workers);
  }

  const auto embed_fn = [&](const rle::EdgeList& visible) -> rle::EmbeddingMatrix {
    if (opt.method == "rle") return rle::embed(in.corpus, visible, *u, rle_config(opt));
    if (opt.method == "deepwalk") {
      return rle::deepwalk(visible, in.corpus.doc_ids, deepwalk_config(opt, opt.dim));
    }
    if (opt.method == "concat") {
      const std::size_t half = opt.dim / 2;
      const rle::EmbeddingMatrix dw =
          rle::deepwalk(visible, in.corpus.doc_ids, deepwalk_config(opt, half));
      const rle::EmbeddingMatrix ls = rle::lsa(in.counts, in.corpus.doc_ids,
                                               opt.dim - half, false, opt.seed, opt.workers);
      return rle::concatenate(ls, dw);
    }
    if (fixed) return *fixed;
    throw rle::ConfigError("unknown method '" + opt.method + "'");
  };

  std::vector<rle::ReportRow> rows;
  for (const double ratio : opt.hide_ratios) {
    const rle::EvalReport rep =
        rle::link_prediction_experiment_fn(embed_fn, *in.edges, ratio, opt.repeats, opt.seed);
    rows.push_back({rep.task, opt.method, ratio, 100.0 * rep.mean, 100.0 * rep.stddev,
                    rep.wall_time_seconds});
    std::cout << "link prediction, " << 100.0 * ratio << "% hidden: AUC " << 100.0 * rep.mean
              << " (" << 100.0 * rep.stddev << ")\n";
  }
  fs::create_directories(opt.out);
  rle::write_report_csv((fs::path(opt.out) / "linkpred_report.csv").string(), rows);
  rle::write_report_text((fs::path(opt.out) / "linkpred_report.txt").string(), rows);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(opt, "eval-linkpred", secs);
  return 0;
}

int cmd_sweep(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Options sweep_opt = opt;
  sweep_opt.method = "rle";  // the sweep is over the smoothing parameter
  const Inputs in = load_inputs(sweep_opt, /*need_labels=*/true);
  const rle::EmbeddingMatrix u = word_vectors(opt, in);

  std::vector<double> grid = opt.grid;
  if (grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(static_cast<double>(i) * 0.05);
  }
  rle::SplitSpec spec;
  spec.train_ratio = opt.ratios.empty() ? 0.5 : opt.ratios.back();
  spec.n_repeats = opt.repeats;
  spec.seed = opt.seed;
  const auto curve =
      rle::lambda_sweep(in.corpus, *in.edges, u, grid, spec, rle_config(opt), opt.workers);

  fs::create_directories(opt.out);
  const std::string csv_path = (fs::path(opt.out) / "lambda_sweep.csv").string();
  {
    std::ofstream out(csv_path);
    if (!out) throw rle::DataError("cannot write " + csv_path);
    out << "lambda,mean,stddev\n";
    char buf[96];
    for (const auto& pt : curve) {
      std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f\n", pt.lambda, 100.0 * pt.mean,
                    100.0 * pt.stddev);
      out << buf;
    }
  }
  for (const auto& pt : curve) {
    std::cout << "lambda " << pt.lambda << ": micro-F1 " << 100.0 * pt.mean << " ("
              << 100.0 * pt.stddev << ")\n";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(opt, "sweep", secs);
  return 0;
}

int cmd_keywords(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.method != "rle" && opt.method != "word_average") {
    throw rle::ConfigError(
        "keywords requires a method living in word space (rle or word_average)");
  }
  const Inputs in = load_inputs(opt, /*need_labels=*/true);
  const rle::EmbeddingMatrix u = word_vectors(opt, in);
  const rle::EmbeddingMatrix d = compute_embedding(opt, in, &u);

  fs::create_directories(opt.out);
  const std::string txt_path = (fs::path(opt.out) / "keywords.txt").string();
  const std::string csv_path = (fs::path(opt.out) / "keywords.csv").string();
  std::ofstream txt(txt_path);
  std::ofstream csv(csv_path);
  if (!txt || !csv) throw rle::DataError("cannot write keyword tables in " + opt.out);
  csv << "class,rank,rle_word,rle_score,tfidf_word,tfidf_weight\n";
  char buf[256];

  for (std::size_t c = 0; c < in.corpus.n_classes(); ++c) {
    const auto centroid = rle::class_centroid(d, in.corpus.labels, static_cast<int>(c));
    const auto near = rle::nearest_words(centroid, u, opt.top_k);
    const auto tfidf = rle::tfidf_class_terms(in.counts, in.vocab, in.corpus.labels,
                                              static_cast<int>(c), opt.top_k);
    txt << "class " << in.corpus.class_names[c] << "\n";
    txt << "  rle            | tfidf\n";
    for (std::size_t r = 0; r < opt.top_k; ++r) {
      const std::string rw = r < near.size() ? near[r].word : "";
      const std::string tw = r < tfidf.size() ? tfidf[r].word : "";
      std::snprintf(buf, sizeof(buf), "  %-14s | %s\n", rw.c_str(), tw.c_str());
      txt << buf;
      std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.6f,%s,%.6f\n",
                    in.corpus.class_names[c].c_str(), r + 1, rw.c_str(),
                    r < near.size() ? near[r].score : 0.0, tw.c_str(),
                    r < tfidf.size() ? tfidf[r].score : 0.0);
      csv << buf;
    }
    txt << "\n";
  }
  txt.close();
  csv.close();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(opt, "keywords", secs);
  std::cout << "wrote " << txt_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document network embedding by similarity-smoothed word averaging"};
  app.fallthrough();
  Options opt;

  app.set_config("--config", "", "key=value config file; command-line flags win");
  app.add_option("--docs", opt.docs, "documents file: doc_id<TAB>text per line");
  app.add_option("--edges", opt.edges, "edges file: src_doc_id<TAB>dst_doc_id per line");
  app.add_option("--labels", opt.labels, "labels file: doc_id<TAB>label per line");
  app.add_option("--stopwords", opt.stopwords, "stopwords file: one lowercase token per line");
  app.add_option("--vectors", opt.vectors, "pretrained word vectors (word2vec text format)");
  app.add_option("--out", opt.out, "output directory");
  app.add_option("--method", opt.method, "rle|word_average|deepwalk|lsa|concat");
  app.add_option("--lambda", opt.lambda, "smoothing intensity in [0,1]");
  app.add_option("--dim", opt.dim, "embedding dimension");
  app.add_option("--window", opt.window, "SGNS context window");
  app.add_option("--negatives", opt.negatives, "SGNS negative samples per pair");
  app.add_option("--epochs", opt.epochs, "SGNS training epochs");
  app.add_option("--learning-rate", opt.learning_rate, "SGNS initial learning rate");
  app.add_option("--subsample", opt.subsample, "SGNS frequent-token subsampling threshold");
  app.add_option("--min-count", opt.min_count, "prune terms with fewer total occurrences");
  app.add_option("--max-df", opt.max_df, "prune terms in more than this share of documents");
  app.add_option("--dw-walks", opt.dw_walks, "DeepWalk walks per node");
  app.add_option("--dw-length", opt.dw_length, "DeepWalk walk length");
  app.add_option("--dw-window", opt.dw_window, "DeepWalk SGNS window");
  app.add_option("--ratios", opt.ratios, "train ratios for eval-classify")->delimiter(',');
  app.add_option("--hide-ratios", opt.hide_ratios, "hidden-edge ratios for eval-linkpred")
      ->delimiter(',');
  app.add_option("--grid", opt.grid, "lambda grid for sweep")->delimiter(',');
  app.add_option("--repeats", opt.repeats, "number of repeated splits per setting");
  app.add_option("--top-k", opt.top_k, "keywords per class");
  app.add_option("--seed", opt.seed, "global random seed");
  app.add_option("--workers", opt.workers, "worker threads (1 = deterministic)");
  app.add_flag("--directed", opt.directed, "treat edges as directed (no symmetrization)");

  CLI::App* embed = app.add_subcommand("embed", "write document embeddings");
  CLI::App* classify = app.add_subcommand("eval-classify", "classification experiment");
  CLI::App* linkpred = app.add_subcommand("eval-linkpred", "link prediction experiment");
  CLI::App* sweep = app.add_subcommand("sweep", "micro-F1 as a function of lambda");
  CLI::App* keywords = app.add_subcommand("keywords", "per-class keyword tables");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (embed->parsed()) return cmd_embed(opt);
    if (classify->parsed()) return cmd_eval_classify(opt);
    if (linkpred->parsed()) return cmd_eval_linkpred(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (keywords->parsed()) return cmd_keywords(opt);
    std::cerr << "error: no subcommand given\n";
    return 2;
  } catch (const rle::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rle::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
