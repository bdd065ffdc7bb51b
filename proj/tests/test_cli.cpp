#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* bin = std::getenv("RLE_BIN");
    ASSERT_NE(bin, nullptr) << "RLE_BIN must point at the rle binary";
    bin_ = bin;
    dir_ = fs::temp_directory_path() / ("rle_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_toy_dataset();
  }

  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  void write_toy_dataset() {
    const std::vector<std::vector<std::string>> topics = {
        {"kernel", "matrix", "sparse", "solver", "numeric"},
        {"syntax", "parser", "grammar", "corpus", "token"},
        {"router", "packet", "network", "socket", "latency"}};
    std::ofstream docs(dir_ / "docs.tsv");
    std::ofstream labels(dir_ / "labels.tsv");
    std::ofstream edges(dir_ / "edges.tsv");
    int doc = 0;
    for (std::size_t t = 0; t < topics.size(); ++t) {
      const int base = doc;
      for (int i = 0; i < 6; ++i, ++doc) {
        docs << 'd' << doc << '\t';
        for (int rep = 0; rep < 2; ++rep) {
          for (const auto& w : topics[t]) docs << w << ' ';
        }
        docs << "shared common words\n";
        labels << 'd' << doc << "\ttopic" << t << '\n';
        edges << 'd' << base + i << "\td" << base + (i + 1) % 6 << '\n';
      }
    }
    std::ofstream stops(dir_ / "stopwords.txt");
    stops << "shared\ncommon\nwords\n";
  }

  RunResult run(const std::string& args) {
    const fs::path out_file = dir_ / "stdout.log";
    const fs::path err_file = dir_ / "stderr.log";
    const std::string cmd =
        bin_ + " " + args + " >" + out_file.string() + " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
  }

  std::string common_flags() const {
    return "--docs " + (dir_ / "docs.tsv").string() + " --edges " +
           (dir_ / "edges.tsv").string() + " --labels " + (dir_ / "labels.tsv").string() +
           " --stopwords " + (dir_ / "stopwords.txt").string() +
           " --min-count 1 --max-df 1.0 --dim 8 --window 3 --epochs 3 --seed 7 --workers 1";
  }

  std::string bin_;
  fs::path dir_;
};

}  // namespace

TEST_F(CliFixture, EmbedWritesVectorsAndManifest) {
  const fs::path out = dir_ / "out_embed";
  const RunResult r = run("embed " + common_flags() + " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "embeddings.vec"));
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));
  const std::string manifest = slurp(out / "manifest.txt");
  EXPECT_NE(manifest.find("command = embed"), std::string::npos);
  EXPECT_NE(manifest.find("seed = 7"), std::string::npos);
  EXPECT_NE(manifest.find("wall_time_seconds"), std::string::npos);

  const std::string header = slurp(out / "embeddings.vec").substr(0, 5);
  EXPECT_EQ(header, "18 8\n");
}

TEST_F(CliFixture, EmbedRerunIsByteIdentical) {
  const fs::path out1 = dir_ / "det1";
  const fs::path out2 = dir_ / "det2";
  ASSERT_EQ(run("embed " + common_flags() + " --out " + out1.string()).exit_code, 0);
  ASSERT_EQ(run("embed " + common_flags() + " --out " + out2.string()).exit_code, 0);
  EXPECT_EQ(slurp(out1 / "embeddings.vec"), slurp(out2 / "embeddings.vec"));
}

TEST_F(CliFixture, LambdaZeroEqualsWordAverage) {
  const fs::path out1 = dir_ / "lz";
  const fs::path out2 = dir_ / "wa";
  ASSERT_EQ(
      run("embed " + common_flags() + " --lambda 0 --out " + out1.string()).exit_code, 0);
  ASSERT_EQ(run("embed " + common_flags() + " --method word_average --out " + out2.string())
                .exit_code,
            0);
  EXPECT_EQ(slurp(out1 / "embeddings.vec"), slurp(out2 / "embeddings.vec"));
}

TEST_F(CliFixture, MissingEdgeFileExitsTwoAndNamesPath) {
  const std::string missing = (dir_ / "no_such_edges.tsv").string();
  const RunResult r = run("embed --docs " + (dir_ / "docs.tsv").string() + " --edges " +
                          missing + " --min-count 1 --max-df 1.0 --out " +
                          (dir_ / "oops").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliFixture, UnknownMethodExitsTwo) {
  const RunResult r =
      run("embed " + common_flags() + " --method nonsense --out " + (dir_ / "x").string());
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliFixture, EvalClassifySingleRatioReport) {
  const fs::path out = dir_ / "out_cls";
  const RunResult r = run("eval-classify " + common_flags() +
                          " --ratios 0.5 --repeats 2 --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(out / "classification_report.csv");
  std::istringstream lines(csv);
  std::string header, row, extra;
  ASSERT_TRUE(static_cast<bool>(std::getline(lines, header)));
  EXPECT_EQ(header, "task,method,ratio,mean,stddev,seconds");
  ASSERT_TRUE(static_cast<bool>(std::getline(lines, row)));
  EXPECT_EQ(row.rfind("classification,rle,0.50,", 0), 0u) << row;
  EXPECT_FALSE(static_cast<bool>(std::getline(lines, extra)));
  EXPECT_TRUE(fs::exists(out / "classification_report.txt"));
}

TEST_F(CliFixture, EvalClassifyRerunMatchesModuloSeconds) {
  const fs::path out1 = dir_ / "cls1";
  const fs::path out2 = dir_ / "cls2";
  const std::string args = "eval-classify " + common_flags() + " --ratios 0.3 --repeats 2";
  ASSERT_EQ(run(args + " --out " + out1.string()).exit_code, 0);
  ASSERT_EQ(run(args + " --out " + out2.string()).exit_code, 0);
  const auto strip_seconds = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, kept;
    while (std::getline(in, line)) {
      kept += line.substr(0, line.rfind(','));
      kept += '\n';
    }
    return kept;
  };
  EXPECT_EQ(strip_seconds(slurp(out1 / "classification_report.csv")),
            strip_seconds(slurp(out2 / "classification_report.csv")));
}

TEST_F(CliFixture, EvalLinkpredReport) {
  const fs::path out = dir_ / "out_lp";
  const RunResult r = run("eval-linkpred " + common_flags() +
                          " --hide-ratios 0.25 --repeats 2 --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(out / "linkpred_report.csv");
  EXPECT_NE(csv.find("link_prediction,rle,0.25,"), std::string::npos) << csv;
}

TEST_F(CliFixture, SweepGridEndpointsPresent) {
  const fs::path out = dir_ / "out_sweep";
  const RunResult r = run("sweep " + common_flags() +
                          " --grid 0,0.5,1 --ratios 0.5 --repeats 2 --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(out / "lambda_sweep.csv");
  EXPECT_NE(csv.find("\n0.0000,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n0.5000,"), std::string::npos);
  EXPECT_NE(csv.find("\n1.0000,"), std::string::npos);
}

TEST_F(CliFixture, SweepSinglePointGrid) {
  const fs::path out = dir_ / "out_sweep1";
  const RunResult r = run("sweep " + common_flags() +
                          " --grid 0.7 --ratios 0.5 --repeats 2 --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream lines(slurp(out / "lambda_sweep.csv"));
  std::string header, row, extra;
  EXPECT_TRUE(static_cast<bool>(std::getline(lines, header)));
  EXPECT_TRUE(static_cast<bool>(std::getline(lines, row)));
  EXPECT_FALSE(static_cast<bool>(std::getline(lines, extra)));
}

TEST_F(CliFixture, KeywordsOneTablePerClass) {
  const fs::path out = dir_ / "out_kw";
  const RunResult r = run("keywords " + common_flags() + " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string txt = slurp(out / "keywords.txt");
  EXPECT_NE(txt.find("class topic0"), std::string::npos);
  EXPECT_NE(txt.find("class topic1"), std::string::npos);
  EXPECT_NE(txt.find("class topic2"), std::string::npos);

  // default top_k of 5 rows per class in the csv
  const std::string csv = slurp(out / "keywords.csv");
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 1 + 3 * 5);
}

TEST_F(CliFixture, ConfigFileFlagsWin) {
  const fs::path cfg = dir_ / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "lambda=0.2\nseed=7\n";
  }
  const fs::path out1 = dir_ / "cfg1";
  const fs::path out2 = dir_ / "cfg2";
  // config-provided lambda
  ASSERT_EQ(run("embed " + common_flags() + " --config " + cfg.string() + " --out " +
                out1.string())
                .exit_code,
            0);
  // explicit flag overrides the config value
  ASSERT_EQ(run("embed " + common_flags() + " --config " + cfg.string() +
                " --lambda 0.2 --out " + out2.string())
                .exit_code,
            0);
  EXPECT_EQ(slurp(out1 / "embeddings.vec"), slurp(out2 / "embeddings.vec"));
  const std::string manifest = slurp(out1 / "manifest.txt");
  EXPECT_NE(manifest.find("lambda = 0.2"), std::string::npos) << manifest;
}
