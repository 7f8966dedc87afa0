#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("c2f_cli_" + std::to_string(std::random_device{}()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  CliRun run(const std::string& args) const {
    const auto out = path("stdout.txt");
    const auto err = path("stderr.txt");
    const std::string cmd =
        std::string("'") + C2F_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  void generate(const std::string& stem, const std::string& extra = "") const {
    const auto r = run("--seed 7 gen-synthetic --docs 6 --blocks 4 --sentences-per-block 6 --noise 0.1 " + extra +
                       " --out-corpus '" + path(stem + ".jsonl").string() + "' --out-embeddings '" +
                       path(stem + ".c2fe").string() + "'");
    ASSERT_EQ(r.status, 0) << r.err;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, Version) {
  const auto r = run("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, GenSyntheticIsByteIdentical) {
  generate("a");
  generate("b");
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
  EXPECT_EQ(slurp(path("a.c2fe")), slurp(path("b.c2fe")));
  EXPECT_FALSE(slurp(path("a.c2fe")).empty());
}

TEST_F(CliTest, SummarizeDeterministicAcrossRunsAndJobs) {
  generate("c");
  const std::string base = "summarize --corpus '" + path("c.jsonl").string() + "' --embeddings '" +
                           path("c.c2fe").string() + "' --k 3 --trace";
  const auto a = run(base);
  const auto b = run(base);
  const auto c = run("--jobs 4 " + base);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);

  std::istringstream lines(a.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = json::parse(line);
    EXPECT_EQ(j["id"], "syn-7-" + std::to_string(count));
    EXPECT_EQ(j["summary_ids"].size(), 3u);
    EXPECT_EQ(j["summary"].size(), 3u);
    EXPECT_TRUE(j.contains("trace"));
    ++count;
  }
  EXPECT_EQ(count, 6u);
}

TEST_F(CliTest, SummarizeWithHashEmbeddings) {
  generate("h");
  const auto r = run("summarize --corpus '" + path("h.jsonl").string() + "' --system textrank-emb --k 2");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out.substr(0, r.out.find('\n')))["summary_ids"].size(), 2u);
}

TEST_F(CliTest, SegmentOutputFields) {
  generate("s");
  const auto r = run("segment --corpus '" + path("s.jsonl").string() + "' --embeddings '" +
                     path("s.c2fe").string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out.substr(0, r.out.find('\n')));
  for (const char* key : {"id", "boundaries", "blocks", "epsilon", "depth_scores"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["depth_scores"].size(), 23u);
}

TEST_F(CliTest, EvaluateAndBench) {
  generate("e");
  const std::string files =
      "--corpus '" + path("e.jsonl").string() + "' --embeddings '" + path("e.c2fe").string() + "'";
  const auto ev = run("evaluate " + files + " --system oracle --k 4 --per-doc '" + path("per.jsonl").string() + "'");
  ASSERT_EQ(ev.status, 0) << ev.err;
  const auto agg = json::parse(ev.out);
  EXPECT_GT(agg["rouge1"]["f1"].get<double>(), 0.5);
  EXPECT_TRUE(agg.contains("mean_facet_count"));
  EXPECT_FALSE(slurp(path("per.jsonl")).empty());

  const auto b = run("bench " + files + " --repeats 2");
  ASSERT_EQ(b.status, 0) << b.err;
  EXPECT_FALSE(b.out.empty());
  EXPECT_NO_THROW(json::parse(b.out));
}

TEST_F(CliTest, ErrorsAreJsonOnStderr) {
  const auto r = run("summarize --corpus '" + path("missing.jsonl").string() + "'");
  EXPECT_NE(r.status, 0);
  const auto j = json::parse(r.err);
  EXPECT_EQ(j["error"]["kind"], "io");
  EXPECT_TRUE(r.out.empty());

  generate("m");
  const auto bad = run("summarize --corpus '" + path("m.jsonl").string() + "' --embeddings '" +
                       path("missing.c2fe").string() + "'");
  EXPECT_NE(bad.status, 0);
  EXPECT_TRUE(json::parse(bad.err).contains("error"));

  const auto sys = run("summarize --corpus '" + path("m.jsonl").string() + "' --system nope");
  EXPECT_NE(sys.status, 0);
  EXPECT_EQ(json::parse(sys.err)["error"]["kind"], "invalid_argument");
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  generate("p");
  std::ofstream(path("cfg.json")) << R"({"k": 2, "alpha": 1.0})";
  const std::string base = "summarize --corpus '" + path("p.jsonl").string() + "' --embeddings '" +
                           path("p.c2fe").string() + "'";
  const auto from_cfg = run("--config '" + path("cfg.json").string() + "' " + base);
  ASSERT_EQ(from_cfg.status, 0) << from_cfg.err;
  EXPECT_EQ(json::parse(from_cfg.out.substr(0, from_cfg.out.find('\n')))["summary_ids"].size(), 2u);
  const auto flag = run("--config '" + path("cfg.json").string() + "' " + base + " --k 4");
  ASSERT_EQ(flag.status, 0) << flag.err;
  EXPECT_EQ(json::parse(flag.out.substr(0, flag.out.find('\n')))["summary_ids"].size(), 4u);

  std::ofstream(path("bad.json")) << R"({"kk": 2})";
  EXPECT_NE(run("--config '" + path("bad.json").string() + "' " + base).status, 0);
}
