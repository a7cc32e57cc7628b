#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcsim/commands.hpp"

using namespace rcsim;

namespace {

namespace fs = std::filesystem;

std::string minibench(const std::string& name) {
  return std::string(RCSIM_DATA_DIR) + "/minibench/" + name;
}

struct TempDir {
  TempDir() {
    path = (fs::temp_directory_path() / ("rcsim_cmd_" + std::to_string(counter++))).string();
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return path + "/" + name; }
  std::string path;
  static inline int counter = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

SimulatePaperOptions paper_options(const TempDir& dir, AggMode mode = AggMode::Global) {
  SimulatePaperOptions options;
  options.task_file = minibench("paper_tasks.jsonl");
  options.out_file = dir.file("results.jsonl");
  options.stage.mode = mode;
  return options;
}

}  // namespace

TEST_CASE("simulate-paper over the mini-bench") {
  TempDir dir;
  std::ostringstream diag;
  SimulatePaperOptions options = paper_options(dir);
  CHECK(cmd_simulate_paper(options, diag) == kExitOk);

  std::string contents = slurp(options.out_file);
  CHECK(count_lines(contents) == 6);  // manifest + 5 records
  CHECK(contents.find("\"record-kind\":\"manifest\"") != std::string::npos);
  CHECK(contents.find("\"tool-version\":\"0.1.0\"") != std::string::npos);

  auto records = load_results(options.out_file);
  REQUIRE(records.size() == 5);
  for (const auto& r : records) {
    CHECK(r.kind == "paper");
    CHECK(r.mode == "global");
    CHECK(r.paper.has_value());
    CHECK(!r.error.has_value());
    CHECK(r.started_at_ms == 0);  // mock clock
  }
}

TEST_CASE("simulate-paper is re-runnable byte-for-byte") {
  TempDir dir;
  std::ostringstream diag;
  SimulatePaperOptions options = paper_options(dir);
  options.common.jobs = 3;  // concurrency must not leak into the output
  std::string input_before = slurp(options.task_file);
  CHECK(cmd_simulate_paper(options, diag) == kExitOk);
  std::string first = slurp(options.out_file);
  CHECK(cmd_simulate_paper(options, diag) == kExitOk);
  CHECK(slurp(options.out_file) == first);
  CHECK(slurp(options.task_file) == input_before);  // inputs never mutated
}

TEST_CASE("simulate-paper partial failure exits 2") {
  TempDir dir;
  std::ofstream tasks(dir.file("tasks.jsonl"));
  tasks << R"({"task-id":"ok","target-title":"t","reference-introduction":"i",)"
        << R"("authors":[{"name":"a","publications":["p"]}],)"
        << R"("cited-papers":[{"abstract":"c"}]})" << "\n";
  tasks << R"({"task-id":"zero-authors","target-title":"t","reference-introduction":"i",)"
        << R"("authors":[],"cited-papers":[{"abstract":"c"}]})" << "\n";
  tasks.close();

  std::ostringstream diag;
  SimulatePaperOptions options;
  options.task_file = dir.file("tasks.jsonl");
  options.out_file = dir.file("out.jsonl");
  options.stage.mode = AggMode::Agent;
  CHECK(cmd_simulate_paper(options, diag) == kExitPartialFailure);

  auto records = load_results(options.out_file);
  REQUIRE(records.size() == 2);
  CHECK(!records[0].error.has_value());
  REQUIRE(records[1].error.has_value());
  CHECK(records[1].error->find("no agent neighbors") != std::string::npos);
}

TEST_CASE("simulate-paper usage errors") {
  std::ostringstream diag;
  SimulatePaperOptions options;
  options.task_file = "/nonexistent/tasks.jsonl";
  options.out_file = "/tmp/never-written.jsonl";
  CHECK(cmd_simulate_paper(options, diag) == kExitUsage);

  TempDir dir;
  SimulatePaperOptions bad_cap = paper_options(dir);
  bad_cap.stage.max_agents = 0;
  CHECK(cmd_simulate_paper(bad_cap, diag) == kExitUsage);
}

TEST_CASE("http backend without a credential is unavailable") {
  TempDir dir;
  std::ostringstream diag;
  SimulatePaperOptions options = paper_options(dir);
  options.common.backend.kind = BackendKind::HttpApi;
  options.common.backend.credential_env_var = "RCSIM_TEST_UNSET_KEY_VAR";
  CHECK(cmd_simulate_paper(options, diag) == kExitBackendUnavailable);
}

TEST_CASE("simulate-review over the mini-bench") {
  TempDir dir;
  std::ostringstream diag;
  SimulateReviewOptions options;
  options.task_file = minibench("review_tasks.jsonl");
  options.out_file = dir.file("reviews.jsonl");
  options.stage.mode = AggMode::Global;
  options.reviewers = 5;
  CHECK(cmd_simulate_review(options, diag) == kExitOk);

  auto records = load_results(options.out_file);
  REQUIRE(records.size() == 2);
  for (const auto& r : records) {
    CHECK(r.kind == "review");
    REQUIRE(r.review.has_value());
    CHECK(r.review->score >= 1);
    CHECK(r.review->score <= 10);
    CHECK(!r.review->strengths.empty());
    CHECK(!r.review->weaknesses.empty());
  }

  SUBCASE("re-running reproduces the file, including reviewer matching") {
    std::string first = slurp(options.out_file);
    CHECK(cmd_simulate_review(options, diag) == kExitOk);
    CHECK(slurp(options.out_file) == first);
  }
  SUBCASE("reviewer count must be positive") {
    options.reviewers = 0;
    CHECK(cmd_simulate_review(options, diag) == kExitUsage);
  }
}

TEST_CASE("evaluate paper results") {
  TempDir dir;
  std::ostringstream diag;
  SimulatePaperOptions sim = paper_options(dir);
  sim.common.cache_dir = dir.file("cache");
  REQUIRE(cmd_simulate_paper(sim, diag) == kExitOk);

  EvaluateOptions eval;
  eval.results_file = sim.out_file;
  eval.tasks_file = sim.task_file;
  eval.out_prefix = dir.file("eval");
  eval.common.cache_dir = dir.file("cache");
  CHECK(cmd_evaluate(eval, diag) == kExitOk);

  auto records = load_results(dir.file("eval") + ".records.jsonl");
  REQUIRE(records.size() == 5);
  for (const auto& r : records) {
    REQUIRE(r.paper_metrics.has_value());
    CHECK(r.paper_metrics->overall >= 0.0);
    CHECK(r.paper_metrics->overall <= 1.0);
  }
  std::string report = slurp(dir.file("eval") + ".report.txt");
  CHECK(report.find("paper-writing") != std::string::npos);
  CHECK(report.find("difficulty=") != std::string::npos);
  CHECK(report.find("overall") != std::string::npos);
  CHECK(count_lines(slurp(dir.file("eval") + ".report.jsonl")) >= 2);

  SUBCASE("transform cache is populated and reused") {
    CHECK(!fs::is_empty(dir.file("cache")));
    CHECK(cmd_evaluate(eval, diag) == kExitOk);  // second run hits the cache
  }
}

TEST_CASE("evaluate: identical generated and reference scores 1.0") {
  TempDir dir;
  std::ofstream tasks(dir.file("tasks.jsonl"));
  tasks << R"({"task-id":"t1","target-title":"x","reference-5q":["a1","a2","a3","a4","a5"],)"
        << R"("authors":[{"name":"n","publications":["p"]}]})" << "\n";
  tasks.close();
  std::ofstream results(dir.file("results.jsonl"));
  results << R"({"task-id":"t1","kind":"paper","mode":"global",)"
          << R"("paper-5q":["a1","a2","a3","a4","a5"],"trace-digest":"x",)"
          << R"("started-at":0,"finished-at":0})" << "\n";
  results.close();

  std::ostringstream diag;
  EvaluateOptions eval;
  eval.results_file = dir.file("results.jsonl");
  eval.tasks_file = dir.file("tasks.jsonl");
  eval.out_prefix = dir.file("eval");
  REQUIRE(cmd_evaluate(eval, diag) == kExitOk);

  auto records = load_results(dir.file("eval") + ".records.jsonl");
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].paper_metrics.has_value());
  CHECK(records[0].paper_metrics->overall == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("evaluate: missing reference marks the row unevaluated") {
  TempDir dir;
  std::ofstream tasks(dir.file("tasks.jsonl"));
  tasks << R"({"task-id":"known","target-title":"x","reference-5q":["a","b","c","d","e"],)"
        << R"("authors":[{"name":"n","publications":["p"]}]})" << "\n";
  tasks.close();
  std::ofstream results(dir.file("results.jsonl"));
  results << R"({"task-id":"unknown","kind":"paper","mode":"self",)"
          << R"("paper-5q":["a","b","c","d","e"],"trace-digest":"x",)"
          << R"("started-at":0,"finished-at":0})" << "\n";
  results.close();

  std::ostringstream diag;
  EvaluateOptions eval;
  eval.results_file = dir.file("results.jsonl");
  eval.tasks_file = dir.file("tasks.jsonl");
  eval.out_prefix = dir.file("eval");
  CHECK(cmd_evaluate(eval, diag) == kExitOk);  // not an error

  auto records = load_results(dir.file("eval") + ".records.jsonl");
  REQUIRE(records.size() == 1);
  CHECK(!records[0].paper_metrics.has_value());
  CHECK(records[0].extra.contains("unevaluated"));
}

TEST_CASE("evaluate review results with judge disabled and enabled") {
  TempDir dir;
  std::ostringstream diag;
  SimulateReviewOptions sim;
  sim.task_file = minibench("review_tasks.jsonl");
  sim.out_file = dir.file("reviews.jsonl");
  sim.stage.mode = AggMode::Agent;
  REQUIRE(cmd_simulate_review(sim, diag) == kExitOk);

  EvaluateOptions eval;
  eval.results_file = sim.out_file;
  eval.tasks_file = sim.task_file;
  eval.out_prefix = dir.file("eval");
  CHECK(cmd_evaluate(eval, diag) == kExitOk);

  auto records = load_results(dir.file("eval") + ".records.jsonl");
  REQUIRE(records.size() == 2);
  for (const auto& r : records) {
    REQUIRE(r.review_metrics.has_value());
    CHECK(r.review_metrics->strength >= 0.0);
    CHECK(r.review_metrics->delta_score >= 0.0);
  }
  std::string report = slurp(dir.file("eval") + ".report.txt");
  CHECK(report.find("review-writing") != std::string::npos);
  CHECK(report.find("delta-score") != std::string::npos);
}

TEST_CASE("evaluate with the fine-grained judge") {
  TempDir dir;
  std::ostringstream diag;
  SimulatePaperOptions sim = paper_options(dir, AggMode::Self);
  REQUIRE(cmd_simulate_paper(sim, diag) == kExitOk);

  EvaluateOptions eval;
  eval.results_file = sim.out_file;
  eval.tasks_file = sim.task_file;
  eval.out_prefix = dir.file("eval");
  eval.judge = true;
  CHECK(cmd_evaluate(eval, diag) == kExitOk);

  auto records = load_results(dir.file("eval") + ".records.jsonl");
  for (const auto& r : records) {
    REQUIRE(r.judge.has_value());
    CHECK(r.judge->overall_similarity >= 0);
    CHECK(r.judge->overall_similarity <= 10);
  }
}

TEST_CASE("binary exit codes") {
  auto run = [](const std::string& args) {
    std::string cmd = std::string(RCSIM_BINARY_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };

  CHECK(run("--version") == 0);
  CHECK(run("simulate-paper") == kExitUsage);                       // missing args
  CHECK(run("frobnicate") == kExitUsage);                           // unknown subcommand
  CHECK(run("simulate-paper tasks.jsonl --out o --max-agents 0") == kExitUsage);
  CHECK(run("ablate " + minibench("paper_tasks.jsonl") +
            " --axis batch-size --values 1 --out /tmp/rcsim_cli_ab") == kExitUsage);

  TempDir dir;
  std::string ok_args = "simulate-paper " + minibench("paper_tasks.jsonl") + " --out " +
                        dir.file("out.jsonl") + " --mode data";
  CHECK(run(ok_args) == 0);
  CHECK(fs::exists(dir.file("out.jsonl")));
}

TEST_CASE("config file keys are read and flags override them") {
  TempDir dir;
  std::ofstream config(dir.file("rcsim.conf"));
  config << "# backend settings\n";
  config << "backend=mock\n";
  config << "concurrency-limit=2\n";
  config << "jobs=1\n";
  config.close();

  auto run = [](const std::string& args) {
    std::string cmd = std::string(RCSIM_BINARY_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  std::string args = "simulate-paper " + minibench("paper_tasks.jsonl") + " --out " +
                     dir.file("out.jsonl") + " --config " + dir.file("rcsim.conf");
  CHECK(run(args) == 0);
  auto records = load_results(dir.file("out.jsonl"));
  CHECK(records.size() == 5);
}

TEST_CASE("ablate") {
  TempDir dir;
  std::ostringstream diag;

  SUBCASE("agents axis produces one report per value") {
    AblateOptions options;
    options.task_file = minibench("paper_tasks.jsonl");
    options.axis = "agents";
    options.values = {"1", "2"};
    options.out_prefix = dir.file("ab");
    CHECK(cmd_ablate(options, diag) == kExitOk);
    CHECK(fs::exists(dir.file("ab") + "-agents-1.report.txt"));
    CHECK(fs::exists(dir.file("ab") + "-agents-2.report.txt"));
    CHECK(slurp(dir.file("ab") + "-agents-1.report.txt") !=
          slurp(dir.file("ab") + "-agents-2.report.txt"));
  }
  SUBCASE("papers axis sweeps section filters") {
    AblateOptions options;
    options.task_file = minibench("paper_tasks.jsonl");
    options.axis = "papers";
    options.values = {"related-work", "introduction", "other"};
    options.out_prefix = dir.file("ab");
    options.stage.mode = AggMode::Data;
    CHECK(cmd_ablate(options, diag) == kExitOk);
    CHECK(fs::exists(dir.file("ab") + "-papers-related-work.report.txt"));
    CHECK(fs::exists(dir.file("ab") + "-papers-introduction.report.txt"));
    CHECK(fs::exists(dir.file("ab") + "-papers-other.report.txt"));
  }
  SUBCASE("unknown axis is a usage error") {
    AblateOptions options;
    options.task_file = minibench("paper_tasks.jsonl");
    options.axis = "batch-size";
    options.values = {"1"};
    options.out_prefix = dir.file("ab");
    CHECK(cmd_ablate(options, diag) == kExitUsage);
  }
  SUBCASE("bad axis values are usage errors") {
    AblateOptions options;
    options.task_file = minibench("paper_tasks.jsonl");
    options.axis = "agents";
    options.values = {"0"};
    options.out_prefix = dir.file("ab");
    CHECK(cmd_ablate(options, diag) == kExitUsage);
  }
}
