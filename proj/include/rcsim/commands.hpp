#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rcsim/bench_io.hpp"
#include "rcsim/engine.hpp"

namespace rcsim {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Conventional, scriptable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitBackendUnavailable = 69;

struct CommonOptions {
  BackendConfig backend;
  int jobs = 1;
  std::string cache_dir;  // reference-transform cache; empty disables
};

struct SimulatePaperOptions {
  std::string task_file;
  std::string out_file;
  StageConfig stage;
  CommonOptions common;
};

struct SimulateReviewOptions {
  std::string task_file;
  std::string out_file;
  StageConfig stage;
  int reviewers = 5;
  CommonOptions common;
};

struct EvaluateOptions {
  std::string results_file;
  std::string tasks_file;
  std::string out_prefix;  // writes <prefix>.records.jsonl, .report.jsonl, .report.txt
  bool judge = false;
  CommonOptions common;
};

struct AblateOptions {
  std::string task_file;
  std::string axis;  // agents | papers
  std::vector<std::string> values;
  std::string out_prefix;
  std::string task_kind = "paper";  // paper | review
  StageConfig stage;
  int reviewers = 5;
  CommonOptions common;
};

// Reading + writing per task; one ResultRecord per task, manifest first.
int cmd_simulate_paper(const SimulatePaperOptions& options, std::ostream& diag);

// Reading + reviewer matching + review stage against the ground-truth
// paper text.
int cmd_simulate_review(const SimulateReviewOptions& options, std::ostream& diag);

// Transforms references (cached), computes metrics, writes evaluated
// records plus a report grouped by difficulty and mode.
int cmd_evaluate(const EvaluateOptions& options, std::ostream& diag);

// Repeats simulation + evaluation for every axis value.
int cmd_ablate(const AblateOptions& options, std::ostream& diag);

}  // namespace rcsim
