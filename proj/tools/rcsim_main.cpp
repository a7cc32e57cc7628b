// Command-line front end: single simulations, batch benchmark runs,
// evaluation, and ablations over a task file.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rcsim/commands.hpp"

namespace {

using namespace rcsim;

struct BackendFlags {
  std::string backend = "mock";
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-4o-mini";
  std::string embed_model = "text-embedding-3-large";
  std::string api_key_env = "RCSIM_API_KEY";
  double temperature = 0.0;
  int max_output_tokens = 4096;
  int timeout_seconds = 60;
  int max_retries = 3;
  int concurrency = 4;
  std::size_t char_budget = 200000;
  int jobs = 1;
  std::string cache_dir;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& flags) {
  cmd->set_config("--config", "", "Key-value config file (flags override)");
  cmd->add_option("--backend", flags.backend, "Backend kind")
      ->check(CLI::IsMember({"mock", "http"}))
      ->capture_default_str();
  cmd->add_option("--endpoint", flags.endpoint, "HTTP API base URL")->capture_default_str();
  cmd->add_option("--model", flags.model, "Chat model name")->capture_default_str();
  cmd->add_option("--embed-model", flags.embed_model, "Embedding model name")
      ->capture_default_str();
  cmd->add_option("--api-key-env", flags.api_key_env, "Env var holding the API key")
      ->capture_default_str();
  cmd->add_option("--temperature", flags.temperature, "Decoding temperature")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--max-output-tokens", flags.max_output_tokens,
                  "Completion token limit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-seconds", flags.timeout_seconds, "Per-request timeout")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-retries", flags.max_retries, "Retries on transient failures")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--concurrency-limit", flags.concurrency, "Max in-flight backend calls")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--char-budget", flags.char_budget, "Prompt character budget");
  cmd->add_option("--jobs", flags.jobs, "Parallel tasks")->check(CLI::PositiveNumber);
  cmd->add_option("--cache-dir", flags.cache_dir, "Reference-transform cache directory");
}

CommonOptions to_common(const BackendFlags& flags) {
  CommonOptions common;
  common.backend.kind = flags.backend == "http" ? BackendKind::HttpApi : BackendKind::Mock;
  common.backend.endpoint = flags.endpoint;
  common.backend.model_name = flags.backend == "http" ? flags.model : "mock";
  common.backend.embedding_model_name =
      flags.backend == "http" ? flags.embed_model : "mock-trigram-256";
  common.backend.credential_env_var = flags.api_key_env;
  common.backend.temperature = flags.temperature;
  common.backend.max_output_tokens = flags.max_output_tokens;
  common.backend.request_timeout = std::chrono::seconds(flags.timeout_seconds);
  common.backend.max_retries = flags.max_retries;
  common.backend.concurrency_limit = flags.concurrency;
  common.backend.prompt_char_budget = flags.char_budget;
  common.jobs = flags.jobs;
  common.cache_dir = flags.cache_dir;
  return common;
}

void add_stage_flags(CLI::App* cmd, std::string& mode, int& max_agents, int& max_papers,
                     std::string& filter) {
  cmd->add_option("--mode", mode, "Aggregation mode")
      ->check(CLI::IsMember({"self", "agent", "data", "global"}))
      ->capture_default_str();
  cmd->add_option("--max-agents", max_agents, "Cap on participating agents")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-papers", max_papers, "Cap on cited papers")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--citation-filter", filter, "Cited-paper section filter")
      ->check(CLI::IsMember({"all", "related-work", "introduction", "other"}))
      ->capture_default_str();
}

StageConfig to_stage(const std::string& mode, int max_agents, int max_papers,
                     const std::string& filter) {
  StageConfig stage;
  stage.mode = agg_mode_from_name(mode).value_or(AggMode::Global);
  if (max_agents > 0) stage.max_agents = max_agents;
  if (max_papers > 0) stage.max_cited_papers = max_papers;
  stage.citation_filter = section_filter_from_name(filter).value_or(SectionFilter::All);
  return stage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Research-community simulation and masked-node evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  BackendFlags flags;
  std::string mode = "global";
  int max_agents = 0;
  int max_papers = 0;
  std::string filter = "all";
  std::string task_file, out_path, results_file, tasks_file;
  int reviewers = 5;
  bool judge = false;
  std::string axis, task_kind = "paper";
  std::vector<std::string> values;

  CLI::App* sim_paper =
      app.add_subcommand("simulate-paper", "Run reading + writing over paper tasks");
  sim_paper->add_option("task-file", task_file, "Paper tasks (*.jsonl)")->required();
  sim_paper->add_option("--out", out_path, "Result file")->required();
  add_stage_flags(sim_paper, mode, max_agents, max_papers, filter);
  add_backend_flags(sim_paper, flags);

  CLI::App* sim_review =
      app.add_subcommand("simulate-review", "Run reading + review over review tasks");
  sim_review->add_option("task-file", task_file, "Review tasks (*.jsonl)")->required();
  sim_review->add_option("--out", out_path, "Result file")->required();
  sim_review->add_option("--reviewers", reviewers, "Reviewers per paper")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_stage_flags(sim_review, mode, max_agents, max_papers, filter);
  add_backend_flags(sim_review, flags);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score results against references");
  evaluate->add_option("--results", results_file, "Result file from a simulate command")
      ->required();
  evaluate->add_option("--tasks", tasks_file, "Task file with references")->required();
  evaluate->add_option("--out", out_path, "Output prefix")->required();
  evaluate->add_flag("--judge", judge, "Also run the fine-grained judge");
  add_backend_flags(evaluate, flags);

  CLI::App* ablate = app.add_subcommand("ablate", "Sweep one axis, report per value");
  ablate->add_option("task-file", task_file, "Task file (*.jsonl)")->required();
  ablate->add_option("--axis", axis, "agents | papers")->required();
  ablate->add_option("--values", values, "Axis values")->required()->delimiter(',');
  ablate->add_option("--out", out_path, "Output prefix")->required();
  ablate->add_option("--task-kind", task_kind, "paper | review")
      ->check(CLI::IsMember({"paper", "review"}))
      ->capture_default_str();
  ablate->add_option("--reviewers", reviewers, "Reviewers per paper (review tasks)")
      ->check(CLI::PositiveNumber);
  add_stage_flags(ablate, mode, max_agents, max_papers, filter);
  add_backend_flags(ablate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim_paper->parsed()) {
      SimulatePaperOptions options;
      options.task_file = task_file;
      options.out_file = out_path;
      options.stage = to_stage(mode, max_agents, max_papers, filter);
      options.common = to_common(flags);
      return cmd_simulate_paper(options, std::cerr);
    }
    if (sim_review->parsed()) {
      SimulateReviewOptions options;
      options.task_file = task_file;
      options.out_file = out_path;
      options.stage = to_stage(mode, max_agents, max_papers, filter);
      options.reviewers = reviewers;
      options.common = to_common(flags);
      return cmd_simulate_review(options, std::cerr);
    }
    if (evaluate->parsed()) {
      EvaluateOptions options;
      options.results_file = results_file;
      options.tasks_file = tasks_file;
      options.out_prefix = out_path;
      options.judge = judge;
      options.common = to_common(flags);
      return cmd_evaluate(options, std::cerr);
    }
    AblateOptions options;
    options.task_file = task_file;
    options.axis = axis;
    options.values = values;
    options.out_prefix = out_path;
    options.task_kind = task_kind;
    options.stage = to_stage(mode, max_agents, max_papers, filter);
    options.reviewers = reviewers;
    options.common = to_common(flags);
    return cmd_ablate(options, std::cerr);
  } catch (const LlmError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kExitBackendUnavailable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
