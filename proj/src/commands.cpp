#include "rcsim/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>

#include "rcsim/hash.hpp"
#include "rcsim/prompts.hpp"

namespace rcsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string index_tag(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

std::optional<CitationSection> parse_section_label(const std::optional<std::string>& label) {
  if (!label) return std::nullopt;
  if (*label == "related-work") return CitationSection::RelatedWork;
  if (*label == "introduction") return CitationSection::Introduction;
  return CitationSection::Other;  // unknown labels map to other
}

// Node-id prefixes keep NodeId order aligned with input order.
constexpr const char* kTargetId = "paper:target";

CommunityGraph build_paper_graph(const PaperTask& task) {
  CommunityGraph g;
  g.add_paper({NodeId{kTargetId}, "", PaperKind::FullPaper});  // masked target
  for (std::size_t i = 0; i < task.authors.size(); ++i) {
    NodeId id{"a" + index_tag(i) + ":" + task.authors[i].name};
    g.add_agent({id, task.authors[i].name, std::nullopt, task.authors[i].publications});
    g.add_edge({id, NodeId{kTargetId}, EdgeKind::Authorship, std::nullopt});
  }
  for (std::size_t i = 0; i < task.cited_papers.size(); ++i) {
    NodeId id{"c" + index_tag(i)};
    g.add_paper({id, task.cited_papers[i].abstract_text, PaperKind::AbstractOnly});
    g.add_edge({NodeId{kTargetId}, id, EdgeKind::Citation,
                parse_section_label(task.cited_papers[i].section_label)});
  }
  return g;
}

CommunityGraph build_review_graph(const ReviewTask& task,
                                  const std::vector<std::size_t>& reviewer_indices) {
  CommunityGraph g;
  g.add_paper({NodeId{kTargetId}, task.full_paper, PaperKind::FullPaper});
  for (std::size_t i : reviewer_indices) {
    NodeId id{"a" + index_tag(i) + ":" + task.reviewers[i].name};
    g.add_agent({id, task.reviewers[i].name, std::nullopt, task.reviewers[i].publications});
    g.add_edge({id, NodeId{kTargetId}, EdgeKind::ReviewQualification, std::nullopt});
  }
  for (std::size_t i = 0; i < task.cited_papers.size(); ++i) {
    NodeId id{"c" + index_tag(i)};
    g.add_paper({id, task.cited_papers[i], PaperKind::AbstractOnly});
    g.add_edge({NodeId{kTargetId}, id, EdgeKind::Citation, std::nullopt});
  }
  return g;
}

std::string digest_trace(const Trace& trace) {
  std::string buf;
  for (const TraceEntry& e : trace) {
    buf += e.stage + "|" + e.node_id + "|" + e.fn + "|" + e.prompt_hash + "|" + e.reply_hash;
    buf += '\n';
  }
  return fnv_hex(buf);
}

// Mock runs use a fixed zero clock so re-runs are byte-identical.
std::int64_t now_ms(const BackendConfig& config) {
  if (config.kind == BackendKind::Mock) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

json manifest_json(const std::string& command, const CommonOptions& common,
                   const StageConfig& stage, const std::string& input,
                   const std::string& output) {
  json j{
      {"record-kind", "manifest"},
      {"tool-version", std::string(kToolVersion)},
      {"prompt-version", std::string(prompts::kVersion)},
      {"command", command},
      {"backend", common.backend.kind == BackendKind::Mock ? "mock" : "http"},
      {"model", common.backend.model_name},
      {"embedding-model", common.backend.embedding_model_name},
      {"temperature", common.backend.temperature},
      {"mode", agg_mode_name(stage.mode)},
      {"citation-filter", section_filter_name(stage.citation_filter)},
      {"jobs", common.jobs},
      {"input", input},
      {"output", output},
      {"note", "decoding temperature is 0; outputs do not depend on a sampling seed"},
  };
  if (stage.max_agents) j["max-agents"] = *stage.max_agents;
  if (stage.max_cited_papers) j["max-cited-papers"] = *stage.max_cited_papers;
  return j;
}

void write_records(const std::string& path, const json& manifest,
                   const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) throw BenchIoError(BenchIoErrorCode::IoFailure, "cannot write " + path);
  out << manifest.dump() << '\n';
  for (const ResultRecord& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw BenchIoError(BenchIoErrorCode::IoFailure, "write failed: " + path);
}

// Bounded task fan-out; results come back in input order regardless of
// completion order.
template <typename Task, typename Fn>
std::vector<ResultRecord> run_tasks(const std::vector<Task>& tasks, int jobs, Fn run_one) {
  std::vector<ResultRecord> records(tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) records[i] = run_one(tasks[i]);
    return records;
  }
  std::size_t next = 0;
  while (next < tasks.size()) {
    std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                              tasks.size() - next);
    std::vector<std::future<ResultRecord>> futures;
    futures.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i) {
      futures.push_back(
          std::async(std::launch::async, [&, i] { return run_one(tasks[next + i]); }));
    }
    for (std::size_t i = 0; i < batch; ++i) records[next + i] = futures[i].get();
    next += batch;
  }
  return records;
}

bool caps_valid(const StageConfig& stage, std::ostream& diag) {
  if ((stage.max_agents && *stage.max_agents < 1) ||
      (stage.max_cited_papers && *stage.max_cited_papers < 1)) {
    diag << "caps must be >= 1 when present\n";
    return false;
  }
  return true;
}

int finish(std::ostream& diag, const std::vector<ResultRecord>& records) {
  int failed = 0;
  for (const ResultRecord& r : records) {
    if (r.error) ++failed;
  }
  if (failed > 0) {
    diag << failed << "/" << records.size() << " tasks failed\n";
    return kExitPartialFailure;
  }
  return kExitOk;
}

// --- reference-transform cache -------------------------------------------

class TransformCache {
 public:
  TransformCache(std::string dir, const BackendConfig& config) : dir_(std::move(dir)) {
    backend_tag_ = (config.kind == BackendKind::Mock ? "mock:" : "http:") + config.model_name;
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  std::optional<json> get(const std::string& kind, const std::string& content) const {
    if (dir_.empty()) return std::nullopt;
    std::ifstream in(entry_path(kind, content));
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
  }

  void put(const std::string& kind, const std::string& content, const json& value) const {
    if (dir_.empty()) return;
    std::ofstream out(entry_path(kind, content));
    out << value.dump() << '\n';
  }

 private:
  std::string entry_path(const std::string& kind, const std::string& content) const {
    return dir_ + "/" + fnv_hex(kind + "\x1f" + backend_tag_ + "\x1f" + content) + ".json";
  }

  std::string dir_;
  std::string backend_tag_;
};

Paper5Q cached_paper_transform(const TransformCache& cache, const std::string& introduction,
                               Gateway& gateway) {
  if (auto hit = cache.get("paper-5q", introduction)) {
    return paper5q_from_json(*hit);
  }
  Paper5Q out = transform_reference_paper(introduction, gateway);
  cache.put("paper-5q", introduction, to_json(out));
  return out;
}

std::vector<std::string> cached_bullet_transform(const TransformCache& cache,
                                                 const std::string& text, Gateway& gateway) {
  if (auto hit = cache.get("review-bullets", text)) {
    return hit->get<std::vector<std::string>>();
  }
  std::vector<std::string> out = transform_reference_review(text, gateway);
  cache.put("review-bullets", text, json(out));
  return out;
}

// --- report rendering ------------------------------------------------------

std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_report(const std::string& prefix, const std::string& label, const Report& report,
                  const std::vector<std::string>& metric_names, std::ostream& txt,
                  std::ofstream& jsonl) {
  txt << "== " << label << " ==\n";
  std::string header = "group";
  for (const std::string& m : metric_names) header += "\t" + m;
  header += "\tn";
  txt << header << '\n';
  auto emit_row = [&](const GroupSummary& s, const std::string& name) {
    txt << name;
    for (const std::string& m : metric_names) {
      auto it = s.means.find(m);
      txt << '\t' << (it == s.means.end() ? "-" : format_cell(it->second));
    }
    txt << '\t' << s.count << '\n';

    json j{{"section", label}, {"group", s.group}, {"count", s.count}};
    for (const auto& [k, v] : s.means) j["mean-" + k] = v;
    jsonl << j.dump() << '\n';
  };
  for (const GroupSummary& s : report.groups) {
    std::string name;
    for (const auto& [k, v] : s.group) {
      if (!name.empty()) name += ",";
      name += k + "=" + v;
    }
    emit_row(s, name);
  }
  emit_row(report.overall, "overall");
  txt << '\n';
  (void)prefix;
}

// --- per-task runners ------------------------------------------------------

ResultRecord simulate_one_paper(const PaperTask& task, const StageConfig& stage,
                                Gateway& gateway, const BackendConfig& backend_config) {
  ResultRecord record;
  record.task_id = task.task_id;
  record.kind = "paper";
  record.mode = agg_mode_name(stage.mode);
  record.started_at_ms = now_ms(backend_config);
  Trace trace;
  try {
    CommunityGraph graph = build_paper_graph(task);
    SimulationOutput out = run_simulation(graph, NodeId{kTargetId}, stage, gateway);
    trace = std::move(out.trace);
    record.paper = std::move(out.paper);
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  record.trace_digest = digest_trace(trace);
  record.finished_at_ms = now_ms(backend_config);
  return record;
}

ResultRecord simulate_one_review(const ReviewTask& task, const StageConfig& stage,
                                 int reviewer_count, Gateway& gateway,
                                 const BackendConfig& backend_config) {
  ResultRecord record;
  record.task_id = task.task_id;
  record.kind = "review";
  record.mode = agg_mode_name(stage.mode);
  record.started_at_ms = now_ms(backend_config);
  Trace trace;
  try {
    std::vector<std::size_t> all_indices(task.reviewers.size());
    for (std::size_t i = 0; i < all_indices.size(); ++i) all_indices[i] = i;

    CommunityGraph graph = build_review_graph(task, all_indices);
    stage_paper_reading(graph, NodeId{kTargetId}, gateway, &trace);

    // More usable candidates than seats: rank by relevance to the paper.
    bool needs_agents = stage.mode == AggMode::Agent || stage.mode == AggMode::Global;
    std::vector<std::pair<NodeId, std::string>> pool;
    for (const auto& [id, agent] : graph.agents()) {
      if (agent.profile) pool.emplace_back(id, *agent.profile);
    }
    if (needs_agents && static_cast<int>(pool.size()) > reviewer_count) {
      std::string query = task.target_abstract.value_or(task.full_paper);
      std::vector<NodeId> chosen =
          match_reviewers(query, pool, reviewer_count, {}, gateway);
      std::set<NodeId> keep(chosen.begin(), chosen.end());

      std::vector<std::size_t> chosen_indices;
      for (std::size_t i : all_indices) {
        NodeId id{"a" + index_tag(i) + ":" + task.reviewers[i].name};
        if (keep.count(id)) chosen_indices.push_back(i);
      }
      CommunityGraph pruned = build_review_graph(task, chosen_indices);
      for (const NodeId& id : chosen) {
        pruned.agent(id).profile = graph.agent(id).profile;
      }
      graph = std::move(pruned);
    }

    std::vector<StageFailure> failures;
    record.review = stage_review_writing(graph, NodeId{kTargetId}, task.full_paper, stage,
                                         gateway, &trace, &failures);
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  record.trace_digest = digest_trace(trace);
  record.finished_at_ms = now_ms(backend_config);
  return record;
}

std::shared_ptr<Gateway> open_gateway(const CommonOptions& common, std::ostream& diag) {
  try {
    return std::make_shared<Gateway>(make_backend(common.backend), common.backend);
  } catch (const LlmError& e) {
    diag << "backend unavailable: " << e.what() << '\n';
    return nullptr;
  }
}

}  // namespace

int cmd_simulate_paper(const SimulatePaperOptions& options, std::ostream& diag) {
  if (!caps_valid(options.stage, diag)) return kExitUsage;
  std::vector<PaperTask> tasks;
  try {
    tasks = load_paper_tasks(options.task_file);
  } catch (const BenchIoError& e) {
    diag << "cannot load tasks: " << e.what() << '\n';
    return kExitUsage;
  }
  auto gateway = open_gateway(options.common, diag);
  if (!gateway) return kExitBackendUnavailable;

  auto records = run_tasks(tasks, options.common.jobs, [&](const PaperTask& task) {
    return simulate_one_paper(task, options.stage, *gateway, options.common.backend);
  });
  write_records(options.out_file,
                manifest_json("simulate-paper", options.common, options.stage,
                              options.task_file, options.out_file),
                records);
  return finish(diag, records);
}

int cmd_simulate_review(const SimulateReviewOptions& options, std::ostream& diag) {
  if (!caps_valid(options.stage, diag)) return kExitUsage;
  if (options.reviewers < 1) {
    diag << "--reviewers must be >= 1\n";
    return kExitUsage;
  }
  std::vector<ReviewTask> tasks;
  try {
    tasks = load_review_tasks(options.task_file);
  } catch (const BenchIoError& e) {
    diag << "cannot load tasks: " << e.what() << '\n';
    return kExitUsage;
  }
  auto gateway = open_gateway(options.common, diag);
  if (!gateway) return kExitBackendUnavailable;

  StageConfig stage = options.stage;
  stage.max_agents = options.reviewers;
  auto records = run_tasks(tasks, options.common.jobs, [&](const ReviewTask& task) {
    return simulate_one_review(task, stage, options.reviewers, *gateway,
                               options.common.backend);
  });
  json manifest = manifest_json("simulate-review", options.common, stage, options.task_file,
                                options.out_file);
  manifest["reviewers"] = options.reviewers;
  write_records(options.out_file, manifest, records);
  return finish(diag, records);
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& diag) {
  std::vector<ResultRecord> records;
  try {
    records = load_results(options.results_file);
  } catch (const BenchIoError& e) {
    diag << "cannot load results: " << e.what() << '\n';
    return kExitUsage;
  }
  if (records.empty()) {
    diag << "no records to evaluate\n";
    return kExitUsage;
  }
  bool review_kind = records.front().kind == "review";

  std::map<std::string, PaperTask> paper_tasks;
  std::map<std::string, ReviewTask> review_tasks;
  try {
    if (review_kind) {
      for (ReviewTask& t : load_review_tasks(options.tasks_file)) {
        review_tasks.emplace(t.task_id, std::move(t));
      }
    } else {
      for (PaperTask& t : load_paper_tasks(options.tasks_file)) {
        paper_tasks.emplace(t.task_id, std::move(t));
      }
    }
  } catch (const BenchIoError& e) {
    diag << "cannot load tasks: " << e.what() << '\n';
    return kExitUsage;
  }
  auto gateway = open_gateway(options.common, diag);
  if (!gateway) return kExitBackendUnavailable;
  TransformCache cache(options.common.cache_dir, options.common.backend);

  std::vector<MetricRow> paper_rows;
  std::vector<MetricRow> review_rows;
  for (ResultRecord& record : records) {
    if (record.error) continue;  // failed task rows stay unevaluated
    try {
      if (record.kind == "paper" && record.paper) {
        auto it = paper_tasks.find(record.task_id);
        if (it == paper_tasks.end()) {
          record.extra["unevaluated"] = "missing reference";
          continue;
        }
        const PaperTask& task = it->second;
        Paper5Q reference = task.reference_5q
                                ? *task.reference_5q
                                : cached_paper_transform(cache, task.reference_introduction,
                                                         *gateway);
        record.paper_metrics = paper_similarity(*record.paper, reference, *gateway);
        if (options.judge) {
          record.judge = judge_fine_grained(reference, *record.paper, *gateway);
        }
        MetricRow row;
        row.task_id = record.task_id;
        row.groups["mode"] = record.mode;
        row.groups["difficulty"] = task.difficulty.value_or("(none)");
        row.values["overall"] = record.paper_metrics->overall;
        for (std::size_t q = 0; q < 5; ++q) {
          row.values["q" + std::to_string(q + 1)] = record.paper_metrics->per_question[q];
        }
        if (record.judge) {
          row.values["judge-overall-similarity"] =
              static_cast<double>(record.judge->overall_similarity);
        }
        paper_rows.push_back(std::move(row));
      } else if (record.kind == "review" && record.review) {
        auto it = review_tasks.find(record.task_id);
        if (it == review_tasks.end()) {
          record.extra["unevaluated"] = "missing reference";
          continue;
        }
        const ReviewTask& task = it->second;
        // All ground-truth reviews are transformed and concatenated.
        std::vector<std::string> ref_strengths;
        std::vector<std::string> ref_weaknesses;
        double score_sum = 0.0;
        for (const ReferenceReview& ref : task.reference_reviews) {
          auto s = cached_bullet_transform(cache, ref.strength_text, *gateway);
          auto w = cached_bullet_transform(cache, ref.weakness_text, *gateway);
          ref_strengths.insert(ref_strengths.end(), s.begin(), s.end());
          ref_weaknesses.insert(ref_weaknesses.end(), w.begin(), w.end());
          score_sum += ref.score;
        }
        double ref_score = score_sum / static_cast<double>(task.reference_reviews.size());
        ReviewSimilarity metrics;
        metrics.strength =
            review_similarity(record.review->strengths, ref_strengths, *gateway);
        metrics.weakness =
            review_similarity(record.review->weaknesses, ref_weaknesses, *gateway);
        metrics.delta_score = score_delta(record.review->score, ref_score);
        record.review_metrics = metrics;

        MetricRow row;
        row.task_id = record.task_id;
        row.groups["mode"] = record.mode;
        row.values["strength"] = metrics.strength;
        row.values["weakness"] = metrics.weakness;
        row.values["delta-score"] = metrics.delta_score;
        review_rows.push_back(std::move(row));
      } else {
        record.extra["unevaluated"] = "no generated output";
      }
    } catch (const std::exception& e) {
      record.extra["unevaluated"] = e.what();
    }
  }

  json manifest{
      {"record-kind", "manifest"},
      {"tool-version", std::string(kToolVersion)},
      {"prompt-version", std::string(prompts::kVersion)},
      {"command", "evaluate"},
      {"backend", options.common.backend.kind == BackendKind::Mock ? "mock" : "http"},
      {"model", options.common.backend.model_name},
      {"embedding-model", options.common.backend.embedding_model_name},
      {"temperature", options.common.backend.temperature},
      {"judge", options.judge},
      {"input", options.results_file},
      {"tasks", options.tasks_file},
      {"output", options.out_prefix},
      {"note", "decoding temperature is 0; outputs do not depend on a sampling seed"},
  };
  write_records(options.out_prefix + ".records.jsonl", manifest, records);
  std::ofstream txt(options.out_prefix + ".report.txt");
  std::ofstream jsonl(options.out_prefix + ".report.jsonl");
  if (!txt || !jsonl) {
    diag << "cannot write report files\n";
    return kExitUsage;
  }
  if (!paper_rows.empty()) {
    std::vector<std::string> metrics{"overall", "q1", "q2", "q3", "q4", "q5"};
    if (options.judge) metrics.push_back("judge-overall-similarity");
    write_report(options.out_prefix, "paper-writing",
                 aggregate_report(paper_rows, {"mode", "difficulty"}), metrics, txt, jsonl);
  }
  if (!review_rows.empty()) {
    write_report(options.out_prefix, "review-writing",
                 aggregate_report(review_rows, {"mode"}),
                 {"strength", "weakness", "delta-score"}, txt, jsonl);
  }
  diag << "evaluated " << paper_rows.size() + review_rows.size() << "/" << records.size()
       << " records\n";
  return kExitOk;
}

int cmd_ablate(const AblateOptions& options, std::ostream& diag) {
  if (options.axis != "agents" && options.axis != "papers") {
    diag << "unknown axis: " << options.axis << '\n';
    return kExitUsage;
  }
  if (options.values.empty()) {
    diag << "no axis values given\n";
    return kExitUsage;
  }
  if (options.axis == "papers" && options.task_kind != "paper") {
    diag << "axis 'papers' applies to paper tasks only\n";
    return kExitUsage;
  }

  int worst = kExitOk;
  for (const std::string& value : options.values) {
    StageConfig stage = options.stage;
    int reviewers = options.reviewers;
    if (options.axis == "agents") {
      int v = 0;
      try {
        v = std::stoi(value);
      } catch (...) {
        v = 0;
      }
      if (v < 1) {
        diag << "axis 'agents' values must be integers >= 1, got: " << value << '\n';
        return kExitUsage;
      }
      stage.max_agents = v;
      reviewers = v;
    } else {
      auto filter = section_filter_from_name(value);
      if (!filter) {
        diag << "axis 'papers' values must be section filters, got: " << value << '\n';
        return kExitUsage;
      }
      stage.citation_filter = *filter;
    }

    std::string tag = options.out_prefix + "-" + options.axis + "-" + value;
    int rc;
    if (options.task_kind == "review") {
      SimulateReviewOptions sim;
      sim.task_file = options.task_file;
      sim.out_file = tag + ".results.jsonl";
      sim.stage = stage;
      sim.reviewers = reviewers;
      sim.common = options.common;
      rc = cmd_simulate_review(sim, diag);
    } else {
      SimulatePaperOptions sim;
      sim.task_file = options.task_file;
      sim.out_file = tag + ".results.jsonl";
      sim.stage = stage;
      sim.common = options.common;
      rc = cmd_simulate_paper(sim, diag);
    }
    if (rc == kExitUsage || rc == kExitBackendUnavailable) return rc;
    worst = std::max(worst, rc);

    EvaluateOptions eval;
    eval.results_file = tag + ".results.jsonl";
    eval.tasks_file = options.task_file;
    eval.out_prefix = tag;
    eval.common = options.common;
    rc = cmd_evaluate(eval, diag);
    if (rc != kExitOk) return rc;
    diag << "ablation " << options.axis << "=" << value << " done\n";
  }
  return worst;
}

}  // namespace rcsim
