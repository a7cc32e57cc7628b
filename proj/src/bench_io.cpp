#include "rcsim/bench_io.hpp"

#include <algorithm>
#include <fstream>

namespace rcsim {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(int line, const std::string& field, const std::string& why) {
  throw BenchIoError(BenchIoErrorCode::SchemaViolation,
                     "line " + std::to_string(line) + ", field '" + field + "': " + why, line,
                     field);
}

std::string require_string(const json& j, const char* field, int line) {
  if (!j.contains(field) || !j.at(field).is_string()) {
    schema_error(line, field, "missing or not a string");
  }
  std::string v = j.at(field).get<std::string>();
  if (v.empty()) schema_error(line, field, "must be non-empty");
  return v;
}

std::vector<std::string> string_list(const json& j, const char* field, int line) {
  if (!j.is_array()) schema_error(line, field, "must be an array");
  std::vector<std::string> out;
  for (const json& item : j) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      schema_error(line, field, "entries must be non-empty strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<AuthorSpec> author_list(const json& j, const char* field, int line,
                                    bool allow_empty) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    schema_error(line, field, "missing or not an array");
  }
  if (j.at(field).empty() && !allow_empty) {
    schema_error(line, field, "must be non-empty");
  }
  std::vector<AuthorSpec> out;
  for (const json& a : j.at(field)) {
    AuthorSpec spec;
    spec.name = require_string(a, "name", line);
    if (a.contains("publications")) {
      spec.publications = string_list(a.at("publications"), "publications", line);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

template <typename Fn>
auto load_jsonl(const std::string& path, Fn parse_record)
    -> std::vector<decltype(parse_record(json{}, 0))> {
  std::ifstream in(path);
  if (!in) {
    throw BenchIoError(BenchIoErrorCode::IoFailure, "cannot open " + path);
  }
  std::vector<decltype(parse_record(json{}, 0))> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      schema_error(line_no, "(line)", "not a JSON object");
    }
    out.push_back(parse_record(j, line_no));
  }
  return out;
}

}  // namespace

json to_json(const Paper5Q& paper) {
  json arr = json::array();
  for (const std::string& a : paper.answers) arr.push_back(a);
  return arr;
}

Paper5Q paper5q_from_json(const json& j) {
  if (!j.is_array() || j.size() != 5) {
    throw BenchIoError(BenchIoErrorCode::SchemaViolation, "5q value must be a 5-element array");
  }
  Paper5Q out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!j[i].is_string() || j[i].get<std::string>().empty()) {
      throw BenchIoError(BenchIoErrorCode::SchemaViolation, "5q answers must be non-empty");
    }
    out.answers[i] = j[i].get<std::string>();
  }
  return out;
}

json to_json(const ReviewRecord& review) {
  return json{{"strengths", review.strengths},
              {"weaknesses", review.weaknesses},
              {"score", review.score}};
}

ReviewRecord review_from_json(const json& j) {
  ReviewRecord out;
  out.strengths = j.value("strengths", std::vector<std::string>{});
  out.weaknesses = j.value("weaknesses", std::vector<std::string>{});
  out.score = j.value("score", 0);
  if (out.score < 1 || out.score > 10) {
    throw BenchIoError(BenchIoErrorCode::SchemaViolation, "review score outside 1..10");
  }
  return out;
}

json to_json(const ResultRecord& record) {
  json j = record.extra.is_object() ? record.extra : json::object();
  j["task-id"] = record.task_id;
  j["kind"] = record.kind;
  j["mode"] = record.mode;
  j["trace-digest"] = record.trace_digest;
  j["started-at"] = record.started_at_ms;
  j["finished-at"] = record.finished_at_ms;
  if (record.paper) j["paper-5q"] = to_json(*record.paper);
  if (record.review) j["review"] = to_json(*record.review);
  if (record.paper_metrics) {
    j["metrics"] = json{{"per-question", record.paper_metrics->per_question},
                        {"overall", record.paper_metrics->overall}};
  }
  if (record.review_metrics) {
    j["metrics"] = json{{"strength", record.review_metrics->strength},
                        {"weakness", record.review_metrics->weakness},
                        {"delta-score", record.review_metrics->delta_score}};
  }
  if (record.judge) {
    j["judge"] = json{{"topic-consistency", record.judge->topic_consistency},
                      {"method-consistency", record.judge->method_consistency},
                      {"factual-consistency", record.judge->factual_consistency},
                      {"claim-consistency", record.judge->claim_consistency},
                      {"application-context-consistency",
                       record.judge->application_context_consistency},
                      {"overall-similarity", record.judge->overall_similarity},
                      {"novelty-reference", record.judge->novelty_reference},
                      {"feasibility-reference", record.judge->feasibility_reference},
                      {"novelty-generated", record.judge->novelty_generated},
                      {"feasibility-generated", record.judge->feasibility_generated}};
  }
  if (record.error) j["error"] = *record.error;
  return j;
}

ResultRecord result_from_json(const json& j) {
  static const char* kKnown[] = {"task-id", "kind",       "mode",  "trace-digest",
                                 "started-at", "finished-at", "paper-5q", "review",
                                 "metrics",    "judge",       "error"};
  ResultRecord r;
  r.task_id = j.value("task-id", "");
  r.kind = j.value("kind", "");
  r.mode = j.value("mode", "");
  r.trace_digest = j.value("trace-digest", "");
  r.started_at_ms = j.value("started-at", std::int64_t{0});
  r.finished_at_ms = j.value("finished-at", std::int64_t{0});
  if (j.contains("paper-5q")) r.paper = paper5q_from_json(j.at("paper-5q"));
  if (j.contains("review")) r.review = review_from_json(j.at("review"));
  if (j.contains("metrics")) {
    const json& m = j.at("metrics");
    if (m.contains("per-question")) {
      PaperSimilarity ps;
      auto pq = m.at("per-question").get<std::vector<double>>();
      if (pq.size() != 5) {
        throw BenchIoError(BenchIoErrorCode::SchemaViolation, "per-question must have 5 values");
      }
      std::copy(pq.begin(), pq.end(), ps.per_question.begin());
      ps.overall = m.value("overall", 0.0);
      r.paper_metrics = ps;
    } else {
      ReviewSimilarity rs;
      rs.strength = m.value("strength", 0.0);
      rs.weakness = m.value("weakness", 0.0);
      rs.delta_score = m.value("delta-score", 0.0);
      r.review_metrics = rs;
    }
  }
  if (j.contains("judge")) {
    const json& g = j.at("judge");
    JudgeScores s;
    s.topic_consistency = g.value("topic-consistency", 0);
    s.method_consistency = g.value("method-consistency", 0);
    s.factual_consistency = g.value("factual-consistency", 0);
    s.claim_consistency = g.value("claim-consistency", 0);
    s.application_context_consistency = g.value("application-context-consistency", 0);
    s.overall_similarity = g.value("overall-similarity", 0);
    s.novelty_reference = g.value("novelty-reference", 0);
    s.feasibility_reference = g.value("feasibility-reference", 0);
    s.novelty_generated = g.value("novelty-generated", 0);
    s.feasibility_generated = g.value("feasibility-generated", 0);
    r.judge = s;
  }
  if (j.contains("error") && j.at("error").is_string()) {
    r.error = j.at("error").get<std::string>();
  }
  r.extra = json::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKnown) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) r.extra[it.key()] = it.value();
  }
  return r;
}

bool operator==(const ResultRecord& a, const ResultRecord& b) {
  return to_json(a) == to_json(b);
}

std::vector<PaperTask> load_paper_tasks(const std::string& path) {
  return load_jsonl(path, [](const json& j, int line) {
    PaperTask t;
    t.task_id = require_string(j, "task-id", line);
    t.target_title = require_string(j, "target-title", line);
    if (j.contains("reference-5q")) {
      t.reference_5q = paper5q_from_json(j.at("reference-5q"));
    }
    if (j.contains("reference-introduction")) {
      if (!j.at("reference-introduction").is_string()) {
        schema_error(line, "reference-introduction", "must be a string");
      }
      t.reference_introduction = j.at("reference-introduction").get<std::string>();
    }
    if (t.reference_introduction.empty() && !t.reference_5q) {
      schema_error(line, "reference-introduction",
                   "need reference-introduction or reference-5q");
    }
    t.authors = author_list(j, "authors", line, /*allow_empty=*/true);
    if (j.contains("cited-papers")) {
      if (!j.at("cited-papers").is_array()) schema_error(line, "cited-papers", "must be array");
      for (const json& c : j.at("cited-papers")) {
        CitedPaperSpec spec;
        spec.abstract_text = require_string(c, "abstract", line);
        if (c.contains("section-label") && c.at("section-label").is_string()) {
          spec.section_label = c.at("section-label").get<std::string>();
        }
        t.cited_papers.push_back(std::move(spec));
      }
    }
    if (j.contains("difficulty")) {
      std::string d = j.at("difficulty").get<std::string>();
      if (d != "easy" && d != "medium" && d != "hard") {
        schema_error(line, "difficulty", "must be easy|medium|hard");
      }
      t.difficulty = d;
    }
    t.raw = j;
    return t;
  });
}

std::vector<ReviewTask> load_review_tasks(const std::string& path) {
  return load_jsonl(path, [](const json& j, int line) {
    ReviewTask t;
    t.task_id = require_string(j, "task-id", line);
    t.full_paper = require_string(j, "full-paper", line);
    if (j.contains("target-abstract") && j.at("target-abstract").is_string()) {
      t.target_abstract = j.at("target-abstract").get<std::string>();
    }
    t.reviewers = author_list(j, "reviewers", line, /*allow_empty=*/false);
    if (j.contains("cited-papers")) {
      t.cited_papers = string_list(j.at("cited-papers"), "cited-papers", line);
    }
    if (!j.contains("reference-reviews") || !j.at("reference-reviews").is_array() ||
        j.at("reference-reviews").empty()) {
      schema_error(line, "reference-reviews", "missing or empty");
    }
    for (const json& r : j.at("reference-reviews")) {
      ReferenceReview ref;
      ref.strength_text = require_string(r, "strength-text", line);
      ref.weakness_text = require_string(r, "weakness-text", line);
      if (!r.contains("score") || !r.at("score").is_number()) {
        schema_error(line, "score", "missing or not a number");
      }
      ref.score = r.at("score").get<double>();
      if (ref.score < 1.0 || ref.score > 10.0) {
        schema_error(line, "score", "outside [1,10]");
      }
      t.reference_reviews.push_back(std::move(ref));
    }
    t.raw = j;
    return t;
  });
}

void save_results(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) {
    throw BenchIoError(BenchIoErrorCode::IoFailure, "cannot write " + path);
  }
  for (const ResultRecord& r : records) {
    out << to_json(r).dump() << '\n';
  }
  if (!out) {
    throw BenchIoError(BenchIoErrorCode::IoFailure, "write failed: " + path);
  }
}

std::vector<ResultRecord> load_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw BenchIoError(BenchIoErrorCode::IoFailure, "cannot open " + path);
  }
  std::vector<ResultRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      schema_error(line_no, "(line)", "not a JSON object");
    }
    if (j.value("record-kind", "") == "manifest") continue;
    out.push_back(result_from_json(j));
  }
  return out;
}

DifficultyPartition partition_by_difficulty(
    std::vector<std::pair<std::string, double>> scored) {
  if (scored.size() < 3) {
    throw BenchIoError(BenchIoErrorCode::TooFewTasks,
                       "difficulty partition needs at least 3 tasks");
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  const std::size_t n = scored.size();
  const std::size_t third = n / 3;  // hard and easy get floor(n/3), medium the rest
  DifficultyPartition out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < third) {
      out.hard.push_back(scored[i].first);
    } else if (i < n - third) {
      out.medium.push_back(scored[i].first);
    } else {
      out.easy.push_back(scored[i].first);
    }
  }
  return out;
}

}  // namespace rcsim
