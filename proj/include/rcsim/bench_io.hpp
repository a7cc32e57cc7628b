#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcsim/metrics.hpp"
#include "rcsim/parsing.hpp"

namespace rcsim {

enum class BenchIoErrorCode { IoFailure, SchemaViolation, TooFewTasks };

class BenchIoError : public std::runtime_error {
 public:
  BenchIoError(BenchIoErrorCode code, const std::string& what, int line = 0,
               std::string field = {})
      : std::runtime_error(what), code_(code), line_(line), field_(std::move(field)) {}
  BenchIoErrorCode code() const { return code_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  BenchIoErrorCode code_;
  int line_;
  std::string field_;
};

struct AuthorSpec {
  std::string name;
  std::vector<std::string> publications;
};

struct CitedPaperSpec {
  std::string abstract_text;
  std::optional<std::string> section_label;  // related-work | introduction | other
};

// One paper-writing task: reconstruct the masked target from authors and
// cited papers; the reference side is the introduction (transformed to 5Q
// at evaluation time) or a pre-transformed 5Q.
struct PaperTask {
  std::string task_id;
  std::string target_title;
  std::string reference_introduction;
  std::optional<Paper5Q> reference_5q;
  std::vector<AuthorSpec> authors;
  std::vector<CitedPaperSpec> cited_papers;
  std::optional<std::string> difficulty;
  nlohmann::json raw;
};

struct ReferenceReview {
  std::string strength_text;
  std::string weakness_text;
  double score = 0.0;
};

// One review-writing task against the saved ground-truth paper text.
struct ReviewTask {
  std::string task_id;
  std::string full_paper;
  std::optional<std::string> target_abstract;  // reviewer-matching query
  std::vector<AuthorSpec> reviewers;
  std::vector<std::string> cited_papers;
  std::vector<ReferenceReview> reference_reviews;
  nlohmann::json raw;
};

struct ResultRecord {
  std::string task_id;
  std::string kind;  // paper | review
  std::string mode;
  std::optional<Paper5Q> paper;
  std::optional<ReviewRecord> review;
  std::optional<PaperSimilarity> paper_metrics;
  std::optional<ReviewSimilarity> review_metrics;
  std::optional<JudgeScores> judge;
  std::string trace_digest;
  std::int64_t started_at_ms = 0;
  std::int64_t finished_at_ms = 0;
  std::optional<std::string> error;
  nlohmann::json extra;  // unknown input fields, preserved on round-trip
};

bool operator==(const ResultRecord& a, const ResultRecord& b);

nlohmann::json to_json(const Paper5Q& paper);
Paper5Q paper5q_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReviewRecord& review);
ReviewRecord review_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ResultRecord& record);
ResultRecord result_from_json(const nlohmann::json& j);

// Line-delimited JSON, UTF-8, one record per line. Malformed lines are
// reported with their line number and offending field.
std::vector<PaperTask> load_paper_tasks(const std::string& path);
std::vector<ReviewTask> load_review_tasks(const std::string& path);

void save_results(const std::string& path, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> load_results(const std::string& path);  // skips manifest lines

// Thirds by ascending data-aggregation score (task-id tiebreak): the worst
// floor(n/3) are hard, the best floor(n/3) easy, the rest medium.
struct DifficultyPartition {
  std::vector<std::string> easy;
  std::vector<std::string> medium;
  std::vector<std::string> hard;
};
DifficultyPartition partition_by_difficulty(
    std::vector<std::pair<std::string, double>> scored);

}  // namespace rcsim
