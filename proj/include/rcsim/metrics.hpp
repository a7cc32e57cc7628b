#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rcsim/agent_ops.hpp"
#include "rcsim/gateway.hpp"
#include "rcsim/parsing.hpp"

namespace rcsim {

enum class EvalErrorCode {
  LengthMismatch,
  ZeroVector,
  EmptyList,
  OutOfRange,
  EmptyInput,
  ParseFailure,
  FieldOutOfRange,
};

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  EvalErrorCode code() const { return code_; }

 private:
  EvalErrorCode code_;
};

double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// Positionally aligned similarity over the five answers; overall is their
// arithmetic mean. Symmetric in its arguments.
struct PaperSimilarity {
  std::array<double, 5> per_question{};
  double overall = 0.0;
};
PaperSimilarity paper_similarity(const Paper5Q& generated, const Paper5Q& reference,
                                 Gateway& gateway);

// Recall-oriented bullet similarity: for every reference bullet, the best
// cosine against the generated bullets, averaged over reference bullets.
// Deliberately NOT symmetric.
double review_similarity(const std::vector<std::string>& generated_bullets,
                         const std::vector<std::string>& reference_bullets, Gateway& gateway);

struct ReviewSimilarity {
  double strength = 0.0;
  double weakness = 0.0;
  double delta_score = 0.0;
};

// |generated - reference| at hundredth precision (reference review scores
// are fractional averages reported with two decimals).
double score_delta(int generated, double reference);

// Ten raw judge dimensions, each 0..10. Never combined into a composite.
struct JudgeScores {
  int topic_consistency = 0;
  int method_consistency = 0;
  int factual_consistency = 0;
  int claim_consistency = 0;
  int application_context_consistency = 0;
  int overall_similarity = 0;
  int novelty_reference = 0;
  int feasibility_reference = 0;
  int novelty_generated = 0;
  int feasibility_generated = 0;
};
JudgeScores judge_fine_grained(const Paper5Q& reference, const Paper5Q& generated,
                               Gateway& gateway, CallLog* log = nullptr);

// One evaluated task: group labels (difficulty, mode, ...) and named
// metric values.
struct MetricRow {
  std::string task_id;
  std::map<std::string, std::string> groups;
  std::map<std::string, double> values;
};

struct GroupSummary {
  std::map<std::string, std::string> group;
  std::map<std::string, double> means;
  std::map<std::string, int> metric_counts;
  int count = 0;
};

struct Report {
  std::vector<GroupSummary> groups;  // deterministic group-key order
  GroupSummary overall;
};

// Per-group and overall means. Reduction runs in task-id order.
Report aggregate_report(std::vector<MetricRow> rows,
                        const std::vector<std::string>& group_keys);

}  // namespace rcsim
