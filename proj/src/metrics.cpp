#include "rcsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "rcsim/hash.hpp"
#include "rcsim/prompts.hpp"

namespace rcsim {

namespace {

using nlohmann::json;

std::vector<EmbeddingVector> embed_batch(Gateway& gateway, std::vector<std::string> texts) {
  // All texts for one metric call go out in a single batch.
  return gateway.embed(std::move(texts));
}

int read_judge_field(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw EvalError(EvalErrorCode::ParseFailure, std::string("judge reply misses field: ") + key);
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw EvalError(EvalErrorCode::ParseFailure, std::string("judge field not numeric: ") + key);
  }
  double d = v.get<double>();
  if (d != std::floor(d) || d < 0.0 || d > 10.0) {
    throw EvalError(EvalErrorCode::FieldOutOfRange,
                    std::string(key) + " = " + std::to_string(d) + " outside 0..10");
  }
  return static_cast<int>(d);
}

}  // namespace

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.values.size() != v.values.size()) {
    throw EvalError(EvalErrorCode::LengthMismatch,
                    "vector lengths differ: " + std::to_string(u.values.size()) + " vs " +
                        std::to_string(v.values.size()));
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    dot += u.values[i] * v.values[i];
    nu += u.values[i] * u.values[i];
    nv += v.values[i] * v.values[i];
  }
  if (nu == 0.0 || nv == 0.0) {
    throw EvalError(EvalErrorCode::ZeroVector, "cosine undefined for a zero vector");
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

PaperSimilarity paper_similarity(const Paper5Q& generated, const Paper5Q& reference,
                                 Gateway& gateway) {
  std::vector<std::string> texts;
  texts.reserve(10);
  for (const std::string& a : generated.answers) texts.push_back(a);
  for (const std::string& a : reference.answers) texts.push_back(a);
  std::vector<EmbeddingVector> vectors = embed_batch(gateway, std::move(texts));

  PaperSimilarity out;
  double sum = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    out.per_question[i] = cosine(vectors[i], vectors[i + 5]);
    sum += out.per_question[i];
  }
  out.overall = sum / 5.0;
  return out;
}

double review_similarity(const std::vector<std::string>& generated_bullets,
                         const std::vector<std::string>& reference_bullets, Gateway& gateway) {
  if (generated_bullets.empty() || reference_bullets.empty()) {
    throw EvalError(EvalErrorCode::EmptyList, "bullet lists must be non-empty");
  }
  std::vector<std::string> texts;
  texts.reserve(generated_bullets.size() + reference_bullets.size());
  for (const std::string& b : generated_bullets) texts.push_back(b);
  for (const std::string& b : reference_bullets) texts.push_back(b);
  std::vector<EmbeddingVector> vectors = embed_batch(gateway, std::move(texts));

  const std::size_t g = generated_bullets.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < reference_bullets.size(); ++j) {
    double best = -1.0;
    for (std::size_t i = 0; i < g; ++i) {
      best = std::max(best, cosine(vectors[i], vectors[g + j]));
    }
    sum += best;
  }
  return sum / static_cast<double>(reference_bullets.size());
}

double score_delta(int generated, double reference) {
  if (generated < 1 || generated > 10) {
    throw EvalError(EvalErrorCode::OutOfRange,
                    "generated score " + std::to_string(generated) + " outside 1..10");
  }
  if (!(reference >= 1.0 && reference <= 10.0)) {
    throw EvalError(EvalErrorCode::OutOfRange,
                    "reference score " + std::to_string(reference) + " outside [1,10]");
  }
  long gen_c = static_cast<long>(generated) * 100;
  long ref_c = std::lround(reference * 100.0);
  return static_cast<double>(std::labs(gen_c - ref_c)) / 100.0;
}

JudgeScores judge_fine_grained(const Paper5Q& reference, const Paper5Q& generated,
                               Gateway& gateway, CallLog* log) {
  Prompt prompt = prompts::judge(format_paper5q(reference), format_paper5q(generated));
  std::string reply = gateway.complete(prompt);
  if (log) log->push_back({fnv_hex(serialize_prompt(prompt)), fnv_hex(reply)});

  std::size_t open = reply.find('{');
  std::size_t close = reply.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw EvalError(EvalErrorCode::ParseFailure, "judge reply contains no JSON object");
  }
  json obj = json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw EvalError(EvalErrorCode::ParseFailure, "judge reply is not valid JSON");
  }
  JudgeScores s;
  s.topic_consistency = read_judge_field(obj, "Topic Consistency");
  s.method_consistency = read_judge_field(obj, "Method Consistency");
  s.factual_consistency = read_judge_field(obj, "Factual Consistency");
  s.claim_consistency = read_judge_field(obj, "Claim Consistency");
  s.application_context_consistency = read_judge_field(obj, "Application Context Consistency");
  s.overall_similarity = read_judge_field(obj, "Overall Semantic Similarity");
  s.novelty_reference = read_judge_field(obj, "Novelty of Reference Proposal");
  s.feasibility_reference = read_judge_field(obj, "Feasibility of Reference Proposal");
  s.novelty_generated = read_judge_field(obj, "Novelty of Generated Proposal");
  s.feasibility_generated = read_judge_field(obj, "Feasibility of Generated Proposal");
  return s;
}

Report aggregate_report(std::vector<MetricRow> rows,
                        const std::vector<std::string>& group_keys) {
  if (rows.empty()) {
    throw EvalError(EvalErrorCode::EmptyInput, "no rows to aggregate");
  }
  std::sort(rows.begin(), rows.end(),
            [](const MetricRow& a, const MetricRow& b) { return a.task_id < b.task_id; });

  struct Accumulator {
    std::map<std::string, double> sums;
    std::map<std::string, int> counts;
    int rows = 0;
  };
  auto accumulate = [](Accumulator& acc, const MetricRow& row) {
    ++acc.rows;
    for (const auto& [name, value] : row.values) {
      acc.sums[name] += value;
      acc.counts[name] += 1;
    }
  };
  auto summarize = [](const Accumulator& acc, std::map<std::string, std::string> group) {
    GroupSummary s;
    s.group = std::move(group);
    s.count = acc.rows;
    s.metric_counts = acc.counts;
    for (const auto& [name, sum] : acc.sums) {
      s.means[name] = sum / acc.counts.at(name);
    }
    return s;
  };

  std::map<std::map<std::string, std::string>, Accumulator> per_group;
  Accumulator overall;
  for (const MetricRow& row : rows) {
    std::map<std::string, std::string> key;
    for (const std::string& k : group_keys) {
      auto it = row.groups.find(k);
      key[k] = it == row.groups.end() ? "(none)" : it->second;
    }
    accumulate(per_group[key], row);
    accumulate(overall, row);
  }

  Report report;
  for (const auto& [key, acc] : per_group) {
    report.groups.push_back(summarize(acc, key));
  }
  report.overall = summarize(overall, {});
  return report;
}

}  // namespace rcsim
