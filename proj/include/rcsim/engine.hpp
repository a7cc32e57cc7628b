#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcsim/agent_ops.hpp"
#include "rcsim/graph.hpp"

namespace rcsim {

// Which part of the target's neighborhood participates in aggregation.
enum class AggMode { Self, Agent, Data, Global };

enum class SectionFilter { All, RelatedWork, Introduction, Other };

std::string agg_mode_name(AggMode mode);
std::optional<AggMode> agg_mode_from_name(const std::string& name);
std::string section_filter_name(SectionFilter filter);
std::optional<SectionFilter> section_filter_from_name(const std::string& name);

struct StageConfig {
  AggMode mode = AggMode::Global;
  std::optional<int> max_agents;        // cap on participating agents/reviewers
  std::optional<int> max_cited_papers;  // cap on cited papers
  SectionFilter citation_filter = SectionFilter::All;
};

struct TraceEntry {
  std::string stage;  // reading | writing | review
  std::string node_id;
  std::string fn;  // fu | fa | fg
  std::string prompt_hash;
  std::string reply_hash;

  bool operator==(const TraceEntry&) const = default;
};
using Trace = std::vector<TraceEntry>;

struct StageFailure {
  std::string stage;
  std::string node_id;
  std::string message;
};

struct SimulationOutput {
  std::optional<Paper5Q> paper;
  std::optional<ReviewRecord> review;
  Trace trace;
  std::vector<StageFailure> failures;
};

enum class EngineErrorCode {
  Precondition,
  NoAgents,
  NoCitations,
  NoReviewers,
  StageFailed,
  PoolTooSmall,
};

class EngineError : public std::runtime_error {
 public:
  EngineError(EngineErrorCode code, std::string stage, const std::string& what)
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}
  EngineErrorCode code() const { return code_; }
  const std::string& stage() const { return stage_; }

 private:
  EngineErrorCode code_;
  std::string stage_;
};

// Layer 1: every agent adjacent to the target synthesizes a profile from
// its publications (first max_agents in NodeId order when capped).
// Existing profiles are never overwritten; agents that cannot produce one
// are recorded as failures and skipped. Fails only when every candidate
// fails.
struct ReadingOutcome {
  int profiles_written = 0;
  std::vector<StageFailure> failures;
};
ReadingOutcome stage_paper_reading(CommunityGraph& graph, const NodeId& target, Gateway& gateway,
                                   Trace* trace = nullptr,
                                   std::optional<int> max_agents = std::nullopt);

// Layer 2, writing: reconstructs the masked target's content as a
// five-question proposal. Global mode issues one message call per agent
// (each seeing all cited papers) plus a single merge call.
Paper5Q stage_paper_writing(const CommunityGraph& graph, const NodeId& target,
                            const StageConfig& config, Gateway& gateway, Trace* trace = nullptr,
                            std::vector<StageFailure>* failures = nullptr);

// Layer 2, review: writes a review of `ground_truth_paper` (the saved
// h_v*; the masked node's placeholder content is never consulted).
ReviewRecord stage_review_writing(const CommunityGraph& graph, const NodeId& target,
                                  const std::string& ground_truth_paper,
                                  const StageConfig& config, Gateway& gateway,
                                  Trace* trace = nullptr,
                                  std::vector<StageFailure>* failures = nullptr);

// Two-layer pass over the target's neighborhood: reading, then writing,
// then review when a ground-truth paper is supplied. The graph is taken by
// value; the caller's snapshot is untouched.
SimulationOutput run_simulation(CommunityGraph graph, const NodeId& target,
                                const StageConfig& config, Gateway& gateway,
                                const std::optional<std::string>& ground_truth_paper = {});

// Ranks researcher profiles against a query abstract by embedding cosine
// (descending, NodeId ascending on ties), drops excluded ids, returns the
// top k.
std::vector<NodeId> match_reviewers(const std::string& paper_abstract,
                                    const std::vector<std::pair<NodeId, std::string>>& pool,
                                    int k, const std::set<NodeId>& exclusions, Gateway& gateway);

// Arithmetic mean rounded half-up; exact over integers.
int combine_scores(const std::vector<int>& scores);

}  // namespace rcsim
