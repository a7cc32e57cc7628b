#include "rcsim/engine.hpp"

#include <algorithm>
#include <future>

#include "rcsim/metrics.hpp"

namespace rcsim {

namespace {

void append_calls(Trace* trace, const std::string& stage, const NodeId& node,
                  const std::string& fn, const CallLog& calls) {
  if (!trace) return;
  for (const LlmCall& c : calls) {
    trace->push_back({stage, node.value, fn, c.prompt_hash, c.reply_hash});
  }
}

std::vector<NodeId> agent_neighbors(const CommunityGraph& graph, const NodeId& target,
                                    std::optional<EdgeKind> kind,
                                    const std::optional<int>& cap) {
  std::vector<NodeId> out;
  for (const NodeId& n : graph.neighbors(target, kind)) {
    if (graph.has_agent(n)) out.push_back(n);
  }
  if (cap && static_cast<int>(out.size()) > *cap) {
    out.resize(static_cast<std::size_t>(*cap));
  }
  return out;
}

bool section_matches(SectionFilter filter, const std::optional<CitationSection>& section) {
  if (filter == SectionFilter::All) return true;
  CitationSection s = section.value_or(CitationSection::Other);  // unlabeled counts as other
  switch (filter) {
    case SectionFilter::RelatedWork: return s == CitationSection::RelatedWork;
    case SectionFilter::Introduction: return s == CitationSection::Introduction;
    case SectionFilter::Other: return s == CitationSection::Other;
    case SectionFilter::All: return true;
  }
  return true;
}

std::vector<std::string> cited_contents(const CommunityGraph& graph, const NodeId& target,
                                        const StageConfig& config) {
  std::vector<std::string> out;
  for (const auto& [id, section] : graph.citation_neighbors(target)) {
    if (!section_matches(config.citation_filter, section)) continue;
    const DataNode& paper = graph.paper(id);
    if (paper.content.empty()) continue;  // masked neighbors carry no signal
    out.push_back(paper.content);
    if (config.max_cited_papers &&
        static_cast<int>(out.size()) >= *config.max_cited_papers) {
      break;
    }
  }
  return out;
}

// Runs fn(item) for every item, fanning out when there is more than one;
// results and trace entries are consumed in input (NodeId) order, so
// concurrency never changes output.
template <typename Item, typename Fn>
auto map_ordered(const std::vector<Item>& items, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
  using Result = decltype(fn(items.front()));
  std::vector<Result> out;
  out.reserve(items.size());
  if (items.size() <= 1) {
    for (const Item& item : items) out.push_back(fn(item));
    return out;
  }
  std::vector<std::future<Result>> futures;
  futures.reserve(items.size());
  for (const Item& item : items) {
    futures.push_back(std::async(std::launch::async, fn, std::cref(item)));
  }
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

struct AgentResult {
  NodeId id;
  std::optional<Paper5Q> proposal;
  std::optional<ReviewRecord> review;
  std::optional<AgentProfile> profile;
  std::string error;
  CallLog calls;
};

}  // namespace

std::string agg_mode_name(AggMode mode) {
  switch (mode) {
    case AggMode::Self: return "self";
    case AggMode::Agent: return "agent";
    case AggMode::Data: return "data";
    case AggMode::Global: return "global";
  }
  return "global";
}

std::optional<AggMode> agg_mode_from_name(const std::string& name) {
  if (name == "self") return AggMode::Self;
  if (name == "agent") return AggMode::Agent;
  if (name == "data") return AggMode::Data;
  if (name == "global") return AggMode::Global;
  return std::nullopt;
}

std::string section_filter_name(SectionFilter filter) {
  switch (filter) {
    case SectionFilter::All: return "all";
    case SectionFilter::RelatedWork: return "related-work";
    case SectionFilter::Introduction: return "introduction";
    case SectionFilter::Other: return "other";
  }
  return "all";
}

std::optional<SectionFilter> section_filter_from_name(const std::string& name) {
  if (name == "all") return SectionFilter::All;
  if (name == "related-work") return SectionFilter::RelatedWork;
  if (name == "introduction") return SectionFilter::Introduction;
  if (name == "other") return SectionFilter::Other;
  return std::nullopt;
}

ReadingOutcome stage_paper_reading(CommunityGraph& graph, const NodeId& target, Gateway& gateway,
                                   Trace* trace, std::optional<int> max_agents) {
  if (!graph.has_paper(target)) {
    throw EngineError(EngineErrorCode::Precondition, "reading",
                      "reading target must be a data node: " + target.value);
  }
  std::vector<NodeId> participants = agent_neighbors(graph, target, std::nullopt, max_agents);
  std::vector<NodeId> candidates;
  for (const NodeId& n : participants) {
    if (!graph.agent(n).profile) candidates.push_back(n);
  }
  auto results = map_ordered(candidates, [&](const NodeId& id) {
    AgentResult r{id, {}, {}, {}, {}, {}};
    try {
      r.profile = write_profile(graph.agent(id).publications, gateway, &r.calls);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  });

  ReadingOutcome outcome;
  for (AgentResult& r : results) {
    append_calls(trace, "reading", r.id, "fu", r.calls);
    if (r.profile) {
      graph.agent(r.id).profile = std::move(r.profile->text);
      ++outcome.profiles_written;
    } else {
      outcome.failures.push_back({"reading", r.id.value, r.error});
    }
  }
  if (!candidates.empty() && outcome.profiles_written == 0) {
    throw EngineError(EngineErrorCode::StageFailed, "reading",
                      "no agent produced a profile for " + target.value);
  }
  return outcome;
}

Paper5Q stage_paper_writing(const CommunityGraph& graph, const NodeId& target,
                            const StageConfig& config, Gateway& gateway, Trace* trace,
                            std::vector<StageFailure>* failures) {
  if (!graph.has_paper(target)) {
    throw EngineError(EngineErrorCode::Precondition, "writing",
                      "writing target must be a data node: " + target.value);
  }
  if (!graph.paper(target).content.empty()) {
    throw EngineError(EngineErrorCode::Precondition, "writing",
                      "writing target must be masked: " + target.value);
  }

  if (config.mode == AggMode::Self) {
    CallLog calls;
    Paper5Q out = write_proposal_self(gateway, &calls);
    append_calls(trace, "writing", target, "fg", calls);
    return out;
  }

  if (config.mode == AggMode::Data) {
    std::vector<std::string> cited = cited_contents(graph, target, config);
    if (cited.empty()) {
      throw EngineError(EngineErrorCode::NoCitations, "writing",
                        "data aggregation needs cited papers: " + target.value);
    }
    CallLog calls;
    Paper5Q out = write_proposal_from_data(cited, gateway, &calls);
    append_calls(trace, "writing", target, "fg", calls);
    return out;
  }

  // Agent and global modes: one message call per author, then one merge.
  std::vector<NodeId> authors =
      agent_neighbors(graph, target, EdgeKind::Authorship, config.max_agents);
  if (authors.empty()) {
    throw EngineError(EngineErrorCode::NoAgents, "writing",
                      "no agent neighbors for " + target.value);
  }
  std::vector<std::string> cited = config.mode == AggMode::Global
                                       ? cited_contents(graph, target, config)
                                       : std::vector<std::string>{};

  auto results = map_ordered(authors, [&](const NodeId& id) {
    AgentResult r{id, {}, {}, {}, {}, {}};
    const AgentNode& agent = graph.agent(id);
    if (!agent.profile) {
      r.error = "agent has no profile";
      return r;
    }
    try {
      r.proposal = write_proposal_message(AgentProfile{*agent.profile}, cited, gateway, &r.calls);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  });

  std::vector<Paper5Q> candidates;
  for (AgentResult& r : results) {
    append_calls(trace, "writing", r.id, "fa", r.calls);
    if (r.proposal) {
      candidates.push_back(std::move(*r.proposal));
    } else {
      if (failures) failures->push_back({"writing", r.id.value, r.error});
    }
  }
  if (candidates.empty()) {
    throw EngineError(EngineErrorCode::StageFailed, "writing",
                      "every agent message failed for " + target.value);
  }
  CallLog merge_calls;
  Paper5Q merged = aggregate_proposals(candidates, gateway, &merge_calls);
  append_calls(trace, "writing", target, "fg", merge_calls);
  return merged;
}

ReviewRecord stage_review_writing(const CommunityGraph& graph, const NodeId& target,
                                  const std::string& ground_truth_paper,
                                  const StageConfig& config, Gateway& gateway, Trace* trace,
                                  std::vector<StageFailure>* failures) {
  if (ground_truth_paper.empty()) {
    throw EngineError(EngineErrorCode::Precondition, "review",
                      "review requires the ground-truth paper text");
  }
  if (!graph.has_paper(target)) {
    throw EngineError(EngineErrorCode::Precondition, "review",
                      "review target must be a data node: " + target.value);
  }

  if (config.mode == AggMode::Self || config.mode == AggMode::Data) {
    // Data mode with no cited papers degrades to the paper-only form.
    std::vector<std::string> cited = config.mode == AggMode::Data
                                         ? cited_contents(graph, target, config)
                                         : std::vector<std::string>{};
    CallLog calls;
    ReviewRecord out;
    out.strengths = review_strength(std::nullopt, ground_truth_paper, cited, gateway, &calls);
    out.weaknesses = review_weakness(std::nullopt, ground_truth_paper, cited, gateway, &calls);
    out.score = review_score(std::nullopt, out.strengths, out.weaknesses, gateway, &calls);
    append_calls(trace, "review", target, "fg", calls);
    return out;
  }

  std::vector<NodeId> reviewers =
      agent_neighbors(graph, target, EdgeKind::ReviewQualification, config.max_agents);
  if (reviewers.empty()) {
    throw EngineError(EngineErrorCode::NoReviewers, "review",
                      "no review-qualification edges for " + target.value);
  }
  std::vector<std::string> cited = config.mode == AggMode::Global
                                       ? cited_contents(graph, target, config)
                                       : std::vector<std::string>{};

  auto results = map_ordered(reviewers, [&](const NodeId& id) {
    AgentResult r{id, {}, {}, {}, {}, {}};
    const AgentNode& agent = graph.agent(id);
    if (!agent.profile) {
      r.error = "reviewer has no profile";
      return r;
    }
    try {
      AgentProfile profile{*agent.profile};
      ReviewRecord review;
      review.strengths = review_strength(profile, ground_truth_paper, cited, gateway, &r.calls);
      review.weaknesses = review_weakness(profile, ground_truth_paper, cited, gateway, &r.calls);
      review.score = review_score(profile, review.strengths, review.weaknesses, gateway, &r.calls);
      r.review = std::move(review);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  });

  std::vector<ReviewRecord> reviews;
  std::vector<int> scores;
  for (AgentResult& r : results) {
    append_calls(trace, "review", r.id, "fa", r.calls);
    if (r.review) {
      scores.push_back(r.review->score);
      reviews.push_back(std::move(*r.review));
    } else {
      if (failures) failures->push_back({"review", r.id.value, r.error});
    }
  }
  if (reviews.empty()) {
    throw EngineError(EngineErrorCode::StageFailed, "review",
                      "every reviewer failed for " + target.value);
  }

  CallLog merge_calls;
  ReviewRecord merged;
  merged.strengths = metareview_strength(ground_truth_paper, reviews, gateway, &merge_calls);
  merged.weaknesses = metareview_weakness(ground_truth_paper, reviews, gateway, &merge_calls);
  merged.score = combine_scores(scores);
  append_calls(trace, "review", target, "fg", merge_calls);
  return merged;
}

SimulationOutput run_simulation(CommunityGraph graph, const NodeId& target,
                                const StageConfig& config, Gateway& gateway,
                                const std::optional<std::string>& ground_truth_paper) {
  if (!graph.has_paper(target)) {
    throw EngineError(EngineErrorCode::Precondition, "simulation",
                      "target must be a data node: " + target.value);
  }
  SimulationOutput out;

  ReadingOutcome reading =
      stage_paper_reading(graph, target, gateway, &out.trace, config.max_agents);
  out.failures.insert(out.failures.end(), reading.failures.begin(), reading.failures.end());

  out.paper = stage_paper_writing(graph, target, config, gateway, &out.trace, &out.failures);

  if (ground_truth_paper && !ground_truth_paper->empty()) {
    out.review = stage_review_writing(graph, target, *ground_truth_paper, config, gateway,
                                      &out.trace, &out.failures);
  }
  return out;
}

std::vector<NodeId> match_reviewers(const std::string& paper_abstract,
                                    const std::vector<std::pair<NodeId, std::string>>& pool,
                                    int k, const std::set<NodeId>& exclusions, Gateway& gateway) {
  if (k < 1) {
    throw EngineError(EngineErrorCode::Precondition, "matching", "k must be >= 1");
  }
  std::vector<std::pair<NodeId, std::string>> eligible;
  for (const auto& entry : pool) {
    if (!exclusions.count(entry.first)) eligible.push_back(entry);
  }
  if (static_cast<int>(eligible.size()) < k) {
    throw EngineError(EngineErrorCode::PoolTooSmall, "matching",
                      "pool has " + std::to_string(eligible.size()) + " candidates, need " +
                          std::to_string(k));
  }
  std::vector<std::string> texts{paper_abstract};
  for (const auto& [id, profile] : eligible) texts.push_back(profile);
  std::vector<EmbeddingVector> vectors = gateway.embed(texts);

  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    ranked.emplace_back(cosine(vectors[0], vectors[i + 1]), eligible[i].first);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back(ranked[static_cast<std::size_t>(i)].second);
  return out;
}

int combine_scores(const std::vector<int>& scores) {
  if (scores.empty()) {
    throw EngineError(EngineErrorCode::Precondition, "review", "no scores to combine");
  }
  long sum = 0;
  for (int s : scores) sum += s;
  long n = static_cast<long>(scores.size());
  return static_cast<int>((2 * sum + n) / (2 * n));
}

}  // namespace rcsim
