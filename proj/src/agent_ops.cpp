#include "rcsim/agent_ops.hpp"

#include "rcsim/hash.hpp"
#include "rcsim/prompts.hpp"

namespace rcsim {

namespace {

constexpr std::string_view kScoreReminder =
    "Your previous reply was not in the required format. Reply with one integer between 1 and "
    "10 and nothing else.";

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string complete_logged(Gateway& gateway, const Prompt& prompt, CallLog* log) {
  std::string reply = gateway.complete(prompt);
  if (log) log->push_back({fnv_hex(serialize_prompt(prompt)), fnv_hex(reply)});
  return reply;
}

// Temperature 0 makes a repeated identical failure likely; one stricter
// re-prompt, then a hard error.
template <typename Parse>
auto complete_parsed(Gateway& gateway, const Prompt& prompt, std::string_view reminder,
                     CallLog* log, Parse parse) -> decltype(parse(std::string())) {
  std::string reply = complete_logged(gateway, prompt, log);
  try {
    return parse(reply);
  } catch (const ParseError&) {
    Prompt retry = prompts::with_format_reminder(prompt, reply, reminder);
    std::string second = complete_logged(gateway, retry, log);
    try {
      return parse(second);
    } catch (const ParseError& e) {
      throw AgentOpError(AgentOpErrorCode::ParseFailure,
                         std::string("reply unparseable after retry: ") + e.what());
    }
  }
}

std::vector<std::string> candidate_texts(const std::vector<Paper5Q>& candidates) {
  std::vector<std::string> out;
  out.reserve(candidates.size());
  for (const Paper5Q& c : candidates) out.push_back(format_paper5q(c));
  return out;
}

std::vector<std::string> review_texts(const std::vector<ReviewRecord>& reviews) {
  std::vector<std::string> out;
  out.reserve(reviews.size());
  for (const ReviewRecord& r : reviews) out.push_back(format_review(r));
  return out;
}

std::optional<std::string> profile_text(const std::optional<AgentProfile>& profile) {
  if (!profile) return std::nullopt;
  return profile->text;
}

}  // namespace

AgentProfile write_profile(const std::vector<std::string>& publications, Gateway& gateway,
                           CallLog* log) {
  if (publications.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition,
                       "profile synthesis requires at least one publication");
  }
  std::string reply =
      complete_logged(gateway, prompts::profile_from_publications(publications), log);
  std::string text = trim(reply);
  if (text.empty()) {
    throw AgentOpError(AgentOpErrorCode::ParseFailure, "empty persona reply");
  }
  return AgentProfile{std::move(text)};
}

Paper5Q write_proposal_message(const AgentProfile& profile,
                               const std::vector<std::string>& cited_abstracts, Gateway& gateway,
                               CallLog* log) {
  if (profile.text.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "proposal message requires a profile");
  }
  return complete_parsed(gateway, prompts::proposal_message(profile.text, cited_abstracts),
                         prompts::kFiveQuestionReminder, log, parse_paper5q);
}

Paper5Q write_proposal_from_data(const std::vector<std::string>& cited_abstracts,
                                 Gateway& gateway, CallLog* log) {
  if (cited_abstracts.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition,
                       "data aggregation requires at least one cited abstract");
  }
  return complete_parsed(gateway, prompts::proposal_message(std::nullopt, cited_abstracts),
                         prompts::kFiveQuestionReminder, log, parse_paper5q);
}

Paper5Q write_proposal_self(Gateway& gateway, CallLog* log) {
  return complete_parsed(gateway, prompts::proposal_message(std::nullopt, {}),
                         prompts::kFiveQuestionReminder, log, parse_paper5q);
}

Paper5Q aggregate_proposals(const std::vector<Paper5Q>& candidates, Gateway& gateway,
                            CallLog* log) {
  if (candidates.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "nothing to aggregate");
  }
  return complete_parsed(gateway, prompts::proposal_aggregation(candidate_texts(candidates)),
                         prompts::kFiveQuestionReminder, log, parse_paper5q);
}

std::vector<std::string> review_strength(const std::optional<AgentProfile>& profile,
                                         const std::string& full_paper,
                                         const std::vector<std::string>& cited_abstracts,
                                         Gateway& gateway, CallLog* log) {
  if (full_paper.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "review requires non-empty paper text");
  }
  return complete_parsed(
      gateway, prompts::review_strength(profile_text(profile), full_paper, cited_abstracts),
      prompts::kBulletReminder, log, parse_bullets);
}

std::vector<std::string> review_weakness(const std::optional<AgentProfile>& profile,
                                         const std::string& full_paper,
                                         const std::vector<std::string>& cited_abstracts,
                                         Gateway& gateway, CallLog* log) {
  if (full_paper.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "review requires non-empty paper text");
  }
  return complete_parsed(
      gateway, prompts::review_weakness(profile_text(profile), full_paper, cited_abstracts),
      prompts::kBulletReminder, log, parse_bullets);
}

int review_score(const std::optional<AgentProfile>& profile,
                 const std::vector<std::string>& strengths,
                 const std::vector<std::string>& weaknesses, Gateway& gateway, CallLog* log) {
  if (strengths.empty() || weaknesses.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition,
                       "scoring requires both strength and weakness bullets");
  }
  return complete_parsed(gateway,
                         prompts::review_score(profile_text(profile), format_bullets(strengths),
                                               format_bullets(weaknesses)),
                         kScoreReminder, log, parse_score);
}

std::vector<std::string> metareview_strength(const std::string& full_paper,
                                             const std::vector<ReviewRecord>& reviews,
                                             Gateway& gateway, CallLog* log) {
  if (reviews.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "metareview requires at least one review");
  }
  return complete_parsed(gateway, prompts::metareview_strength(full_paper, review_texts(reviews)),
                         prompts::kBulletReminder, log, parse_bullets);
}

std::vector<std::string> metareview_weakness(const std::string& full_paper,
                                             const std::vector<ReviewRecord>& reviews,
                                             Gateway& gateway, CallLog* log) {
  if (reviews.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "metareview requires at least one review");
  }
  return complete_parsed(gateway, prompts::metareview_weakness(full_paper, review_texts(reviews)),
                         prompts::kBulletReminder, log, parse_bullets);
}

Paper5Q transform_reference_paper(const std::string& introduction, Gateway& gateway,
                                  CallLog* log) {
  if (introduction.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "transform requires non-empty text");
  }
  return complete_parsed(gateway, prompts::paper_transform(introduction),
                         prompts::kFiveQuestionReminder, log, parse_paper5q);
}

std::vector<std::string> transform_reference_review(const std::string& review_text,
                                                    Gateway& gateway, CallLog* log) {
  if (review_text.empty()) {
    throw AgentOpError(AgentOpErrorCode::Precondition, "transform requires non-empty text");
  }
  return complete_parsed(gateway, prompts::review_transform(review_text),
                         prompts::kBulletReminder, log, parse_bullets);
}

}  // namespace rcsim
