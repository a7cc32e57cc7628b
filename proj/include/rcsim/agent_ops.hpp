#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcsim/gateway.hpp"
#include "rcsim/parsing.hpp"

namespace rcsim {

// One completed backend call, recorded for traces.
struct LlmCall {
  std::string prompt_hash;
  std::string reply_hash;
};
using CallLog = std::vector<LlmCall>;

enum class AgentOpErrorCode { Precondition, ParseFailure };

class AgentOpError : public std::runtime_error {
 public:
  AgentOpError(AgentOpErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  AgentOpErrorCode code() const { return code_; }

 private:
  AgentOpErrorCode code_;
};

// Persona synthesis over a publication history.
AgentProfile write_profile(const std::vector<std::string>& publications, Gateway& gateway,
                           CallLog* log = nullptr);

// Per-agent proposal (profile required; cited list may be empty when the
// agent writes from its profile alone).
Paper5Q write_proposal_message(const AgentProfile& profile,
                               const std::vector<std::string>& cited_abstracts, Gateway& gateway,
                               CallLog* log = nullptr);

// Profile-free proposal from cited papers only (data aggregation).
Paper5Q write_proposal_from_data(const std::vector<std::string>& cited_abstracts,
                                 Gateway& gateway, CallLog* log = nullptr);

// Profile-free proposal with empty context (self aggregation).
Paper5Q write_proposal_self(Gateway& gateway, CallLog* log = nullptr);

// Merge of candidate proposals into one.
Paper5Q aggregate_proposals(const std::vector<Paper5Q>& candidates, Gateway& gateway,
                            CallLog* log = nullptr);

std::vector<std::string> review_strength(const std::optional<AgentProfile>& profile,
                                         const std::string& full_paper,
                                         const std::vector<std::string>& cited_abstracts,
                                         Gateway& gateway, CallLog* log = nullptr);
std::vector<std::string> review_weakness(const std::optional<AgentProfile>& profile,
                                         const std::string& full_paper,
                                         const std::vector<std::string>& cited_abstracts,
                                         Gateway& gateway, CallLog* log = nullptr);
int review_score(const std::optional<AgentProfile>& profile,
                 const std::vector<std::string>& strengths,
                 const std::vector<std::string>& weaknesses, Gateway& gateway,
                 CallLog* log = nullptr);

std::vector<std::string> metareview_strength(const std::string& full_paper,
                                             const std::vector<ReviewRecord>& reviews,
                                             Gateway& gateway, CallLog* log = nullptr);
std::vector<std::string> metareview_weakness(const std::string& full_paper,
                                             const std::vector<ReviewRecord>& reviews,
                                             Gateway& gateway, CallLog* log = nullptr);

// Ground-truth format transforms.
Paper5Q transform_reference_paper(const std::string& introduction, Gateway& gateway,
                                  CallLog* log = nullptr);
std::vector<std::string> transform_reference_review(const std::string& review_text,
                                                    Gateway& gateway, CallLog* log = nullptr);

}  // namespace rcsim
