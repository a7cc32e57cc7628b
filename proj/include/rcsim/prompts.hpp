#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcsim/llm.hpp"

namespace rcsim::prompts {

// Version tag of the bundled template set; recorded in run manifests.
inline constexpr std::string_view kVersion = "1";

// Persona synthesis from a publication history (one-shot template).
Prompt profile_from_publications(const std::vector<std::string>& publications);

// Per-agent proposal message. The profile exchange is omitted when no
// profile is given (profile-free aggregator call); the related-papers
// block is omitted when the cited list is empty.
Prompt proposal_message(const std::optional<std::string>& profile,
                        const std::vector<std::string>& cited_abstracts);

// Merge of candidate proposals into one (profile-free aggregator).
Prompt proposal_aggregation(const std::vector<std::string>& candidates);

Prompt review_strength(const std::optional<std::string>& profile,
                       const std::string& full_paper,
                       const std::vector<std::string>& cited_abstracts);
Prompt review_weakness(const std::optional<std::string>& profile,
                       const std::string& full_paper,
                       const std::vector<std::string>& cited_abstracts);
Prompt review_score(const std::optional<std::string>& profile,
                    const std::string& strengths_text,
                    const std::string& weaknesses_text);

Prompt metareview_strength(const std::string& full_paper,
                           const std::vector<std::string>& review_texts);
Prompt metareview_weakness(const std::string& full_paper,
                           const std::vector<std::string>& review_texts);

// Ground-truth format transforms.
Prompt paper_transform(const std::string& introduction);
Prompt review_transform(const std::string& strength_or_weakness);

// Fine-grained similarity judge over a reference/generated proposal pair.
Prompt judge(const std::string& reference_text, const std::string& generated_text);

// Re-prompt after a malformed reply: original messages, the bad reply,
// and a stricter format reminder.
Prompt with_format_reminder(Prompt prompt, const std::string& bad_reply,
                            std::string_view reminder);

inline constexpr std::string_view kFiveQuestionReminder =
    "Your previous reply was not in the required format. Answer all five "
    "questions again, each introduced by its exact marker line [Question 1] "
    "through [Question 5], with a non-empty answer under every marker.";
inline constexpr std::string_view kBulletReminder =
    "Your previous reply was not in the required format. Reply only with "
    "bullet points, one per line, each line starting with '- '.";

}  // namespace rcsim::prompts
