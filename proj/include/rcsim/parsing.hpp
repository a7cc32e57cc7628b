#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcsim {

// Condensed paper: ordered answers to the five core research questions.
struct Paper5Q {
  std::array<std::string, 5> answers;

  bool operator==(const Paper5Q&) const = default;
};

// Review: strength/weakness bullets plus an integer score in 1..10.
struct ReviewRecord {
  std::vector<std::string> strengths;
  std::vector<std::string> weaknesses;
  int score = 0;

  bool operator==(const ReviewRecord&) const = default;
};

// Text persona synthesized from an author's publication history.
struct AgentProfile {
  std::string text;

  bool operator==(const AgentProfile&) const = default;
};

enum class ParseErrorCode {
  MissingQuestionMarker,
  DuplicateQuestionMarker,
  EmptyAnswer,
  NoBullets,
  NoScoreFound,
  ScoreOutOfRange,
  BadField,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ParseErrorCode code() const { return code_; }

 private:
  ParseErrorCode code_;
};

// Answers are delimited by lines matching "[Question i]" (case-insensitive,
// bracket-tolerant); text after the marker up to the next marker is the
// answer. All five markers must appear exactly once, in order.
Paper5Q parse_paper5q(const std::string& reply);
std::string format_paper5q(const Paper5Q& paper);

// Bullets are lines whose first non-whitespace char is '-'; continuation
// lines are appended to the previous bullet. Preamble lines are ignored.
std::vector<std::string> parse_bullets(const std::string& reply);
std::string format_bullets(const std::vector<std::string>& bullets);

// First integer token of the reply; must lie in 1..10. Never clamps.
int parse_score(const std::string& reply);

// One review rendered as text for aggregation prompts.
std::string format_review(const ReviewRecord& review);

}  // namespace rcsim
