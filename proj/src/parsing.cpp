#include "rcsim/parsing.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace rcsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool consume_ci(const std::string& s, std::size_t& pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != word[i]) return false;
  }
  pos += word.size();
  return true;
}

void skip_ws(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

// "[Question 3] - trailing" -> {3, "trailing"}. Bracket and separator
// tolerant; case-insensitive.
struct Marker {
  int index;
  std::string trailing;
};

std::optional<Marker> match_question_marker(const std::string& line) {
  std::size_t pos = 0;
  skip_ws(line, pos);
  if (pos < line.size() && line[pos] == '[') {
    ++pos;
    skip_ws(line, pos);
  }
  if (!consume_ci(line, pos, "question")) return std::nullopt;
  skip_ws(line, pos);
  if (pos >= line.size() || !std::isdigit(static_cast<unsigned char>(line[pos]))) {
    return std::nullopt;
  }
  int index = 0;
  while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
    index = index * 10 + (line[pos] - '0');
    ++pos;
  }
  skip_ws(line, pos);
  if (pos < line.size() && line[pos] == ']') ++pos;
  skip_ws(line, pos);
  while (pos < line.size() && (line[pos] == '-' || line[pos] == ':' || line[pos] == '.')) {
    ++pos;
    skip_ws(line, pos);
  }
  return Marker{index, trim(line.substr(pos))};
}

}  // namespace

Paper5Q parse_paper5q(const std::string& reply) {
  std::array<std::vector<std::string>, 5> sections;
  std::array<bool, 5> seen{};
  int open = -1;  // 0-based index of the section being filled
  for (const std::string& line : split_lines(reply)) {
    auto marker = match_question_marker(line);
    // Markers outside 1..5 are ordinary content, not delimiters.
    if (marker && marker->index >= 1 && marker->index <= 5) {
      int idx = marker->index - 1;
      if (seen[static_cast<std::size_t>(idx)]) {
        throw ParseError(ParseErrorCode::DuplicateQuestionMarker,
                         "duplicate [Question " + std::to_string(marker->index) + "]");
      }
      if (idx != open + 1) {
        throw ParseError(ParseErrorCode::MissingQuestionMarker,
                         "missing [Question " + std::to_string(open + 2) + "]");
      }
      seen[static_cast<std::size_t>(idx)] = true;
      open = idx;
      if (!marker->trailing.empty()) {
        sections[static_cast<std::size_t>(idx)].push_back(marker->trailing);
      }
      continue;
    }
    if (open >= 0) sections[static_cast<std::size_t>(open)].push_back(line);
  }
  if (open != 4) {
    throw ParseError(ParseErrorCode::MissingQuestionMarker,
                     "missing [Question " + std::to_string(open + 2) + "]");
  }
  Paper5Q out;
  for (std::size_t i = 0; i < 5; ++i) {
    std::string joined;
    for (const std::string& l : sections[i]) {
      if (!joined.empty()) joined += '\n';
      joined += l;
    }
    out.answers[i] = trim(joined);
    if (out.answers[i].empty()) {
      throw ParseError(ParseErrorCode::EmptyAnswer,
                       "empty answer for [Question " + std::to_string(i + 1) + "]");
    }
  }
  return out;
}

std::string format_paper5q(const Paper5Q& paper) {
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    out += "[Question " + std::to_string(i + 1) + "]\n";
    out += paper.answers[i];
    out += '\n';
  }
  return out;
}

std::vector<std::string> parse_bullets(const std::string& reply) {
  std::vector<std::string> bullets;
  bool open = false;
  for (const std::string& raw : split_lines(reply)) {
    std::string line = trim(raw);
    if (!line.empty() && line[0] == '-') {
      bullets.push_back(trim(line.substr(1)));
      open = true;
    } else if (!line.empty() && open) {
      std::string& last = bullets.back();
      if (!last.empty()) last += ' ';
      last += line;
    }
    // blank lines and preamble fall through
  }
  std::erase_if(bullets, [](const std::string& b) { return b.empty(); });
  if (bullets.empty()) {
    throw ParseError(ParseErrorCode::NoBullets, "no bullet lines in reply");
  }
  return bullets;
}

std::string format_bullets(const std::vector<std::string>& bullets) {
  std::string out;
  for (const std::string& b : bullets) {
    out += "- " + b + "\n";
  }
  return out;
}

int parse_score(const std::string& reply) {
  for (std::size_t i = 0; i < reply.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(reply[i]))) continue;
    long value = 0;
    while (i < reply.size() && std::isdigit(static_cast<unsigned char>(reply[i]))) {
      value = value * 10 + (reply[i] - '0');
      if (value > 1000) value = 1000;  // saturate, range check below
      ++i;
    }
    if (value < 1 || value > 10) {
      throw ParseError(ParseErrorCode::ScoreOutOfRange,
                       "score " + std::to_string(value) + " outside 1..10");
    }
    return static_cast<int>(value);
  }
  throw ParseError(ParseErrorCode::NoScoreFound, "no integer token in reply");
}

std::string format_review(const ReviewRecord& review) {
  std::string out = "Score: " + std::to_string(review.score) + "\n";
  out += "Strength:\n" + format_bullets(review.strengths);
  out += "Weakness:\n" + format_bullets(review.weaknesses);
  return out;
}

}  // namespace rcsim
