#include "rcsim/mock_llm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rcsim/hash.hpp"

namespace rcsim {

namespace {

bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Short token derived from the prompt hash and a salt; gives each reply
// family distinct but reproducible content.
std::string tag(const std::string& serialized, int salt) {
  return hex16(fnv1a64(serialized, fnv1a64(std::to_string(salt)))).substr(0, 8);
}

std::string five_answer_block(const std::string& serialized) {
  std::string out;
  for (int i = 1; i <= 5; ++i) {
    out += "[Question " + std::to_string(i) + "]\n";
    out += "A" + std::to_string(i) + " " + tag(serialized, i) + "\n";
  }
  return out;
}

std::string hash_bullets(const std::string& serialized, char prefix) {
  std::string out;
  for (int k = 1; k <= 3; ++k) {
    out += "- ";
    out += prefix;
    out += std::to_string(k) + " " + tag(serialized, 16 * k + prefix) + "\n";
  }
  return out;
}

// Echo every bullet line already present in the prompt, first occurrence
// wins, capped; models the merge behavior of an aggregation call.
std::string echo_prompt_bullets(const std::string& serialized) {
  std::string out;
  std::set<std::string> seen;
  int emitted = 0;
  for (const std::string& raw : split_lines(serialized)) {
    std::string line = trim(raw);
    if (line.size() < 2 || line[0] != '-' || line[1] != ' ') continue;
    if (!seen.insert(line).second) continue;
    out += line + "\n";
    if (++emitted >= 16) break;
  }
  if (out.empty()) return hash_bullets(serialized, 'M');
  return out;
}

// Echo the text ahead of the rewrite instruction, one bullet per line.
std::string echo_transform_input(const Prompt& prompt, const std::string& serialized) {
  std::string source;
  for (auto it = prompt.rbegin(); it != prompt.rend(); ++it) {
    if (it->role != Role::User) continue;
    std::size_t cut = it->content.find("Please rewrite the following strength");
    source = it->content.substr(0, cut == std::string::npos ? it->content.size() : cut);
    break;
  }
  std::string out;
  for (const std::string& raw : split_lines(source)) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    out += "- " + line + "\n";
  }
  if (out.empty()) return "- item " + tag(serialized, 99) + "\n";
  return out;
}

std::string judge_json(const std::string& serialized) {
  static constexpr const char* kFields[] = {
      "Topic Consistency",
      "Method Consistency",
      "Factual Consistency",
      "Claim Consistency",
      "Application Context Consistency",
      "Overall Semantic Similarity",
      "Novelty of Reference Proposal",
      "Feasibility of Reference Proposal",
      "Novelty of Generated Proposal",
      "Feasibility of Generated Proposal",
  };
  std::string out = "{\n";
  for (int i = 0; i < 10; ++i) {
    std::uint64_t v = fnv1a64(serialized, fnv1a64(std::string("judge") + std::to_string(i))) % 11;
    out += "  \"" + std::string(kFields[i]) + "\": " + std::to_string(v);
    out += (i + 1 < 10) ? ",\n" : "\n";
  }
  out += "}";
  return out;
}

std::string persona_text(const std::string& serialized) {
  return "I am a researcher working on " + tag(serialized, 201) +
         ". My recent publications study " + tag(serialized, 202) + " and " +
         tag(serialized, 203) + ", with methods built around " + tag(serialized, 204) +
         ". I focus on rigorous evaluation and collaborative projects.";
}

}  // namespace

std::string MockBackend::complete(const Prompt& prompt, const CompletionParams&) {
  if (prompt.empty()) {
    throw LlmError(LlmErrorCode::Precondition, "complete() requires at least one message");
  }
  const std::string serialized = serialize_prompt(prompt);
  const std::uint64_t h = fnv1a64(serialized);

  if (contains(serialized, "rewrite the following strength in bullet points")) {
    return echo_transform_input(prompt, serialized);
  }
  if (contains(serialized, "You should just provide one number as the score")) {
    return std::to_string(1 + (h % 10));
  }
  if (contains(serialized, "You should write the weaknesses of this paper.")) {
    return hash_bullets(serialized, 'W');
  }
  if (contains(serialized, "You should write the strength of this paper.")) {
    return hash_bullets(serialized, 'S');
  }
  if (contains(serialized, "important points from the `strength' section") ||
      contains(serialized, "important points from the `weakness' section")) {
    return echo_prompt_bullets(serialized);
  }
  if (contains(serialized, "Respond strictly in JSON format")) {
    return judge_json(serialized);
  }
  if (contains(serialized, "[Question 1]")) {
    return five_answer_block(serialized);
  }
  if (contains(serialized, "Please begin writing the first-person persona")) {
    return persona_text(serialized);
  }
  return "reply " + tag(serialized, 0);
}

std::vector<double> MockBackend::trigram_embedding(const std::string& text) {
  std::vector<double> v(kEmbeddingDims, 0.0);
  if (text.size() < 3) {
    v[fnv1a64(text) % kEmbeddingDims] += 1.0;
  } else {
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      v[fnv1a64(std::string_view(text).substr(i, 3)) % kEmbeddingDims] += 1.0;
    }
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<EmbeddingVector> MockBackend::embed(const std::vector<std::string>& texts,
                                                const std::string& model_name) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) {
    if (t.empty()) {
      throw LlmError(LlmErrorCode::Precondition, "embed() requires non-empty texts");
    }
    out.push_back({trigram_embedding(t), model_name});
  }
  return out;
}

}  // namespace rcsim
