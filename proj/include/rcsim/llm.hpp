#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcsim {

enum class Role { System, User, Assistant };

std::string role_name(Role role);

struct ChatMessage {
  Role role = Role::User;
  std::string content;
  // Byte range of the collapsible list section within content (numbered
  // abstracts, candidate proposals, reviews). Middle-truncation applies
  // only inside this range; instruction text is never cut.
  std::optional<std::pair<std::size_t, std::size_t>> list_section;

  bool operator==(const ChatMessage& other) const {
    return role == other.role && content == other.content;
  }
};

using Prompt = std::vector<ChatMessage>;

// Canonical byte serialization of a prompt, used for hashing and for the
// mock backend's derivations. Role and content separated by 0x1f, messages
// by 0x1e.
std::string serialize_prompt(const Prompt& prompt);

struct CompletionParams {
  std::string model_name = "mock";
  double temperature = 0.0;
  int max_output_tokens = 4096;
};

struct EmbeddingVector {
  std::vector<double> values;
  std::string model_name;
};

enum class BackendKind { HttpApi, Mock };

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  std::string endpoint = "https://api.openai.com/v1";
  std::string credential_env_var = "RCSIM_API_KEY";
  std::string model_name = "mock";
  std::string embedding_model_name = "mock-trigram-256";
  double temperature = 0.0;
  int max_output_tokens = 4096;
  std::chrono::milliseconds request_timeout{60000};
  int max_retries = 3;
  int concurrency_limit = 4;
  std::size_t prompt_char_budget = 200000;
};

enum class LlmErrorCode {
  NetworkFailure,
  AuthFailure,
  RateLimited,
  EmptyResponse,
  Precondition,
};

class LlmError : public std::runtime_error {
 public:
  LlmError(LlmErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  LlmErrorCode code() const { return code_; }
  bool retryable() const {
    return code_ == LlmErrorCode::NetworkFailure || code_ == LlmErrorCode::RateLimited;
  }

 private:
  LlmErrorCode code_;
};

// Chat-completion + embedding provider. Implementations must be safe to
// call from multiple threads.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string complete(const Prompt& prompt, const CompletionParams& params) = 0;
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                             const std::string& model_name) = 0;
};

}  // namespace rcsim
