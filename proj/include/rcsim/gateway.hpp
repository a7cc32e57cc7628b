#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>

#include "rcsim/llm.hpp"

namespace rcsim {

// Front door for all model traffic: bounds in-flight calls to the
// configured concurrency limit, retries transient failures with
// exponential backoff, and keeps prompts inside the character budget by
// collapsing the middle of list sections (instructions are never cut).
// Requests are idempotent reads, so retries have no side effects.
class Gateway {
 public:
  Gateway(std::shared_ptr<LlmBackend> backend, BackendConfig config,
          std::chrono::milliseconds backoff_base = std::chrono::milliseconds(250));

  std::string complete(const Prompt& prompt);
  std::string complete(const Prompt& prompt, const CompletionParams& params);
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts);

  const BackendConfig& config() const { return config_; }
  CompletionParams default_params() const;

  // Successful logical calls and raw attempts (includes retries).
  std::uint64_t completion_count() const { return completions_.load(); }
  std::uint64_t embedding_count() const { return embeddings_.load(); }
  std::uint64_t attempt_count() const { return attempts_.load(); }

  // Applies the character budget to a prompt; exposed for tests.
  static Prompt fit_to_budget(Prompt prompt, std::size_t char_budget);

 private:
  class Slot;
  template <typename Fn>
  auto with_retries(Fn&& fn) -> decltype(fn());

  std::shared_ptr<LlmBackend> backend_;
  BackendConfig config_;
  std::chrono::milliseconds backoff_base_;
  std::mutex mutex_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::atomic<std::uint64_t> completions_{0};
  std::atomic<std::uint64_t> embeddings_{0};
  std::atomic<std::uint64_t> attempts_{0};
};

// Builds the backend named by the config: the deterministic mock or the
// HTTP client.
std::shared_ptr<LlmBackend> make_backend(const BackendConfig& config);

}  // namespace rcsim
