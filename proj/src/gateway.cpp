#include "rcsim/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rcsim/http_llm.hpp"
#include "rcsim/mock_llm.hpp"

namespace rcsim {

namespace {
constexpr std::string_view kTruncationMarker = "\n[... truncated ...]\n";
}

class Gateway::Slot {
 public:
  Slot(Gateway& g) : g_(g) {
    std::unique_lock lock(g_.mutex_);
    g_.cv_.wait(lock, [&] { return g_.in_flight_ < g_.config_.concurrency_limit; });
    ++g_.in_flight_;
  }
  ~Slot() {
    {
      std::lock_guard lock(g_.mutex_);
      --g_.in_flight_;
    }
    g_.cv_.notify_one();
  }

 private:
  Gateway& g_;
};

Gateway::Gateway(std::shared_ptr<LlmBackend> backend, BackendConfig config,
                 std::chrono::milliseconds backoff_base)
    : backend_(std::move(backend)), config_(std::move(config)), backoff_base_(backoff_base) {
  if (config_.concurrency_limit < 1) {
    throw LlmError(LlmErrorCode::Precondition, "concurrency limit must be >= 1");
  }
}

CompletionParams Gateway::default_params() const {
  CompletionParams p;
  p.model_name = config_.model_name;
  p.temperature = config_.temperature;
  p.max_output_tokens = config_.max_output_tokens;
  return p;
}

template <typename Fn>
auto Gateway::with_retries(Fn&& fn) -> decltype(fn()) {
  for (int attempt = 0;; ++attempt) {
    attempts_.fetch_add(1);
    try {
      return fn();
    } catch (const LlmError& e) {
      if (!e.retryable() || attempt >= config_.max_retries) throw;
      std::this_thread::sleep_for(backoff_base_ * (1 << attempt));
    }
  }
}

std::string Gateway::complete(const Prompt& prompt) {
  return complete(prompt, default_params());
}

std::string Gateway::complete(const Prompt& prompt, const CompletionParams& params) {
  if (prompt.empty()) {
    throw LlmError(LlmErrorCode::Precondition, "complete() requires at least one message");
  }
  if (params.temperature < 0.0) {
    throw LlmError(LlmErrorCode::Precondition, "temperature must be >= 0");
  }
  Prompt fitted = fit_to_budget(prompt, config_.prompt_char_budget);
  Slot slot(*this);
  std::string reply = with_retries([&] { return backend_->complete(fitted, params); });
  if (reply.empty()) {
    throw LlmError(LlmErrorCode::EmptyResponse, "backend returned an empty reply");
  }
  completions_.fetch_add(1);
  return reply;
}

std::vector<EmbeddingVector> Gateway::embed(const std::vector<std::string>& texts) {
  for (const std::string& t : texts) {
    if (t.empty()) {
      throw LlmError(LlmErrorCode::Precondition, "embed() requires non-empty texts");
    }
  }
  Slot slot(*this);
  auto out = with_retries([&] { return backend_->embed(texts, config_.embedding_model_name); });
  if (out.size() != texts.size()) {
    throw LlmError(LlmErrorCode::EmptyResponse, "embedding cardinality mismatch");
  }
  for (const EmbeddingVector& v : out) {
    if (v.values.size() != out.front().values.size()) {
      throw LlmError(LlmErrorCode::EmptyResponse, "inconsistent embedding lengths in batch");
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) {
        throw LlmError(LlmErrorCode::EmptyResponse, "non-finite embedding entry");
      }
    }
  }
  embeddings_.fetch_add(1);
  return out;
}

Prompt Gateway::fit_to_budget(Prompt prompt, std::size_t char_budget) {
  std::size_t total = 0;
  for (const ChatMessage& m : prompt) total += m.content.size();
  if (total <= char_budget) return prompt;

  // Largest list sections collapse first (cited-abstract blocks dominate).
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < prompt.size(); ++i) {
    const auto& sec = prompt[i].list_section;
    if (sec && sec->second > sec->first && sec->second <= prompt[i].content.size()) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto len = [&](std::size_t i) {
      return prompt[i].list_section->second - prompt[i].list_section->first;
    };
    return len(a) > len(b);
  });

  for (std::size_t idx : order) {
    if (total <= char_budget) break;
    ChatMessage& m = prompt[idx];
    auto [begin, end] = *m.list_section;
    std::size_t section_len = end - begin;
    if (section_len <= kTruncationMarker.size()) continue;
    std::size_t excess = total - char_budget;
    std::size_t remove = std::min(excess + kTruncationMarker.size(), section_len);
    std::size_t keep = section_len - remove;
    std::size_t keep_head = keep / 2;
    // Cut from the middle of the section, keep head and tail.
    std::string rebuilt = m.content.substr(0, begin + keep_head);
    rebuilt += kTruncationMarker;
    rebuilt += m.content.substr(begin + section_len - (keep - keep_head));
    total -= m.content.size() - rebuilt.size();
    m.content = std::move(rebuilt);
    m.list_section = {begin, begin + keep + kTruncationMarker.size()};
  }
  return prompt;
}

std::shared_ptr<LlmBackend> make_backend(const BackendConfig& config) {
  if (config.kind == BackendKind::Mock) return std::make_shared<MockBackend>();
  return std::make_shared<HttpBackend>(config);
}

}  // namespace rcsim
