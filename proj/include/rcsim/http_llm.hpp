#pragma once

#include <memory>
#include <string>

#include "rcsim/llm.hpp"

namespace rcsim {

// Provider-compatible HTTP client: POST {endpoint}/chat/completions and
// {endpoint}/embeddings with JSON bodies. The bearer token is read from
// the env var named in the config at construction time.
class HttpBackend final : public LlmBackend {
 public:
  explicit HttpBackend(const BackendConfig& config);
  ~HttpBackend() override;

  std::string complete(const Prompt& prompt, const CompletionParams& params) override;
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                     const std::string& model_name) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rcsim
