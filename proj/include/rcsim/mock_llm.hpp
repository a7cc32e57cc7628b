#pragma once

#include "rcsim/llm.hpp"

namespace rcsim {

// Offline stand-in for a chat/embedding provider. Replies are pure
// functions of the prompt bytes: the prompt family is detected from the
// unique instruction line of each template and a minimal well-formed
// response of that family is derived from a 64-bit hash of the prompt.
// Byte-identical inputs give byte-identical outputs on every platform.
class MockBackend final : public LlmBackend {
 public:
  static constexpr int kEmbeddingDims = 256;

  std::string complete(const Prompt& prompt, const CompletionParams& params) override;
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                     const std::string& model_name) override;

  // Character-trigram hashing into kEmbeddingDims buckets, L2-normalized.
  // Texts shorter than 3 chars hash as a single feature. Exposed for tests.
  static std::vector<double> trigram_embedding(const std::string& text);
};

}  // namespace rcsim
