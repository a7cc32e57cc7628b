#include "rcsim/http_llm.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace rcsim {

namespace {

using nlohmann::json;

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // prefix such as /v1
};

SplitUrl split_endpoint(const std::string& endpoint) {
  std::size_t scheme_end = endpoint.find("://");
  std::size_t host_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  std::size_t path_begin = endpoint.find('/', host_begin);
  if (path_begin == std::string::npos) return {endpoint, ""};
  std::string path = endpoint.substr(path_begin);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {endpoint.substr(0, path_begin), path};
}

[[noreturn]] void raise_http_error(int status, const std::string& body) {
  if (status == 401 || status == 403) {
    throw LlmError(LlmErrorCode::AuthFailure, "auth failure (" + std::to_string(status) + ")");
  }
  if (status == 429) {
    throw LlmError(LlmErrorCode::RateLimited, "rate limited (429)");
  }
  throw LlmError(LlmErrorCode::NetworkFailure,
                 "http status " + std::to_string(status) + ": " + body.substr(0, 200));
}

}  // namespace

struct HttpBackend::Impl {
  SplitUrl url;
  std::string api_key;
  std::chrono::milliseconds timeout;

  json post(const std::string& route, const json& body) {
    httplib::Client client(url.base);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
    auto res = client.Post(url.path + route, headers, body.dump(), "application/json");
    if (!res) {
      throw LlmError(LlmErrorCode::NetworkFailure,
                     "request failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      raise_http_error(res->status, res->body);
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
      throw LlmError(LlmErrorCode::EmptyResponse, "response body is not JSON");
    }
    return parsed;
  }
};

HttpBackend::HttpBackend(const BackendConfig& config) : impl_(std::make_unique<Impl>()) {
  impl_->url = split_endpoint(config.endpoint);
  impl_->timeout = config.request_timeout;
  if (const char* key = std::getenv(config.credential_env_var.c_str())) {
    impl_->api_key = key;
  }
  if (impl_->api_key.empty()) {
    throw LlmError(LlmErrorCode::AuthFailure,
                   "credential env var " + config.credential_env_var + " is not set");
  }
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::complete(const Prompt& prompt, const CompletionParams& params) {
  if (prompt.empty()) {
    throw LlmError(LlmErrorCode::Precondition, "complete() requires at least one message");
  }
  json messages = json::array();
  for (const ChatMessage& m : prompt) {
    messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  }
  json body = {
      {"model", params.model_name},
      {"temperature", params.temperature},
      {"max_tokens", params.max_output_tokens},
      {"messages", std::move(messages)},
  };
  json reply = impl_->post("/chat/completions", body);
  if (!reply.contains("choices") || reply["choices"].empty()) {
    throw LlmError(LlmErrorCode::EmptyResponse, "no choices in completion response");
  }
  std::string text = reply["choices"][0].value("message", json::object()).value("content", "");
  if (text.empty()) {
    throw LlmError(LlmErrorCode::EmptyResponse, "empty completion content");
  }
  return text;
}

std::vector<EmbeddingVector> HttpBackend::embed(const std::vector<std::string>& texts,
                                                const std::string& model_name) {
  for (const std::string& t : texts) {
    if (t.empty()) {
      throw LlmError(LlmErrorCode::Precondition, "embed() requires non-empty texts");
    }
  }
  json body = {{"model", model_name}, {"input", texts}};
  json reply = impl_->post("/embeddings", body);
  if (!reply.contains("data") || reply["data"].size() != texts.size()) {
    throw LlmError(LlmErrorCode::EmptyResponse, "embedding response cardinality mismatch");
  }
  std::vector<EmbeddingVector> out(texts.size());
  for (const json& item : reply["data"]) {
    std::size_t index = item.value("index", out.size());
    if (index >= out.size()) {
      throw LlmError(LlmErrorCode::EmptyResponse, "embedding index out of range");
    }
    out[index].model_name = model_name;
    out[index].values = item.value("embedding", std::vector<double>{});
    if (out[index].values.empty()) {
      throw LlmError(LlmErrorCode::EmptyResponse, "empty embedding vector");
    }
  }
  return out;
}

}  // namespace rcsim
