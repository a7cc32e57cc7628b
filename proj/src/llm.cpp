#include "rcsim/llm.hpp"

namespace rcsim {

std::string role_name(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

std::string serialize_prompt(const Prompt& prompt) {
  std::string out;
  for (const ChatMessage& m : prompt) {
    out += role_name(m.role);
    out += '\x1f';
    out += m.content;
    out += '\x1e';
  }
  return out;
}

}  // namespace rcsim
