#include "rcsim/graph.hpp"

#include <algorithm>
#include <set>

namespace rcsim {

namespace {

[[noreturn]] void fail(GraphErrorCode code, const std::string& what) {
  throw GraphError(code, what);
}

}  // namespace

void CommunityGraph::add_agent(AgentNode agent) {
  if (agents_.count(agent.id) || papers_.count(agent.id)) {
    fail(GraphErrorCode::DuplicateId, "duplicate node id: " + agent.id.value);
  }
  if (agent.profile && agent.profile->empty()) {
    fail(GraphErrorCode::KindMismatch, "agent profile present but empty: " + agent.id.value);
  }
  agents_.emplace(agent.id, std::move(agent));
}

void CommunityGraph::add_paper(DataNode paper) {
  if (agents_.count(paper.id) || papers_.count(paper.id)) {
    fail(GraphErrorCode::DuplicateId, "duplicate node id: " + paper.id.value);
  }
  papers_.emplace(paper.id, std::move(paper));
}

void CommunityGraph::add_edge(Edge edge) {
  const bool src_agent = agents_.count(edge.src) > 0;
  const bool src_paper = papers_.count(edge.src) > 0;
  const bool dst_agent = agents_.count(edge.dst) > 0;
  const bool dst_paper = papers_.count(edge.dst) > 0;
  if (!(src_agent || src_paper) || !(dst_agent || dst_paper)) {
    fail(GraphErrorCode::DanglingEndpoint,
         "edge endpoint not in graph: " + edge.src.value + " -> " + edge.dst.value);
  }
  switch (edge.kind) {
    case EdgeKind::AgentAgent:
      // Community graphs never carry agent-agent edges.
      fail(GraphErrorCode::KindMismatch, "agent-agent edges are not accepted");
    case EdgeKind::Authorship:
    case EdgeKind::ReviewQualification: {
      const bool one_each = (src_agent && dst_paper) || (src_paper && dst_agent);
      if (!one_each) {
        fail(GraphErrorCode::KindMismatch,
             "agent-data edge must connect one agent and one paper: " + edge.src.value +
                 " -> " + edge.dst.value);
      }
      break;
    }
    case EdgeKind::Citation:
      if (!(src_paper && dst_paper)) {
        fail(GraphErrorCode::KindMismatch,
             "citation edge must connect two papers: " + edge.src.value + " -> " +
                 edge.dst.value);
      }
      break;
  }
  if (edge.kind != EdgeKind::Citation) {
    edge.section.reset();
  }
  edges_.push_back(std::move(edge));
}

std::string CommunityGraph::mask_node(const NodeId& id) {
  if (agents_.count(id)) {
    fail(GraphErrorCode::AgentNodeNotMaskable, "agent nodes cannot be masked: " + id.value);
  }
  auto it = papers_.find(id);
  if (it == papers_.end()) {
    fail(GraphErrorCode::UnknownNode, "unknown node: " + id.value);
  }
  if (it->second.content.empty()) {
    fail(GraphErrorCode::AlreadyMasked, "node already masked: " + id.value);
  }
  std::string saved = std::move(it->second.content);
  it->second.content.clear();
  return saved;
}

void CommunityGraph::unmask_node(const NodeId& id, std::string content) {
  auto it = papers_.find(id);
  if (it == papers_.end()) {
    fail(GraphErrorCode::UnknownNode, "unknown node: " + id.value);
  }
  it->second.content = std::move(content);
}

std::vector<NodeId> CommunityGraph::neighbors(const NodeId& id,
                                              std::optional<EdgeKind> kind) const {
  if (!agents_.count(id) && !papers_.count(id)) {
    fail(GraphErrorCode::UnknownNode, "unknown node: " + id.value);
  }
  std::set<NodeId> out;
  for (const Edge& e : edges_) {
    if (kind && e.kind != *kind) continue;
    if (e.src == id) out.insert(e.dst);
    if (e.dst == id) out.insert(e.src);
  }
  return {out.begin(), out.end()};
}

std::vector<std::pair<NodeId, std::optional<CitationSection>>>
CommunityGraph::citation_neighbors(const NodeId& id) const {
  if (!agents_.count(id) && !papers_.count(id)) {
    fail(GraphErrorCode::UnknownNode, "unknown node: " + id.value);
  }
  std::map<NodeId, std::optional<CitationSection>> out;
  for (const Edge& e : edges_) {
    if (e.kind != EdgeKind::Citation) continue;
    if (e.src == id) out.emplace(e.dst, e.section);
    if (e.dst == id) out.emplace(e.src, e.section);
  }
  return {out.begin(), out.end()};
}

const AgentNode& CommunityGraph::agent(const NodeId& id) const {
  auto it = agents_.find(id);
  if (it == agents_.end()) fail(GraphErrorCode::UnknownNode, "unknown agent: " + id.value);
  return it->second;
}

const DataNode& CommunityGraph::paper(const NodeId& id) const {
  auto it = papers_.find(id);
  if (it == papers_.end()) fail(GraphErrorCode::UnknownNode, "unknown paper: " + id.value);
  return it->second;
}

AgentNode& CommunityGraph::agent(const NodeId& id) {
  auto it = agents_.find(id);
  if (it == agents_.end()) fail(GraphErrorCode::UnknownNode, "unknown agent: " + id.value);
  return it->second;
}

DataNode& CommunityGraph::paper(const NodeId& id) {
  auto it = papers_.find(id);
  if (it == papers_.end()) fail(GraphErrorCode::UnknownNode, "unknown paper: " + id.value);
  return it->second;
}

}  // namespace rcsim
