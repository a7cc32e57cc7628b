#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcsim {

// Opaque node identifier, unique within one graph.
struct NodeId {
  std::string value;

  auto operator<=>(const NodeId&) const = default;
};

enum class EdgeKind {
  AgentAgent,
  Authorship,
  ReviewQualification,
  Citation,
};

enum class PaperKind {
  AbstractOnly,
  FullPaper,
  Condensed5Q,
};

// Section of the citing paper an edge was extracted from. Unlabeled
// citation edges count as Other for filtering purposes.
enum class CitationSection {
  RelatedWork,
  Introduction,
  Other,
};

struct AgentNode {
  NodeId id;
  std::string name;
  std::optional<std::string> profile;   // hidden state; absent until paper reading
  std::vector<std::string> publications;
};

struct DataNode {
  NodeId id;
  std::string content;                  // hidden state; empty means masked
  PaperKind kind = PaperKind::AbstractOnly;
};

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeKind kind = EdgeKind::Citation;
  std::optional<CitationSection> section;  // citation edges only

  bool operator==(const Edge&) const = default;
};

enum class GraphErrorCode {
  DuplicateId,
  DanglingEndpoint,
  KindMismatch,
  UnknownNode,
  AgentNodeNotMaskable,
  AlreadyMasked,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrorCode code() const { return code_; }

 private:
  GraphErrorCode code_;
};

// Heterogeneous graph of researcher agents and paper data nodes.
//
// Edges are stored directed but traversed undirected for neighborhoods.
// Mutation ops validate every invariant up front; once a simulation pass
// starts the graph is treated as an immutable snapshot (copy to branch),
// so concurrent reads are safe.
class CommunityGraph {
 public:
  void add_agent(AgentNode agent);
  void add_paper(DataNode paper);

  // Rejects dangling endpoints, endpoint types that do not match the edge
  // kind, and agent-agent edges (never part of a community graph).
  void add_edge(Edge edge);

  // Clears the paper's content (its hidden state) and returns the prior
  // text. Metadata and edges are preserved.
  std::string mask_node(const NodeId& id);

  // Restores content saved by mask_node.
  void unmask_node(const NodeId& id, std::string content);

  // All nodes adjacent to `id` via edges of `kind` (or any kind), in
  // ascending NodeId order. Deterministic by construction.
  std::vector<NodeId> neighbors(const NodeId& id,
                                std::optional<EdgeKind> kind = std::nullopt) const;

  // Citation edges incident to `id`, each paired with the neighboring
  // paper, in ascending neighbor order.
  std::vector<std::pair<NodeId, std::optional<CitationSection>>> citation_neighbors(
      const NodeId& id) const;

  bool has_agent(const NodeId& id) const { return agents_.count(id) > 0; }
  bool has_paper(const NodeId& id) const { return papers_.count(id) > 0; }

  const AgentNode& agent(const NodeId& id) const;
  const DataNode& paper(const NodeId& id) const;
  AgentNode& agent(const NodeId& id);
  DataNode& paper(const NodeId& id);

  const std::map<NodeId, AgentNode>& agents() const { return agents_; }
  const std::map<NodeId, DataNode>& papers() const { return papers_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::map<NodeId, AgentNode> agents_;
  std::map<NodeId, DataNode> papers_;
  std::vector<Edge> edges_;
};

}  // namespace rcsim
