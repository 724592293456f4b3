#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lls::graphs {

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
};

/// Directed multigraph whose vertices are components and whose edges are
/// nodes. Edge indices are stable and are what every other structure keys on.
class DualGraph {
 public:
  DualGraph() = default;
  DualGraph(std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// +1 if v is the tail of e, -1 if it is the head, 0 otherwise.
  int sigma(std::size_t e, std::size_t v) const;
  std::size_t other_end(std::size_t e, std::size_t v) const;
  /// Edge indices incident to v, in increasing order.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }

  /// First Betti number |E| - |V| + 1 (the genus contributed by the graph).
  long betti() const {
    return static_cast<long>(edges_.size()) - static_cast<long>(labels_.size()) + 1;
  }

  /// Same graph with edge e pointing the other way.
  DualGraph reversed(std::size_t e) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

struct GraphDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Loop-free and connected, with unique labels and in-range endpoints.
GraphDiagnostics validate(const DualGraph& g);

/// Vertices reachable from `start` without using any edge in `removed`.
std::vector<bool> reachable(const DualGraph& g, std::size_t start, const std::vector<bool>& removed);
bool is_connected(const DualGraph& g);

/// Chain structure: n(e) >= 1 per edge.
using ChainStructure = std::vector<int>;

bool is_trivial(const ChainStructure& n);

struct CollapsedEdge {
  std::size_t a = 0;  // smaller endpoint
  std::size_t b = 0;  // larger endpoint
  std::vector<std::size_t> parallel;  // edges of the original graph over this one
};

/// Simple graph obtained by merging parallel edges (ignoring direction).
struct CollapsedGraph {
  std::size_t num_vertices = 0;
  std::vector<CollapsedEdge> edges;
  std::vector<std::vector<std::size_t>> incident;  // collapsed edge ids per vertex
  std::vector<std::size_t> edge_class;             // original edge -> collapsed edge

  std::optional<std::size_t> between(std::size_t u, std::size_t v) const;
  std::size_t other_end(std::size_t ce, std::size_t v) const;
};

CollapsedGraph collapse(const DualGraph& g);
bool is_multitree(const DualGraph& g);

/// Vertices in the component of the collapsed graph minus edge `ce` that contains v.
std::vector<bool> side_of(const CollapsedGraph& c, std::size_t ce, std::size_t v);

/// The graph with every edge e replaced by a path of n(e) edges.
struct Subdivision {
  DualGraph graph;
  /// For each original edge, the vertices along its path from tail to head,
  /// both endpoints included (length n(e)+1).
  std::vector<std::vector<std::size_t>> path_vertices;
  /// For each original edge, the sub-edge ids along the path from tail to head.
  std::vector<std::vector<std::size_t>> path_edges;
  /// For each vertex of the subdivision: the original edge it lies on (or
  /// none for original vertices) and its 1-based position counted from the tail.
  std::vector<std::optional<std::size_t>> origin_edge;
  std::vector<int> position;
  std::size_t num_original_vertices = 0;

  bool is_exceptional(std::size_t u) const { return u >= num_original_vertices; }
};

Subdivision subdivide(const DualGraph& g, const ChainStructure& n);

}  // namespace lls::graphs
