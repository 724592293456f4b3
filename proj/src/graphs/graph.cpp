#include "lls/graphs/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace lls::graphs {

DualGraph::DualGraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)), incident_(labels_.size()) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.tail < labels_.size()) incident_[ed.tail].push_back(e);
    if (ed.head < labels_.size() && ed.head != ed.tail) incident_[ed.head].push_back(e);
  }
}

std::optional<std::size_t> DualGraph::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

int DualGraph::sigma(std::size_t e, std::size_t v) const {
  const auto& ed = edges_.at(e);
  if (ed.tail == v) return 1;
  if (ed.head == v) return -1;
  return 0;
}

std::size_t DualGraph::other_end(std::size_t e, std::size_t v) const {
  const auto& ed = edges_.at(e);
  if (ed.tail == v) return ed.head;
  if (ed.head == v) return ed.tail;
  throw std::invalid_argument("vertex is not an endpoint of edge " + std::to_string(e));
}

DualGraph DualGraph::reversed(std::size_t e) const {
  auto edges = edges_;
  std::swap(edges.at(e).tail, edges.at(e).head);
  return DualGraph(labels_, std::move(edges));
}

std::vector<bool> reachable(const DualGraph& g, std::size_t start, const std::vector<bool>& removed) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto e : g.incident(v)) {
      if (!removed.empty() && removed[e]) continue;
      auto u = g.other_end(e, v);
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

bool is_connected(const DualGraph& g) {
  if (g.num_vertices() == 0) return false;
  auto seen = reachable(g, 0, {});
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

GraphDiagnostics validate(const DualGraph& g) {
  GraphDiagnostics d;
  auto fail = [&d](std::string msg) {
    d.ok = false;
    d.problems.push_back(std::move(msg));
  };
  if (g.num_vertices() == 0) fail("graph has no vertices");
  std::set<std::string> seen;
  for (const auto& l : g.labels())
    if (!seen.insert(l).second) fail("duplicate vertex label '" + l + "'");
  bool endpoints_ok = true;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.tail >= g.num_vertices() || ed.head >= g.num_vertices()) {
      fail("edge " + std::to_string(e) + " has an endpoint out of range");
      endpoints_ok = false;
    } else if (ed.tail == ed.head) {
      fail("edge " + std::to_string(e) + " is a loop at '" + g.label(ed.tail) + "'");
      endpoints_ok = false;
    }
  }
  if (endpoints_ok && g.num_vertices() > 0) {
    auto reach = reachable(g, 0, {});
    std::string missing;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (!reach[v]) missing += (missing.empty() ? "" : ", ") + g.label(v);
    if (!missing.empty()) fail("graph is disconnected; unreachable from '" + g.label(0) + "': " + missing);
  }
  return d;
}

bool is_trivial(const ChainStructure& n) {
  return std::all_of(n.begin(), n.end(), [](int k) { return k == 1; });
}

std::optional<std::size_t> CollapsedGraph::between(std::size_t u, std::size_t v) const {
  for (auto ce : incident.at(u))
    if (other_end(ce, u) == v) return ce;
  return std::nullopt;
}

std::size_t CollapsedGraph::other_end(std::size_t ce, std::size_t v) const {
  const auto& e = edges.at(ce);
  if (e.a == v) return e.b;
  if (e.b == v) return e.a;
  throw std::invalid_argument("vertex is not on collapsed edge");
}

CollapsedGraph collapse(const DualGraph& g) {
  CollapsedGraph c;
  c.num_vertices = g.num_vertices();
  c.incident.assign(g.num_vertices(), {});
  c.edge_class.assign(g.num_edges(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto a = std::min(g.edge(e).tail, g.edge(e).head);
    auto b = std::max(g.edge(e).tail, g.edge(e).head);
    auto [it, fresh] = index.try_emplace({a, b}, c.edges.size());
    if (fresh) {
      c.edges.push_back({a, b, {}});
      c.incident[a].push_back(it->second);
      c.incident[b].push_back(it->second);
    }
    c.edges[it->second].parallel.push_back(e);
    c.edge_class[e] = it->second;
  }
  return c;
}

bool is_multitree(const DualGraph& g) {
  if (!is_connected(g)) return false;
  return collapse(g).edges.size() + 1 == g.num_vertices();
}

std::vector<bool> side_of(const CollapsedGraph& c, std::size_t ce, std::size_t v) {
  std::vector<bool> seen(c.num_vertices, false);
  std::deque<std::size_t> queue{v};
  seen[v] = true;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto f : c.incident[x]) {
      if (f == ce) continue;
      auto y = c.other_end(f, x);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

Subdivision subdivide(const DualGraph& g, const ChainStructure& n) {
  if (n.size() != g.num_edges()) throw std::invalid_argument("chain structure has the wrong length");
  Subdivision s;
  s.num_original_vertices = g.num_vertices();
  std::vector<std::string> labels = g.labels();
  std::vector<Edge> edges;
  s.origin_edge.assign(g.num_vertices(), std::nullopt);
  s.position.assign(g.num_vertices(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (n[e] < 1) throw std::invalid_argument("chain structure must be positive");
    std::vector<std::size_t> path{g.edge(e).tail};
    for (int k = 1; k < n[e]; ++k) {
      path.push_back(labels.size());
      labels.push_back(g.label(g.edge(e).tail) + "~" + std::to_string(e) + "." + std::to_string(k));
      s.origin_edge.push_back(e);
      s.position.push_back(k);
    }
    path.push_back(g.edge(e).head);
    std::vector<std::size_t> sub;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      sub.push_back(edges.size());
      edges.push_back({path[k], path[k + 1]});
    }
    s.path_vertices.push_back(std::move(path));
    s.path_edges.push_back(std::move(sub));
  }
  s.graph = DualGraph(std::move(labels), std::move(edges));
  return s;
}

}  // namespace lls::graphs
