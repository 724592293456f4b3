#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lls/graphs/graph.hpp"

namespace lls::multidegrees {

using graphs::ChainStructure;
using graphs::DualGraph;

/// Integer weights on the vertices of the graph plus a residue mu(e) mod n(e)
/// per edge marking where the single degree-one exceptional component sits.
struct Multidegree {
  std::vector<long> weights;
  std::vector<int> mu;

  friend auto operator<=>(const Multidegree&, const Multidegree&) = default;
  friend bool operator==(const Multidegree&, const Multidegree&) = default;
  std::string to_string() const;
};

/// Vertex counts of a twist multiset (one entry per vertex of the graph).
using TwistMultiset = std::vector<long>;

/// A dual graph together with its chain structure and the derived data
/// (subdivision, collapsed graph, grounded Laplacian inverse) used everywhere.
class ChainedGraph {
 public:
  ChainedGraph(DualGraph g, ChainStructure n);

  const DualGraph& graph() const { return graph_; }
  const ChainStructure& chains() const { return n_; }
  int n(std::size_t e) const { return n_.at(e); }
  const graphs::Subdivision& subdivision() const { return sub_; }
  const graphs::CollapsedGraph& collapsed() const { return collapsed_; }
  bool multitree() const { return multitree_; }
  std::size_t num_vertices() const { return graph_.num_vertices(); }
  std::size_t num_edges() const { return graph_.num_edges(); }

  /// Integer k on the subdivided vertices with M k = delta and min k = 0,
  /// where M is the subdivided Laplacian (firing u adds column u of M).
  /// Empty if delta does not sum to zero or the solution is not integral.
  std::optional<std::vector<long>> solve_firing(const std::vector<long>& delta) const;

 private:
  DualGraph graph_;
  ChainStructure n_;
  graphs::Subdivision sub_;
  graphs::CollapsedGraph collapsed_;
  bool multitree_ = false;
  std::vector<std::vector<mpq_class>> grounded_inverse_;
};

/// True iff weights/mu have the right lengths and 0 <= mu(e) < n(e).
bool is_well_formed(const ChainedGraph& cg, const Multidegree& w);

long total_degree(const ChainedGraph& cg, const Multidegree& w);

Multidegree twist(const ChainedGraph& cg, const Multidegree& w, std::size_t v);
Multidegree negative_twist(const ChainedGraph& cg, const Multidegree& w, std::size_t v);
/// Twists (or negative twists) at every vertex flagged in `set`, in index order.
Multidegree twist_set(const ChainedGraph& cg, Multidegree w, const std::vector<bool>& set);
Multidegree negative_twist_set(const ChainedGraph& cg, Multidegree w, const std::vector<bool>& set);
/// Applies counts[v] twists at each v (counts must be nonnegative).
Multidegree apply_multiset(const ChainedGraph& cg, Multidegree w, const TwistMultiset& counts);

/// Twist at the pair (collapsed edge ce, endpoint v); multitrees only.
Multidegree twist_pair(const ChainedGraph& cg, const Multidegree& w, std::size_t ce, std::size_t v);
Multidegree twist_pair_times(const ChainedGraph& cg, Multidegree w, std::size_t ce, std::size_t v, long times);

/// Vertex weights on the subdivided graph.
std::vector<long> lift_to_subdivision(const ChainedGraph& cg, const Multidegree& w);
/// Inverse of lift_to_subdivision; empty if the weights are not of lifted form.
std::optional<Multidegree> descend_from_subdivision(const ChainedGraph& cg, const std::vector<long>& wt);
/// Chip-firing at a vertex of the subdivided graph.
std::vector<long> fire(const ChainedGraph& cg, std::vector<long> wt, std::size_t u, long times = 1);
/// Vertices of the subdivided graph fired by one twist of w at v.
std::vector<long> subdivided_firing(const ChainedGraph& cg, const Multidegree& w, std::size_t v);

/// Witness ordering starting at v, or empty when w is not concentrated at v.
std::optional<std::vector<std::size_t>> is_concentrated(const ChainedGraph& cg, const Multidegree& w,
                                                        std::size_t v);
/// The stronger sufficient condition: for every v' != v and every v'' adjacent
/// to v', the negative twist of w at v'' is negative at v'.
bool is_strongly_concentrated(const ChainedGraph& cg, const Multidegree& w, std::size_t v);

struct Concentration {
  Multidegree w;
  TwistMultiset twists;
};
/// Layered construction: negative at every vertex other than v, never twisting at v.
Concentration concentrate(const ChainedGraph& cg, const Multidegree& w, std::size_t v);

TwistMultiset normalize(TwistMultiset m);
bool same_endpoint(const TwistMultiset& a, const TwistMultiset& b);

/// Kernel of the subdivided Laplacian is exactly the constants.
bool laplacian_kernel_check(const ChainedGraph& cg);

struct MinimalPath {
  TwistMultiset counts;                // on the vertices of the graph, min 0
  std::vector<long> subdivided;        // induced firing counts on the subdivision, min 0
  long length() const;
};
/// Minimal twist multiset from w to target, found by an exact Laplacian solve.
std::optional<MinimalPath> minimal_path(const ChainedGraph& cg, const Multidegree& w, const Multidegree& target);
/// Breadth-first search over positive twists, up to `bound` steps.
std::optional<TwistMultiset> bfs_minimal_path(const ChainedGraph& cg, const Multidegree& w,
                                              const Multidegree& target, int bound);

}  // namespace lls::multidegrees
