#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lls/multidegrees/multidegree.hpp"

namespace lls::multidegrees {

/// One multidegree w_v per vertex, concentrated at v, and for each collapsed
/// edge {a, b} (a < b) the count b_e with w_b = w_a twisted b_e times at (e, a).
/// The same count takes w_b back to w_a by twisting at (e, b).
struct ConcentratedTuple {
  std::vector<Multidegree> w;
  std::vector<long> b;

  long b_between(const ChainedGraph& cg, std::size_t v, std::size_t v2) const;
};

struct TupleDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

TupleDiagnostics validate_concentrated_tuple(const ChainedGraph& cg, const ConcentratedTuple& t);

struct TupleOptions {
  std::size_t root = 0;
  /// Extra (e, parent)-twists beyond the minimal count, per collapsed edge
  /// (missing entries mean zero). Each extra twist is kept only if the child
  /// stays concentrated.
  std::vector<long> extra;
};

/// Concentrates w0 at the root, then walks the collapsed tree breadth first
/// (children in increasing vertex order), giving each child the fewest
/// (e, parent)-twists that make it concentrated at the child.
ConcentratedTuple derive_tuple(const ChainedGraph& cg, const Multidegree& w0, const TupleOptions& opts = {});

/// Multidegrees w_v = w^(0), ..., w^(b) = w_{v'} along collapsed edge ce, starting at v.
std::vector<Multidegree> segment(const ChainedGraph& cg, const ConcentratedTuple& t, std::size_t ce,
                                 std::size_t v);

/// Number of (e,v)-twists in a minimal expression from w_v to w (may be negative).
long t_ev(const ChainedGraph& cg, const ConcentratedTuple& t, const Multidegree& w, std::size_t ce,
          std::size_t v);

/// The finite tree of multidegrees between the members of the tuple.
struct BarG {
  std::vector<Multidegree> nodes;
  struct Arc {
    std::size_t from, to, ce, v;  // `to` is `from` twisted at (ce, v)
  };
  std::vector<Arc> arcs;
  std::optional<std::size_t> find(const Multidegree& w) const;
};

BarG enumerate_bar_G(const ChainedGraph& cg, const ConcentratedTuple& t);

/// Multidegrees reachable from `seeds` by at most `radius` twists or negative twists.
std::vector<Multidegree> twist_ball(const ChainedGraph& cg, const std::vector<Multidegree>& seeds, int radius);

struct RestrictedMultidegree {
  ChainedGraph graph;
  std::vector<std::size_t> vertices;  // original ids of the kept vertices
  std::vector<std::size_t> edges;     // original ids of the kept edges
  Multidegree w;
};

/// Restriction to the connected subcurve on `subset`, after twisting each
/// boundary pair (e,v) t_{(e,v)}(w) times at (e,v').
RestrictedMultidegree restrict_multidegree(const ChainedGraph& cg, const ConcentratedTuple& t,
                                           const Multidegree& w, const std::vector<bool>& subset);

}  // namespace lls::multidegrees
