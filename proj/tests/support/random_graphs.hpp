#pragma once

#include <random>

#include "lls/multidegrees/multidegree.hpp"

namespace lls::testing {

// Connected multigraph: a random spanning tree plus a few extra edges
// (parallel or not), with chain lengths in 1..max_chain.
inline multidegrees::ChainedGraph random_chained_graph(std::mt19937_64& rng, std::size_t max_vertices = 4,
                                                       int max_chain = 3, bool multitree = false) {
  std::size_t nv = 1 + rng() % max_vertices;
  std::vector<graphs::Edge> es;
  for (std::size_t v = 1; v < nv; ++v) {
    std::size_t u = rng() % v;
    if (rng() % 2) es.push_back({u, v}); else es.push_back({v, u});
  }
  std::size_t extra = nv > 1 ? rng() % 3 : 0;
  for (std::size_t i = 0; i < extra; ++i) {
    if (multitree) {
      auto base = es[rng() % es.size()];
      es.push_back(rng() % 2 ? base : graphs::Edge{base.head, base.tail});
    } else {
      std::size_t a = rng() % nv, b = rng() % nv;
      if (a != b) es.push_back({a, b});
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nv; ++i) labels.push_back("v" + std::to_string(i));
  graphs::ChainStructure n;
  for (std::size_t i = 0; i < es.size(); ++i) n.push_back(1 + static_cast<int>(rng() % max_chain));
  return multidegrees::ChainedGraph(graphs::DualGraph(labels, es), n);
}

inline multidegrees::Multidegree random_multidegree(const multidegrees::ChainedGraph& cg, std::mt19937_64& rng,
                                                    long lo = -2, long hi = 3) {
  multidegrees::Multidegree w;
  for (std::size_t v = 0; v < cg.num_vertices(); ++v)
    w.weights.push_back(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
  for (std::size_t e = 0; e < cg.num_edges(); ++e) w.mu.push_back(static_cast<int>(rng() % cg.n(e)));
  return w;
}

}  // namespace lls::testing
