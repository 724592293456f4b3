#include "lls/multidegrees/tuple.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace lls::multidegrees {

namespace {
constexpr long kMaxPairTwists = 2000;
}

long ConcentratedTuple::b_between(const ChainedGraph& cg, std::size_t v, std::size_t v2) const {
  auto ce = cg.collapsed().between(v, v2);
  if (!ce) throw std::invalid_argument("vertices are not adjacent");
  return b.at(*ce);
}

TupleDiagnostics validate_concentrated_tuple(const ChainedGraph& cg, const ConcentratedTuple& t) {
  TupleDiagnostics d;
  auto fail = [&d](std::string msg) {
    d.ok = false;
    d.problems.push_back(std::move(msg));
  };
  if (!cg.multitree()) {
    fail("graph is not a multitree");
    return d;
  }
  const auto& g = cg.graph();
  if (t.w.size() != cg.num_vertices()) {
    fail("tuple needs one multidegree per vertex");
    return d;
  }
  if (t.b.size() != cg.collapsed().edges.size()) {
    fail("tuple needs one count per collapsed edge");
    return d;
  }
  long d0 = total_degree(cg, t.w[0]);
  for (std::size_t v = 0; v < cg.num_vertices(); ++v) {
    if (!is_well_formed(cg, t.w[v])) {
      fail("w_" + g.label(v) + " is malformed");
      return d;
    }
    if (total_degree(cg, t.w[v]) != d0) fail("w_" + g.label(v) + " has a different total degree");
    if (!is_concentrated(cg, t.w[v], v)) fail("w_" + g.label(v) + " is not concentrated at " + g.label(v));
  }
  for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) {
    const auto& edge = cg.collapsed().edges[ce];
    std::string pair = "(" + g.label(edge.a) + "," + g.label(edge.b) + ")";
    if (t.b[ce] < 0) {
      fail("b" + pair + " is negative: w_" + g.label(edge.b) + " needs twists at the opposite end");
      continue;
    }
    if (twist_pair_times(cg, t.w[edge.a], ce, edge.a, t.b[ce]) != t.w[edge.b]) {
      // Say whether some other count, possibly negative, would have worked.
      std::string hint;
      Multidegree fwd = t.w[edge.a], back = t.w[edge.a];
      for (long k = 1; k <= kMaxPairTwists && hint.empty(); ++k) {
        fwd = twist_pair(cg, fwd, ce, edge.a);
        back = twist_pair(cg, back, ce, edge.b);
        if (fwd == t.w[edge.b]) hint = "; the correct count is " + std::to_string(k);
        if (back == t.w[edge.b]) hint = "; w_" + g.label(edge.b) + " is reached only by twisting at the opposite end";
      }
      fail("w_" + g.label(edge.b) + " is not w_" + g.label(edge.a) + " twisted " + std::to_string(t.b[ce]) +
           " times at " + pair + hint);
    }
  }
  return d;
}

ConcentratedTuple derive_tuple(const ChainedGraph& cg, const Multidegree& w0, const TupleOptions& opts) {
  if (!cg.multitree()) throw std::invalid_argument("concentrated tuples need a multitree");
  const auto& col = cg.collapsed();
  ConcentratedTuple t;
  t.w.assign(cg.num_vertices(), w0);
  t.b.assign(col.edges.size(), 0);
  std::vector<bool> done(cg.num_vertices(), false);
  t.w[opts.root] = concentrate(cg, w0, opts.root).w;
  done[opts.root] = true;
  std::deque<std::size_t> queue{opts.root};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    std::vector<std::pair<std::size_t, std::size_t>> children;
    for (auto ce : col.incident[p]) {
      auto c = col.other_end(ce, p);
      if (!done[c]) children.emplace_back(c, ce);
    }
    std::sort(children.begin(), children.end());
    for (auto [c, ce] : children) {
      Multidegree w = t.w[p];
      long count = 0;
      while (!is_concentrated(cg, w, c)) {
        if (++count > kMaxPairTwists) throw std::runtime_error("derive_tuple: no concentrated multidegree found");
        w = twist_pair(cg, w, ce, p);
      }
      long extra = ce < opts.extra.size() ? opts.extra[ce] : 0;
      for (long k = 0; k < extra; ++k) {
        auto next = twist_pair(cg, w, ce, p);
        if (!is_concentrated(cg, next, c)) break;
        w = next;
        ++count;
      }
      t.w[c] = w;
      // Stored relative to the smaller endpoint.
      t.b[ce] = count;
      done[c] = true;
      queue.push_back(c);
    }
  }
  return t;
}

std::vector<Multidegree> segment(const ChainedGraph& cg, const ConcentratedTuple& t, std::size_t ce,
                                 std::size_t v) {
  auto other = cg.collapsed().other_end(ce, v);
  std::vector<Multidegree> out{t.w[v]};
  for (long i = 0; i < t.b.at(ce); ++i) out.push_back(twist_pair(cg, out.back(), ce, v));
  if (out.back() != t.w[other]) throw std::runtime_error("segment: tuple is inconsistent along a collapsed edge");
  return out;
}

long t_ev(const ChainedGraph& cg, const ConcentratedTuple& t, const Multidegree& w, std::size_t ce,
          std::size_t v) {
  auto path = minimal_path(cg, t.w.at(v), w);
  if (!path) throw std::runtime_error("t_ev: multidegree not reachable from w_v");
  auto other = cg.collapsed().other_end(ce, v);
  return path->counts[v] - path->counts[other];
}

std::optional<std::size_t> BarG::find(const Multidegree& w) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == w) return i;
  return std::nullopt;
}

BarG enumerate_bar_G(const ChainedGraph& cg, const ConcentratedTuple& t) {
  auto diag = validate_concentrated_tuple(cg, t);
  if (!diag.ok) throw std::invalid_argument("enumerate_bar_G: invalid tuple: " + diag.problems.front());
  BarG out;
  std::map<Multidegree, std::size_t> index;
  auto id = [&](const Multidegree& w) {
    auto [it, fresh] = index.try_emplace(w, out.nodes.size());
    if (fresh) out.nodes.push_back(w);
    return it->second;
  };
  for (const auto& w : t.w) id(w);
  for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) {
    const auto& edge = cg.collapsed().edges[ce];
    auto seg = segment(cg, t, ce, edge.a);
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      auto x = id(seg[i]), y = id(seg[i + 1]);
      out.arcs.push_back({x, y, ce, edge.a});
      out.arcs.push_back({y, x, ce, edge.b});
    }
  }
  return out;
}

std::vector<Multidegree> twist_ball(const ChainedGraph& cg, const std::vector<Multidegree>& seeds, int radius) {
  std::set<Multidegree> seen(seeds.begin(), seeds.end());
  std::vector<Multidegree> out(seen.begin(), seen.end());
  std::vector<Multidegree> frontier = out;
  for (int step = 0; step < radius; ++step) {
    std::vector<Multidegree> next;
    for (const auto& w : frontier)
      for (std::size_t v = 0; v < cg.num_vertices(); ++v)
        for (auto cand : {twist(cg, w, v), negative_twist(cg, w, v)})
          if (seen.insert(cand).second) {
            next.push_back(cand);
            out.push_back(cand);
          }
    frontier = std::move(next);
  }
  return out;
}

RestrictedMultidegree restrict_multidegree(const ChainedGraph& cg, const ConcentratedTuple& t,
                                           const Multidegree& w, const std::vector<bool>& subset) {
  const auto& col = cg.collapsed();
  Multidegree twisted = w;
  for (std::size_t ce = 0; ce < col.edges.size(); ++ce) {
    const auto& edge = col.edges[ce];
    if (subset[edge.a] == subset[edge.b]) continue;
    auto v = subset[edge.a] ? edge.a : edge.b;
    auto vout = col.other_end(ce, v);
    twisted = twist_pair_times(cg, twisted, ce, vout, t_ev(cg, t, w, ce, v));
  }
  const auto& g = cg.graph();
  std::vector<std::size_t> keep, new_id(g.num_vertices(), 0), kept_edges;
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (subset[v]) {
      new_id[v] = keep.size();
      keep.push_back(v);
      labels.push_back(g.label(v));
    }
  std::vector<graphs::Edge> edges;
  ChainStructure n;
  Multidegree out;
  for (auto v : keep) out.weights.push_back(twisted.weights[v]);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (!subset[ed.tail] || !subset[ed.head]) continue;
    edges.push_back({new_id[ed.tail], new_id[ed.head]});
    n.push_back(cg.n(e));
    out.mu.push_back(twisted.mu[e]);
    kept_edges.push_back(e);
  }
  return RestrictedMultidegree{ChainedGraph(DualGraph(labels, edges), n), keep, kept_edges, out};
}

}  // namespace lls::multidegrees
