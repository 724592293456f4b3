#include "lls/multidegrees/multidegree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "lls/exactalg/matrix.hpp"

namespace lls::multidegrees {

namespace {

int mod(long a, int n) {
  long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::string Multidegree::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
  s += " | ";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
  return s + ")";
}

ChainedGraph::ChainedGraph(DualGraph g, ChainStructure n)
    : graph_(std::move(g)), n_(std::move(n)), sub_(graphs::subdivide(graph_, n_)),
      collapsed_(graphs::collapse(graph_)), multitree_(graphs::is_multitree(graph_)) {
  const auto& sg = sub_.graph;
  std::size_t N = sg.num_vertices();
  if (N <= 1 || !graphs::is_connected(sg)) return;
  auto Q = exactalg::FieldSpec::rationals();
  // Grounded Laplacian: drop vertex 0, invert the rest via [M' | I].
  exactalg::Matrix aug(Q, N - 1, 2 * (N - 1));
  for (std::size_t e = 0; e < sg.num_edges(); ++e) {
    auto a = sg.edge(e).tail, b = sg.edge(e).head;
    auto bump = [&](std::size_t i, std::size_t j, long by) {
      if (i == 0 || j == 0) return;
      aug.at(i - 1, j - 1) += Q.from_int(by);
    };
    bump(a, a, -1);
    bump(b, b, -1);
    bump(a, b, 1);
    bump(b, a, 1);
  }
  for (std::size_t i = 0; i + 1 < N; ++i) aug.at(i, N - 1 + i) = Q.one();
  exactalg::rref_in_place(aug);
  grounded_inverse_.assign(N - 1, std::vector<mpq_class>(N - 1));
  for (std::size_t i = 0; i + 1 < N; ++i)
    for (std::size_t j = 0; j + 1 < N; ++j) grounded_inverse_[i][j] = aug.at(i, N - 1 + j).rational();
}

std::optional<std::vector<long>> ChainedGraph::solve_firing(const std::vector<long>& delta) const {
  std::size_t N = sub_.graph.num_vertices();
  if (delta.size() != N) throw std::invalid_argument("solve_firing: wrong length");
  if (std::accumulate(delta.begin(), delta.end(), 0L) != 0) return std::nullopt;
  std::vector<long> k(N, 0);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j + 1 < N; ++j)
      if (delta[j + 1] != 0) acc += grounded_inverse_[i][j] * delta[j + 1];
    acc.canonicalize();
    if (acc.get_den() != 1 || !acc.get_num().fits_slong_p()) return std::nullopt;
    k[i + 1] = acc.get_num().get_si();
  }
  long lo = *std::min_element(k.begin(), k.end());
  for (auto& x : k) x -= lo;
  return k;
}

bool is_well_formed(const ChainedGraph& cg, const Multidegree& w) {
  if (w.weights.size() != cg.num_vertices() || w.mu.size() != cg.num_edges()) return false;
  for (std::size_t e = 0; e < cg.num_edges(); ++e)
    if (w.mu[e] < 0 || w.mu[e] >= cg.n(e)) return false;
  return true;
}

long total_degree(const ChainedGraph& cg, const Multidegree& w) {
  long d = std::accumulate(w.weights.begin(), w.weights.end(), 0L);
  for (std::size_t e = 0; e < cg.num_edges(); ++e)
    if (w.mu[e] != 0) ++d;
  return d;
}

namespace {

Multidegree twist_on_edges(const ChainedGraph& cg, Multidegree w, std::size_t v,
                           const std::vector<std::size_t>& edges) {
  const auto& g = cg.graph();
  long lost = 0;
  for (auto e : edges) {
    int old = w.mu[e];
    if (old == 0) ++lost;
    w.mu[e] = mod(old + g.sigma(e, v), cg.n(e));
    if (w.mu[e] == 0) w.weights[g.other_end(e, v)] += 1;
  }
  w.weights[v] -= lost;
  return w;
}

Multidegree untwist_on_edges(const ChainedGraph& cg, Multidegree w, std::size_t v,
                             const std::vector<std::size_t>& edges) {
  const auto& g = cg.graph();
  for (auto e : edges) {
    int now = w.mu[e];
    if (now == 0) w.weights[g.other_end(e, v)] -= 1;
    w.mu[e] = mod(now - g.sigma(e, v), cg.n(e));
    if (w.mu[e] == 0) w.weights[v] += 1;
  }
  return w;
}

}  // namespace

Multidegree twist(const ChainedGraph& cg, const Multidegree& w, std::size_t v) {
  return twist_on_edges(cg, w, v, cg.graph().incident(v));
}

Multidegree negative_twist(const ChainedGraph& cg, const Multidegree& w, std::size_t v) {
  return untwist_on_edges(cg, w, v, cg.graph().incident(v));
}

Multidegree twist_set(const ChainedGraph& cg, Multidegree w, const std::vector<bool>& set) {
  for (std::size_t v = 0; v < set.size(); ++v)
    if (set[v]) w = twist(cg, w, v);
  return w;
}

Multidegree negative_twist_set(const ChainedGraph& cg, Multidegree w, const std::vector<bool>& set) {
  for (std::size_t v = 0; v < set.size(); ++v)
    if (set[v]) w = negative_twist(cg, w, v);
  return w;
}

Multidegree apply_multiset(const ChainedGraph& cg, Multidegree w, const TwistMultiset& counts) {
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] < 0) throw std::invalid_argument("apply_multiset: negative count");
    for (long k = 0; k < counts[v]; ++k) w = twist(cg, w, v);
  }
  return w;
}

Multidegree twist_pair(const ChainedGraph& cg, const Multidegree& w, std::size_t ce, std::size_t v) {
  if (!cg.multitree()) throw std::invalid_argument("twists at (e,v) are only defined on multitrees");
  const auto& edge = cg.collapsed().edges.at(ce);
  if (edge.a != v && edge.b != v) throw std::invalid_argument("vertex is not on the collapsed edge");
  return twist_on_edges(cg, w, v, edge.parallel);
}

Multidegree twist_pair_times(const ChainedGraph& cg, Multidegree w, std::size_t ce, std::size_t v, long times) {
  std::size_t other = cg.collapsed().other_end(ce, v);
  std::size_t at = times >= 0 ? v : other;
  for (long k = 0; k < std::labs(times); ++k) w = twist_pair(cg, w, ce, at);
  return w;
}

std::vector<long> lift_to_subdivision(const ChainedGraph& cg, const Multidegree& w) {
  const auto& sub = cg.subdivision();
  std::vector<long> wt(sub.graph.num_vertices(), 0);
  for (std::size_t v = 0; v < cg.num_vertices(); ++v) wt[v] = w.weights[v];
  for (std::size_t e = 0; e < cg.num_edges(); ++e)
    if (w.mu[e] != 0) wt[sub.path_vertices[e][static_cast<std::size_t>(w.mu[e])]] += 1;
  return wt;
}

std::optional<Multidegree> descend_from_subdivision(const ChainedGraph& cg, const std::vector<long>& wt) {
  const auto& sub = cg.subdivision();
  Multidegree w;
  w.weights.assign(wt.begin(), wt.begin() + static_cast<std::ptrdiff_t>(cg.num_vertices()));
  w.mu.assign(cg.num_edges(), 0);
  for (std::size_t e = 0; e < cg.num_edges(); ++e) {
    const auto& path = sub.path_vertices[e];
    int ones = 0;
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      long x = wt[path[k]];
      if (x == 1) {
        ++ones;
        w.mu[e] = static_cast<int>(k);
      } else if (x != 0) {
        return std::nullopt;
      }
    }
    if (ones > 1) return std::nullopt;
  }
  return w;
}

std::vector<long> fire(const ChainedGraph& cg, std::vector<long> wt, std::size_t u, long times) {
  const auto& sg = cg.subdivision().graph;
  for (auto e : sg.incident(u)) {
    wt[u] -= times;
    wt[sg.other_end(e, u)] += times;
  }
  return wt;
}

std::vector<long> subdivided_firing(const ChainedGraph& cg, const Multidegree& w, std::size_t v) {
  const auto& g = cg.graph();
  const auto& sub = cg.subdivision();
  std::vector<long> k(sub.graph.num_vertices(), 0);
  k[v] = 1;
  for (auto e : g.incident(v)) {
    int count = mod(static_cast<long>(g.sigma(e, v)) * w.mu[e], cg.n(e));
    const auto& path = sub.path_vertices[e];
    for (int i = 1; i <= count; ++i) {
      std::size_t idx = g.sigma(e, v) > 0 ? static_cast<std::size_t>(i) : path.size() - 1 - static_cast<std::size_t>(i);
      k[path[idx]] += 1;
    }
  }
  return k;
}

std::optional<std::vector<std::size_t>> is_concentrated(const ChainedGraph& cg, const Multidegree& w,
                                                        std::size_t v) {
  std::size_t N = cg.num_vertices();
  if (N > 20) throw std::invalid_argument("is_concentrated: too many vertices for exhaustive search");
  if (N == 1) return std::vector<std::size_t>{v};
  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << N) - 1;
  std::map<Mask, Mask> parent;  // reached state -> predecessor state
  std::deque<Mask> queue;
  Mask start = Mask{1} << v;
  parent[start] = start;
  queue.push_back(start);
  while (!queue.empty()) {
    Mask s = queue.front();
    queue.pop_front();
    if (s == full) break;
    std::vector<bool> set(N);
    for (std::size_t i = 0; i < N; ++i) set[i] = (s >> i) & 1U;
    Multidegree ws = negative_twist_set(cg, w, set);
    for (std::size_t u = 0; u < N; ++u) {
      if (set[u] || ws.weights[u] >= 0) continue;
      Mask t = s | (Mask{1} << u);
      if (parent.emplace(t, s).second) queue.push_back(t);
    }
  }
  if (!parent.count(full)) return std::nullopt;
  std::vector<std::size_t> order;
  for (Mask s = full; s != start; s = parent[s]) {
    Mask diff = s & ~parent[s];
    for (std::size_t i = 0; i < N; ++i)
      if ((diff >> i) & 1U) order.push_back(i);
  }
  order.push_back(v);
  std::reverse(order.begin(), order.end());
  return order;
}

bool is_strongly_concentrated(const ChainedGraph& cg, const Multidegree& w, std::size_t v) {
  const auto& g = cg.graph();
  for (std::size_t x = 0; x < cg.num_vertices(); ++x) {
    if (x == v) continue;
    for (auto e : g.incident(x)) {
      auto y = g.other_end(e, x);
      if (negative_twist(cg, w, y).weights[x] >= 0) return false;
    }
  }
  return true;
}

Concentration concentrate(const ChainedGraph& cg, const Multidegree& w, std::size_t v) {
  const auto& g = cg.graph();
  std::size_t N = cg.num_vertices();
  std::vector<long> dist(N, -1);
  std::deque<std::size_t> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto e : g.incident(x)) {
      auto y = g.other_end(e, x);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  long maxd = *std::max_element(dist.begin(), dist.end());
  Concentration out{w, TwistMultiset(N, 0)};
  // Stop as soon as the witness search succeeds, so already concentrated
  // inputs come back unchanged.
  auto done = [&] { return N <= 16 && is_concentrated(cg, out.w, v).has_value(); };
  if (done()) return out;
  constexpr long kBudget = 1000000;
  long spent = 0;
  for (long layer = maxd - 1; layer >= 0; --layer) {
    // Negative twists at the ball of radius `layer` = twists at its complement.
    auto outside_nonneg = [&] {
      for (std::size_t x = 0; x < N; ++x)
        if (dist[x] > layer && out.w.weights[x] >= 0) return true;
      return false;
    };
    while (outside_nonneg()) {
      if (++spent > kBudget) throw std::runtime_error("concentrate: iteration budget exhausted");
      if (done()) return out;
      for (std::size_t x = 0; x < N; ++x)
        if (dist[x] > layer) {
          out.w = twist(cg, out.w, x);
          out.twists[x] += 1;
        }
    }
  }
  return out;
}

TwistMultiset normalize(TwistMultiset m) {
  if (m.empty()) return m;
  long lo = *std::min_element(m.begin(), m.end());
  for (auto& x : m) x -= lo;
  return m;
}

bool same_endpoint(const TwistMultiset& a, const TwistMultiset& b) {
  if (a.size() != b.size()) return false;
  return normalize(a) == normalize(b);
}

bool laplacian_kernel_check(const ChainedGraph& cg) {
  const auto& sg = cg.subdivision().graph;
  auto Q = exactalg::FieldSpec::rationals();
  std::size_t N = sg.num_vertices();
  exactalg::Matrix M(Q, N, N);
  for (std::size_t e = 0; e < sg.num_edges(); ++e) {
    auto a = sg.edge(e).tail, b = sg.edge(e).head;
    M.at(a, a) -= Q.one();
    M.at(b, b) -= Q.one();
    M.at(a, b) += Q.one();
    M.at(b, a) += Q.one();
  }
  auto rk = exactalg::rank_and_kernel(M);
  if (rk.kernel_basis.size() != 1) return false;
  const auto& k = rk.kernel_basis.front();
  return std::all_of(k.begin(), k.end(), [&](const exactalg::Scalar& x) { return x == k.front(); });
}

long MinimalPath::length() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

std::optional<MinimalPath> minimal_path(const ChainedGraph& cg, const Multidegree& w, const Multidegree& target) {
  auto a = lift_to_subdivision(cg, w);
  auto b = lift_to_subdivision(cg, target);
  std::vector<long> delta(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) delta[i] = b[i] - a[i];
  auto k = cg.solve_firing(delta);
  if (!k) return std::nullopt;
  MinimalPath p;
  p.counts.assign(k->begin(), k->begin() + static_cast<std::ptrdiff_t>(cg.num_vertices()));
  p.counts = normalize(p.counts);
  // The subdivided counts of a genuine path have min 0 and restrict to the
  // vertex counts; anything else means target is not reachable by twists.
  long shift = (*k)[0] - p.counts[0];
  p.subdivided = *k;
  for (auto& x : p.subdivided) x -= shift;
  if (*std::min_element(p.subdivided.begin(), p.subdivided.end()) < 0) return std::nullopt;
  if (apply_multiset(cg, w, p.counts) != target) return std::nullopt;
  return p;
}

std::optional<TwistMultiset> bfs_minimal_path(const ChainedGraph& cg, const Multidegree& w,
                                              const Multidegree& target, int bound) {
  std::map<Multidegree, TwistMultiset> seen;
  std::deque<std::pair<Multidegree, int>> queue;
  seen.emplace(w, TwistMultiset(cg.num_vertices(), 0));
  queue.emplace_back(w, 0);
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (cur == target) return seen[cur];
    if (depth >= bound) continue;
    for (std::size_t v = 0; v < cg.num_vertices(); ++v) {
      auto nxt = twist(cg, cur, v);
      if (seen.count(nxt)) continue;
      auto counts = seen[cur];
      counts[v] += 1;
      seen.emplace(nxt, counts);
      queue.emplace_back(nxt, depth + 1);
    }
  }
  return std::nullopt;
}

}  // namespace lls::multidegrees
