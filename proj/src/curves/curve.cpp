#include "lls/curves/curve.hpp"

#include <algorithm>
#include <stdexcept>

namespace lls::curves {

using multidegrees::minimal_path;
using multidegrees::twist_pair_times;

InstanceDiagnostics validate_instance(const CurveInstance& inst) {
  InstanceDiagnostics d;
  auto fail = [&d](std::string msg) {
    d.ok = false;
    d.problems.push_back(std::move(msg));
  };
  if (!inst.graph) {
    fail("instance has no graph");
    return d;
  }
  const auto& cg = *inst.graph;
  const auto& g = cg.graph();
  auto gd = graphs::validate(g);
  for (const auto& p : gd.problems) fail(p);
  if (!gd.ok) return d;
  std::size_t E = g.num_edges();
  if (inst.tail_coord.size() != E || inst.head_coord.size() != E || inst.lambda.size() != E) {
    fail("every edge needs two node coordinates and a gluing scalar");
    return d;
  }
  for (std::size_t e = 0; e < E; ++e) {
    if (cg.n(e) < 1) fail("edge " + std::to_string(e) + " has chain length below 1");
    for (const auto* s : {&inst.tail_coord[e], &inst.head_coord[e], &inst.lambda[e]})
      if (!inst.field.contains(*s)) fail("edge " + std::to_string(e) + " has a scalar outside " + inst.field.describe());
    if (inst.field.contains(inst.lambda[e]) && inst.lambda[e].is_zero())
      fail("edge " + std::to_string(e) + " has gluing scalar 0");
  }
  if (!d.ok) return d;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::vector<Scalar> pts;
    for (auto e : g.incident(v)) pts.push_back(g.sigma(e, v) > 0 ? inst.tail_coord[e] : inst.head_coord[e]);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) fail("two nodes on component '" + g.label(v) + "' share the coordinate " + pts[i].to_string());
  }
  if (!multidegrees::is_well_formed(cg, inst.w0)) fail("w0 does not match the graph (or mu is out of range)");
  return d;
}

CurveInstance make_instance(const FieldSpec& field, std::vector<std::string> labels, const std::vector<EdgeSpec>& edges,
                            const Multidegree& w0, const multidegrees::TupleOptions& opts) {
  std::vector<graphs::Edge> es;
  graphs::ChainStructure n;
  CurveInstance inst;
  inst.field = field;
  for (const auto& e : edges) {
    es.push_back({e.tail, e.head});
    n.push_back(e.n);
    inst.tail_coord.push_back(e.tail_coord);
    inst.head_coord.push_back(e.head_coord);
    inst.lambda.push_back(e.lambda);
  }
  graphs::DualGraph g(std::move(labels), std::move(es));
  auto gd = graphs::validate(g);
  if (!gd.ok) throw std::invalid_argument(gd.problems.front());
  inst.graph = std::make_shared<const ChainedGraph>(std::move(g), std::move(n));
  inst.w0 = w0;
  auto d = validate_instance(inst);
  if (!d.ok) throw std::invalid_argument(d.problems.front());
  if (inst.graph->multitree()) {
    inst.tuple = multidegrees::derive_tuple(*inst.graph, w0, opts);
  } else {
    // No bounded tree here; each w_v is still concentrated at v.
    for (std::size_t v = 0; v < inst.graph->num_vertices(); ++v)
      inst.tuple.w.push_back(multidegrees::concentrate(*inst.graph, w0, v).w);
  }
  return inst;
}

Poly SectionSpace::component(const Vector& x, std::size_t z) const {
  std::size_t len = block_size(z);
  if (len == 0) return Poly(basis.field());
  Vector c(x.begin() + static_cast<std::ptrdiff_t>(offset[z]),
           x.begin() + static_cast<std::ptrdiff_t>(offset[z] + len));
  return Poly(basis.field(), std::move(c));
}

Vector SectionSpace::to_ambient(const Vector& c) const {
  Vector out(ambient_dim, basis.field().zero());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; j < ambient_dim; ++j)
      if (!basis.at(i, j).is_zero()) out[j] += c[i] * basis.at(i, j);
  }
  return out;
}

Vector SectionSpace::coordinates(const Vector& ambient) const {
  Vector coords;
  if (!exactalg::coordinates_in_rref(basis.row_list(), pivots, ambient, coords))
    throw ModelError("vector is not a global section in multidegree " + w.to_string());
  return coords;
}

long DivisorSeq::degree(std::size_t i) const {
  long d = 0;
  for (int m : mult.at(i)) d += m;
  return d;
}

CurveModel::CurveModel(CurveInstance inst) : inst_(std::move(inst)) {
  auto diag = validate_instance(inst_);
  if (!diag.ok) throw std::invalid_argument("invalid curve instance: " + diag.problems.front());
  const auto& F = inst_.field;
  const auto& cg = graph();
  const auto& sub = cg.subdivision();
  const auto& sg = sub.graph;
  std::size_t SE = sg.num_edges(), SV = sg.num_vertices();
  sub_tail_point_.assign(SE, F.zero());
  sub_head_point_.assign(SE, F.zero());
  sub_lambda_.assign(SE, F.one());
  for (std::size_t e = 0; e < cg.num_edges(); ++e) {
    const auto& pe = sub.path_edges[e];
    std::size_t n = pe.size();
    for (std::size_t k = 0; k < n; ++k) {
      // Exceptional components carry coordinate 0 at the tail-side node and 1 at the head-side node.
      sub_tail_point_[pe[k]] = k == 0 ? inst_.tail_coord[e] : F.one();
      sub_head_point_[pe[k]] = k + 1 == n ? inst_.head_coord[e] : F.zero();
    }
    sub_lambda_[pe[0]] = inst_.lambda[e];
  }
  s_.assign(SV, std::vector<Poly>(SV, Poly::constant(F, F.one())));
  for (std::size_t u = 0; u < SV; ++u) s_[u][u] = Poly(F);
  for (std::size_t se = 0; se < SE; ++se) {
    auto a = sg.edge(se).tail, b = sg.edge(se).head;
    s_[a][b] = s_[a][b] * Poly::linear_power(F, sub_head_point_[se], 1);
    s_[b][a] = s_[b][a] * Poly::linear_power(F, sub_tail_point_[se], 1);
  }
  enriched_.assign(SV, std::vector<Scalar>(SE, F.one()));
  for (std::size_t se = 0; se < SE; ++se) {
    auto a = sg.edge(se).tail, b = sg.edge(se).head;
    Scalar prod = F.one();
    for (std::size_t u = 0; u < SV; ++u) {
      if (u == a || u == b) continue;
      Scalar num = s_[u][b].eval(sub_head_point_[se]);
      Scalar den = s_[u][a].eval(sub_tail_point_[se]);
      enriched_[u][se] = num / den;
      prod *= enriched_[u][se];
    }
    // Free choices at nodes meeting Z_u, fixed so the twisting bundles multiply to the trivial one.
    enriched_[b][se] = F.one();
    enriched_[a][se] = prod.inverse();
  }
}

long CurveModel::degree() const { return multidegrees::total_degree(graph(), inst_.w0); }

const Scalar& CurveModel::node_point(std::size_t se, bool tail_side) const {
  return tail_side ? sub_tail_point_.at(se) : sub_head_point_.at(se);
}

std::shared_ptr<const SectionSpace> CurveModel::section_space(const Multidegree& w) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  const auto& F = inst_.field;
  const auto& cg = graph();
  const auto& sg = cg.subdivision().graph;
  auto s = std::make_shared<SectionSpace>(SectionSpace{w, {}, {}, 0, Matrix(F, 0, 0), {}, {}, {}});
  auto lifted0 = multidegrees::lift_to_subdivision(cg, inst_.w0);
  s->weights = multidegrees::lift_to_subdivision(cg, w);
  std::vector<long> delta(s->weights.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = s->weights[i] - lifted0[i];
  auto k = cg.solve_firing(delta);
  if (!k) throw std::invalid_argument("multidegree " + w.to_string() + " is not a twist of w0");
  s->firing = *k;
  for (std::size_t z = 0; z < s->weights.size(); ++z) {
    s->offset.push_back(s->ambient_dim);
    s->ambient_dim += s->block_size(z);
  }
  s->gluing.assign(sg.num_edges(), F.one());
  for (std::size_t se = 0; se < sg.num_edges(); ++se) {
    Scalar g = sub_lambda_[se];
    for (std::size_t u = 0; u < s->firing.size(); ++u)
      for (long i = 0; i < s->firing[u]; ++i) g *= enriched_[u][se];
    s->gluing[se] = g;
  }
  // Matching at each node: gluing * s_tail(p_tail) = s_head(p_head).
  Matrix constraints(F, 0, s->ambient_dim);
  for (std::size_t se = 0; se < sg.num_edges(); ++se) {
    auto a = sg.edge(se).tail, b = sg.edge(se).head;
    Vector row(s->ambient_dim, F.zero());
    auto ra = exactalg::taylor_row(F, sub_tail_point_[se], 0, s->block_size(a));
    auto rb = exactalg::taylor_row(F, sub_head_point_[se], 0, s->block_size(b));
    for (std::size_t i = 0; i < ra.size(); ++i) row[s->offset[a] + i] += s->gluing[se] * ra[i];
    for (std::size_t i = 0; i < rb.size(); ++i) row[s->offset[b] + i] -= rb[i];
    constraints.append_row(row);
  }
  auto rk = exactalg::rank_and_kernel(constraints);
  s->basis = Matrix::from_rows(F, s->ambient_dim, rk.kernel_basis);
  for (std::size_t i = 0; i < s->basis.rows(); ++i) {
    std::size_t j = 0;
    while (s->basis.at(i, j).is_zero()) ++j;
    s->pivots.push_back(j);
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(w, std::move(s)).first->second;
}

Poly CurveModel::multiplier(const std::vector<long>& k, std::size_t z) const {
  const auto& F = inst_.field;
  if (k.at(z) > 0) return Poly(F);
  Poly out = Poly::constant(F, F.one());
  for (std::size_t u = 0; u < k.size(); ++u)
    for (long i = 0; i < k[u]; ++i) out = out * s_[u][z];
  return out;
}

Matrix CurveModel::twist_map(const Multidegree& w, const Multidegree& target) const {
  auto path = minimal_path(graph(), w, target);
  if (!path) throw std::invalid_argument("no twist path from " + w.to_string() + " to " + target.to_string());
  auto src = section_space(w);
  auto dst = section_space(target);
  const auto& F = inst_.field;
  std::vector<Poly> mult;
  for (std::size_t z = 0; z < src->weights.size(); ++z) mult.push_back(multiplier(path->subdivided, z));
  Matrix out(F, dst->dim(), src->dim());
  for (std::size_t i = 0; i < src->dim(); ++i) {
    Vector x = src->basis.row(i);
    Vector y(dst->ambient_dim, F.zero());
    for (std::size_t z = 0; z < src->weights.size(); ++z) {
      Poly p = src->component(x, z) * mult[z];
      if (p.is_zero()) continue;
      if (p.degree() >= static_cast<long>(dst->block_size(z)))
        throw ModelError("twist map overflows the degree on a component");
      auto c = p.padded(dst->block_size(z));
      for (std::size_t t = 0; t < c.size(); ++t) y[dst->offset[z] + t] = c[t];
    }
    auto coords = dst->coordinates(y);
    for (std::size_t r = 0; r < coords.size(); ++r) out.at(r, i) = coords[r];
  }
  return out;
}

Matrix CurveModel::twist_map_along(const Multidegree& w, const std::vector<std::size_t>& order) const {
  auto cur = w;
  Matrix acc = Matrix::identity(inst_.field, section_space(w)->dim());
  for (auto v : order) {
    auto next = multidegrees::twist(graph(), cur, v);
    acc = twist_map(cur, next) * acc;
    cur = next;
  }
  return acc;
}

Matrix CurveModel::restrict_to_component(const Multidegree& w, std::size_t v, const Multidegree& wv) const {
  const auto& F = inst_.field;
  auto src = section_space(w);
  long deg = wv.weights.at(v);
  std::size_t len = deg < 0 ? 0 : static_cast<std::size_t>(deg + 1);
  Matrix out(F, len, src->dim());
  if (len == 0) return out;
  auto path = minimal_path(graph(), w, wv);
  if (!path) throw std::invalid_argument("no twist path from " + w.to_string() + " to " + wv.to_string());
  Poly pi = multiplier(path->subdivided, v);
  for (std::size_t i = 0; i < src->dim(); ++i) {
    Poly p = src->component(src->basis.row(i), v) * pi;
    if (p.degree() >= static_cast<long>(len)) throw ModelError("restriction overflows the degree of L^v");
    auto c = p.padded(len);
    for (std::size_t t = 0; t < len; ++t) out.at(t, i) = c[t];
  }
  return out;
}

DivisorSeq CurveModel::divisor_sequence(const ConcentratedTuple& t, std::size_t ce, std::size_t v) const {
  const auto& cg = graph();
  const auto& g = cg.graph();
  const auto& edge = cg.collapsed().edges.at(ce);
  DivisorSeq D;
  D.nodes = edge.parallel;
  for (auto e : D.nodes) D.points.push_back(g.sigma(e, v) > 0 ? inst_.tail_coord[e] : inst_.head_coord[e]);
  long b = t.b.at(ce);
  const auto& mu = t.w.at(v).mu;
  D.mult.assign(1, std::vector<int>(D.nodes.size(), 0));
  for (long i = 0; i <= b; ++i) {
    auto next = D.mult.back();
    for (std::size_t k = 0; k < D.nodes.size(); ++k) {
      auto e = D.nodes[k];
      long n = cg.n(e);
      long lhs = static_cast<long>(g.sigma(e, v)) * mu[e] + i;
      if (((lhs % n) + n) % n == 0) next[k] += 1;
    }
    D.mult.push_back(std::move(next));
  }
  return D;
}

std::map<std::pair<std::size_t, std::size_t>, int> CurveModel::vanishing_orders(const ConcentratedTuple& t,
                                                                                  const Multidegree& w) const {
  const auto& cg = graph();
  const auto& g = cg.graph();
  std::map<std::pair<std::size_t, std::size_t>, int> out;
  for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) {
    const auto& edge = cg.collapsed().edges[ce];
    for (auto v : {edge.a, edge.b}) {
      long tt = multidegrees::t_ev(cg, t, w, ce, v);
      auto D = divisor_sequence(t, ce, v);
      if (tt < 0 || tt >= static_cast<long>(D.length()))
        throw std::invalid_argument("vanishing orders are only defined on the bounded tree of multidegrees");
      for (std::size_t k = 0; k < D.nodes.size(); ++k) out[{D.nodes[k], v}] = D.mult[static_cast<std::size_t>(tt)][k];
    }
  }
  (void)g;
  return out;
}

JetMap CurveModel::jet_map(const ConcentratedTuple& t, std::size_t ce, std::size_t v, long j) const {
  const auto& F = inst_.field;
  const auto& cg = graph();
  const auto& g = cg.graph();
  auto v2 = cg.collapsed().other_end(ce, v);
  long b = t.b.at(ce);
  if (j < 0 || j > b) throw std::invalid_argument("jet_map: index out of range");
  auto wj = twist_pair_times(cg, t.w[v], ce, v, j);
  auto D1 = divisor_sequence(t, ce, v);
  auto D2 = divisor_sequence(t, ce, v2);
  auto S = section_space(wj);
  auto p1 = minimal_path(cg, wj, t.w[v]);
  auto p2 = minimal_path(cg, wj, t.w[v2]);
  if (!p1 || !p2) throw ModelError("jet_map: tuple members not reachable");
  Poly pi1 = multiplier(p1->subdivided, v);
  Poly pi2 = multiplier(p2->subdivided, v2);
  long deg1 = t.w[v].weights[v], deg2 = t.w[v2].weights[v2];
  std::size_t len1 = deg1 < 0 ? 0 : static_cast<std::size_t>(deg1 + 1);
  std::size_t len2 = deg2 < 0 ? 0 : static_cast<std::size_t>(deg2 + 1);
  JetMap out{{}, Matrix(F, 0, len1), Matrix(F, 0, len2)};
  auto ju = static_cast<std::size_t>(j);
  auto jb = static_cast<std::size_t>(b - j);
  for (std::size_t k = 0; k < D1.nodes.size(); ++k) {
    auto e = D1.nodes[k];
    bool crit = D1.mult[ju + 1][k] != D1.mult[ju][k];
    if (crit != (wj.mu[e] == 0)) throw ModelError("jet_map: support of D_{j+1}-D_j disagrees with the multidegree");
    if (!crit) continue;
    out.nodes.push_back(e);
    const Scalar& pa = D1.points[k];
    const Scalar& pb = D2.points[k];
    int m1 = D1.mult[ju][k], m2 = D2.mult[jb][k];
    if (exactalg::order_at(pi1, pa) != m1 || exactalg::order_at(pi2, pb) != m2)
      throw ModelError("jet_map: restriction multiplier does not vanish to the divisor's order");
    Scalar lead1 = exactalg::taylor_coefficient(pi1, pa, m1);
    Scalar lead2 = exactalg::taylor_coefficient(pi2, pb, m2);
    Scalar G = F.one();
    for (auto se : cg.subdivision().path_edges[e]) G *= S->gluing[se];
    Scalar c = g.sigma(e, v) > 0 ? G * lead2 / lead1 : lead2 / (G * lead1);
    auto r1 = exactalg::taylor_row(F, pa, m1, len1);
    for (auto& x : r1) x *= c;
    out.v_side.append_row(r1);
    out.w_side.append_row(exactalg::taylor_row(F, pb, m2, len2));
  }
  return out;
}

std::vector<Vector> subspace_vanishing(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const std::vector<Scalar>& points, const std::vector<int>& mult) {
  auto basis = exactalg::span_basis(field, len, V);
  if (basis.empty()) return {};
  std::vector<Vector> cons;
  for (std::size_t k = 0; k < points.size(); ++k)
    for (int o = 0; o < mult[k]; ++o) cons.push_back(exactalg::taylor_row(field, points[k], o, len));
  if (cons.empty()) return basis;
  // Evaluate constraints on the basis and take the kernel in basis coordinates.
  Matrix A(field, cons.size(), basis.size());
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Scalar acc = field.zero();
      for (std::size_t t = 0; t < len; ++t)
        if (!cons[i][t].is_zero() && !basis[j][t].is_zero()) acc += cons[i][t] * basis[j][t];
      A.at(i, j) = acc;
    }
  auto rk = exactalg::rank_and_kernel(A);
  std::vector<Vector> out;
  for (const auto& y : rk.kernel_basis) {
    Vector x(len, field.zero());
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!y[j].is_zero())
        for (std::size_t t = 0; t < len; ++t) x[t] += y[j] * basis[j][t];
    out.push_back(std::move(x));
  }
  return exactalg::span_basis(field, len, out);
}

}  // namespace lls::curves
