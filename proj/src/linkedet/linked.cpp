#include "lls/linkedet/linked.hpp"

#include <algorithm>
#include <sstream>

namespace lls::linkedet {

using exactalg::column_space;
using exactalg::kernel;
using exactalg::span_basis;
using exactalg::subspace_intersect;

namespace {

std::string link_name(std::size_t i) { return "link " + std::to_string(i + 1); }

bool same_space(const FieldSpec& F, std::size_t d, const std::vector<Vector>& a, const std::vector<Vector>& b) {
  return span_basis(F, d, a) == span_basis(F, d, b);
}

std::vector<Vector> apply_all(const Matrix& M, const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.push_back(M.apply(v));
  return out;
}

}  // namespace

ChainDiagnostics validate_s_linked(const LinkedChain& c) {
  ChainDiagnostics out;
  auto fail = [&](std::string s) {
    out.ok = false;
    out.problems.push_back(std::move(s));
  };
  const auto& F = c.field;
  if (c.n == 0) fail("chain has no spaces");
  if (c.f.size() + 1 != c.n || c.fback.size() + 1 != c.n) {
    fail("a chain of " + std::to_string(c.n) + " spaces needs " + std::to_string(c.n ? c.n - 1 : 0) +
         " maps in each direction");
    return out;
  }
  if (!F.contains(c.s)) fail("s lies outside " + F.describe());
  for (std::size_t i = 0; i + 1 < c.n; ++i)
    for (const auto* m : {&c.f[i], &c.fback[i]})
      if (m->rows() != c.d || m->cols() != c.d || m->field() != F) {
        fail(link_name(i) + ": maps must be " + std::to_string(c.d) + "x" + std::to_string(c.d) + " over " +
             F.describe());
        return out;
      }
  Matrix sId = Matrix::identity(F, c.d).scaled(c.s);
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    if (c.f[i] * c.fback[i] != sId) fail(link_name(i) + ": (I) f * fback != s id");
    if (c.fback[i] * c.f[i] != sId) fail(link_name(i) + ": (I) fback * f != s id");
  }
  if (!c.s.is_zero()) return out;
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    if (!same_space(F, c.d, kernel(c.fback[i]), column_space(c.f[i])))
      fail(link_name(i) + ": (II) ker fback != im f");
    if (!same_space(F, c.d, kernel(c.f[i]), column_space(c.fback[i])))
      fail(link_name(i) + ": (II) ker f != im fback");
  }
  for (std::size_t i = 0; i + 2 < c.n; ++i) {
    if (!subspace_intersect(F, c.d, column_space(c.f[i]), kernel(c.f[i + 1])).empty())
      fail(link_name(i) + ": (III) im f meets ker of the next f");
    if (!subspace_intersect(F, c.d, column_space(c.fback[i + 1]), kernel(c.fback[i])).empty())
      fail(link_name(i) + ": (III) im of the next fback meets ker fback");
  }
  return out;
}

LinkedChain reversed(const LinkedChain& c) {
  LinkedChain r = c;
  r.f.assign(c.fback.rbegin(), c.fback.rend());
  r.fback.assign(c.f.rbegin(), c.f.rend());
  return r;
}

Membership linked_det_membership(const LinkedChain& c, const FlagPair& flags) {
  const auto& F = c.field;
  Matrix q1 = exactalg::annihilator(F, c.d, flags.F1);
  Matrix qn = exactalg::annihilator(F, c.d, flags.Fn);
  Membership out;
  out.member = true;
  for (std::size_t k = 0; k < c.n; ++k) {
    Matrix to_first = Matrix::identity(F, c.d);
    for (std::size_t j = k; j-- > 0;) to_first = c.fback[j] * to_first;
    Matrix to_last = Matrix::identity(F, c.d);
    for (std::size_t j = k; j + 1 < c.n; ++j) to_last = c.f[j] * to_last;
    Matrix stacked = (q1 * to_first).stack(qn * to_last);
    auto rk = exactalg::rank_and_kernel(stacked);
    out.ranks.push_back(static_cast<long>(rk.rank));
    if (rk.kernel_basis.size() < flags.r) out.member = false;
    out.kernels.push_back(std::move(rk.kernel_basis));
  }
  return out;
}

Completion complete_flags(const LinkedChain& c, const FlagPair& flags) {
  const auto& F = c.field;
  auto mem = linked_det_membership(c, flags);
  Completion out;
  if (!mem.member) {
    for (std::size_t k = 0; k < c.n; ++k)
      if (mem.kernels[k].size() < flags.r) {
        out.reason = "kernel at position " + std::to_string(k + 1) + " has dimension " +
                     std::to_string(mem.kernels[k].size()) + " < " + std::to_string(flags.r);
        break;
      }
    return out;
  }
  auto K = mem.kernels;
  for (std::size_t k = 0; k < c.n; ++k) {
    if (K[k].size() <= flags.r) continue;
    std::vector<Vector> forced;
    if (k > 0) {
      auto a = apply_all(c.f[k - 1], K[k - 1]);
      forced.insert(forced.end(), a.begin(), a.end());
    }
    if (k + 1 < c.n) {
      auto b = apply_all(c.fback[k], K[k + 1]);
      forced.insert(forced.end(), b.begin(), b.end());
    }
    auto S = span_basis(F, c.d, forced);
    if (S.size() > flags.r || !exactalg::contained_in(F, c.d, S, K[k])) {
      out.reason = "forced span at position " + std::to_string(k + 1) + " does not fit";
      return out;
    }
    // Extend by echelon-ordered kernel vectors.
    for (const auto& v : K[k]) {
      if (S.size() == flags.r) break;
      auto bigger = exactalg::subspace_sum(F, c.d, S, {v});
      if (bigger.size() > S.size()) S = std::move(bigger);
    }
    K[k] = std::move(S);
  }
  out.ok = true;
  for (auto& k : K) out.F.push_back(span_basis(F, c.d, k));
  return out;
}

ChainDiagnostics validate_linked_grassmannian(const LinkedChain& c, const std::vector<std::vector<Vector>>& Fs,
                                              std::size_t r) {
  ChainDiagnostics out;
  auto fail = [&](std::string s) {
    out.ok = false;
    out.problems.push_back(std::move(s));
  };
  const auto& F = c.field;
  if (Fs.size() != c.n) {
    fail("expected one subspace per space of the chain");
    return out;
  }
  for (std::size_t k = 0; k < c.n; ++k)
    if (span_basis(F, c.d, Fs[k]).size() != r) fail("F_" + std::to_string(k + 1) + " does not have dimension r");
  for (std::size_t k = 0; k + 1 < c.n; ++k) {
    if (!exactalg::contained_in(F, c.d, apply_all(c.f[k], Fs[k]), Fs[k + 1]))
      fail("f_" + std::to_string(k + 1) + "(F_" + std::to_string(k + 1) + ") is not inside F_" + std::to_string(k + 2));
    if (!exactalg::contained_in(F, c.d, apply_all(c.fback[k], Fs[k + 1]), Fs[k]))
      fail("f^" + std::to_string(k + 1) + "(F_" + std::to_string(k + 2) + ") is not inside F_" + std::to_string(k + 1));
  }
  return out;
}

std::pair<Matrix, Matrix> degenerate_link(const Matrix& P, const Matrix& Q, std::size_t d1) {
  const auto& F = P.field();
  std::size_t d = P.rows();
  Matrix D1(F, d, d), D2(F, d, d);
  for (std::size_t i = 0; i < d; ++i) (i < d1 ? D1 : D2).at(i, i) = F.one();
  auto Pi = exactalg::inverse(P), Qi = exactalg::inverse(Q);
  if (!Pi || !Qi) throw std::invalid_argument("degenerate_link: P and Q must be invertible");
  return {P * D1 * Q, *Qi * D2 * *Pi};
}

Matrix random_invertible(const FieldSpec& F, std::size_t d, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Matrix M(F, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) M.at(i, j) = F.random(rng);
    if (exactalg::rank(M) == d) return M;
  }
  throw std::runtime_error("random_invertible: no invertible matrix found");
}

LinkedChain gen_random_chain(std::uint64_t seed, const FieldSpec& F, std::size_t d, std::size_t n, const Scalar& s,
                             const std::vector<std::size_t>& ranks) {
  constexpr int kBudget = 1000;
  std::mt19937_64 rng(seed);
  LinkedChain c{F, d, n, s, {}, {}};
  if (n == 0) throw std::invalid_argument("gen_random_chain: chain needs at least one space");
  if (s.is_zero() && ranks.size() + 1 < n) throw std::invalid_argument("gen_random_chain: one rank per link is needed");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kBudget && !placed; ++attempt) {
      Matrix A(F, d, d), B(F, d, d);
      if (s.is_zero()) {
        if (ranks[i] > d) throw std::invalid_argument("gen_random_chain: rank exceeds dimension");
        std::tie(A, B) = degenerate_link(random_invertible(F, d, rng), random_invertible(F, d, rng), ranks[i]);
      } else {
        A = random_invertible(F, d, rng);
        B = exactalg::inverse(A)->scaled(s);
      }
      if (i > 0 && s.is_zero()) {
        if (!subspace_intersect(F, d, column_space(c.f[i - 1]), kernel(A)).empty()) continue;
        if (!subspace_intersect(F, d, column_space(B), kernel(c.fback[i - 1])).empty()) continue;
      }
      c.f.push_back(std::move(A));
      c.fback.push_back(std::move(B));
      placed = true;
    }
    if (!placed)
      throw std::runtime_error("gen_random_chain: condition (III) not met within " + std::to_string(kBudget) +
                               " resamples (seed " + std::to_string(seed) + ", link " + std::to_string(i + 1) + ")");
  }
  return c;
}

namespace {

using curves::CurveModel;
using curves::Multidegree;
using exactalg::Poly;

Poly divisor_polynomial(const FieldSpec& F, long degree, const std::vector<Scalar>& avoid, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 5000; ++attempt) {
    Vector c;
    for (long i = 0; i < degree; ++i) c.push_back(F.random(rng));
    c.push_back(F.one());
    Poly h(F, c);
    bool ok = true;
    for (const auto& p : avoid)
      if (h.eval(p).is_zero()) ok = false;
    if (ok) return h;
  }
  throw BridgeError("no divisor of degree " + std::to_string(degree) + " avoids the nodes");
}

Multidegree raised(Multidegree w, const std::vector<long>& extra) {
  for (std::size_t v = 0; v < extra.size(); ++v) w.weights[v] += extra[v];
  return w;
}

}  // namespace

Bridge curve_to_chain(const CurveModel& model, const llseries::Candidate& cand, std::size_t ce,
                      const std::vector<long>& extra, std::uint64_t seed) {
  const auto& cg = model.graph();
  const auto& g = cg.graph();
  const auto& inst = model.instance();
  const auto& F = model.field();
  if (!cg.multitree()) throw std::invalid_argument("the bridge needs a multitree");
  if (extra.size() != g.num_vertices()) throw std::invalid_argument("one extra degree per component is needed");
  const auto& edge = cg.collapsed().edges.at(ce);
  std::size_t v = edge.a, v2 = edge.b;
  const auto& t = inst.tuple;
  Bridge out;
  out.extra = extra;
  out.segment = multidegrees::segment(cg, t, ce, v);

  std::mt19937_64 rng(seed);
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    std::vector<Scalar> nodes;
    for (auto e : g.incident(u)) nodes.push_back(g.sigma(e, u) > 0 ? inst.tail_coord[e] : inst.head_coord[e]);
    if (extra[u] < 0) throw std::invalid_argument("extra degrees must be nonnegative");
    out.divisor.push_back(divisor_polynomial(F, extra[u], nodes, rng));
  }
  // Twisting up by D: multiply each original component by its h_u and each
  // exceptional chain over e by h_head(q_e); the gluing scalars follow.
  auto aug = inst;
  aug.w0 = raised(inst.w0, extra);
  std::vector<Scalar> chain_scale(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto tl = g.edge(e).tail, hd = g.edge(e).head;
    chain_scale[e] = out.divisor[hd].eval(inst.head_coord[e]);
    aug.lambda[e] = inst.lambda[e] * chain_scale[e] / out.divisor[tl].eval(inst.tail_coord[e]);
  }
  CurveModel big(aug);
  long sum_extra = 0;
  for (auto x : extra) sum_extra += x;
  out.expected_dim = model.degree() + sum_extra + 1 - model.genus();

  auto& chain = out.chain;
  chain.field = F;
  chain.s = F.zero();
  chain.n = out.segment.size();
  chain.d = static_cast<std::size_t>(std::max(0L, out.expected_dim));
  for (const auto& w : out.segment) {
    auto dim = static_cast<long>(big.section_space(raised(w, extra))->dim());
    if (dim != out.expected_dim)
      throw BridgeError("augmented sections at " + w.to_string() + " have dimension " + std::to_string(dim) +
                        ", expected " + std::to_string(out.expected_dim));
  }
  for (std::size_t i = 0; i + 1 < out.segment.size(); ++i) {
    auto a = raised(out.segment[i], extra), b = raised(out.segment[i + 1], extra);
    chain.f.push_back(big.twist_map(a, b));
    chain.fback.push_back(big.twist_map(b, a));
  }

  // Flags: global sections at w_u whose restriction to Z_u lies in V^u, pushed into E.
  const auto& sub = cg.subdivision();
  auto flag = [&](std::size_t u, const Multidegree& wu) {
    auto small = model.section_space(wu);
    auto R = model.restrict_to_component(wu, u, t.w[u]);
    std::size_t len = R.rows();
    auto ann = exactalg::annihilator(F, len, cand.V.at(u));
    auto coords = exactalg::kernel(ann * R);
    auto bigS = big.section_space(raised(wu, extra));
    std::vector<Vector> rows;
    for (const auto& c : coords) {
      Vector x = small->to_ambient(c);
      Vector y(bigS->ambient_dim, F.zero());
      for (std::size_t z = 0; z < small->weights.size(); ++z) {
        Poly p = small->component(x, z);
        if (z < g.num_vertices()) {
          p = p * out.divisor[z];
        } else {
          p = p.scaled(chain_scale[*sub.origin_edge[z]]);
        }
        if (p.is_zero()) continue;
        auto cc = p.padded(bigS->block_size(z));
        for (std::size_t k = 0; k < cc.size(); ++k) y[bigS->offset[z] + k] = cc[k];
      }
      rows.push_back(bigS->coordinates(y));
    }
    return span_basis(F, bigS->dim(), rows);
  };
  out.flags.r = static_cast<std::size_t>(cand.r + 1);
  out.flags.F1 = flag(v, out.segment.front());
  out.flags.Fn = flag(v2, out.segment.back());
  out.flags_full_rank = out.flags.F1.size() == out.flags.r && out.flags.Fn.size() == out.flags.r;
  return out;
}

Bridge curve_to_chain_auto(const CurveModel& model, const llseries::Candidate& c, std::size_t ce, long max_extra,
                           std::uint64_t seed) {
  std::string last;
  for (long k = 0; k <= max_extra; ++k) {
    try {
      return curve_to_chain(model, c, ce, std::vector<long>(model.graph().num_vertices(), k), seed);
    } catch (const BridgeError& e) {
      last = e.what();
    }
  }
  throw BridgeError("no extra degree up to " + std::to_string(max_extra) + " gives constant dimension: " + last);
}

}  // namespace lls::linkedet
