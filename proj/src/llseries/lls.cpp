#include "lls/llseries/lls.hpp"

#include <algorithm>
#include <stdexcept>

namespace lls::llseries {

namespace {

std::size_t len_of(long deg) { return deg < 0 ? 0 : static_cast<std::size_t>(deg + 1); }

// Rows of M applied to each vector of `vs` (as columns), returned as vectors.
std::vector<Vector> images(const Matrix& M, const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(M.apply(v));
  return out;
}

Multidegree member_w(const ConcentratedTuple& t, std::size_t v) { return t.w.at(v); }

}  // namespace

CandidateDiagnostics validate_candidate(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c) {
  CandidateDiagnostics d;
  auto fail = [&](std::string s) {
    d.ok = false;
    d.problems.push_back(std::move(s));
  };
  const auto& F = model.field();
  const auto& g = model.graph().graph();
  if (c.r < 0) fail("rank r must be nonnegative");
  if (c.V.size() != g.num_vertices()) {
    fail("candidate needs one subspace per component");
    return d;
  }
  for (std::size_t v = 0; v < c.V.size(); ++v) {
    long deg = t.w.at(v).weights.at(v);
    std::size_t len = len_of(deg);
    const auto& rows = c.V[v];
    bool shaped = true;
    for (const auto& row : rows) {
      if (row.size() != len) {
        fail("component " + g.label(v) + ": rows must have " + std::to_string(len) + " coefficients");
        shaped = false;
        break;
      }
      for (const auto& x : row)
        if (!F.contains(x)) {
          fail("component " + g.label(v) + ": coefficient outside " + F.describe());
          shaped = false;
          break;
        }
      if (!shaped) break;
    }
    if (!shaped) continue;
    if (static_cast<long>(rows.size()) != c.r + 1) {
      fail("component " + g.label(v) + ": expected " + std::to_string(c.r + 1) + " basis rows, got " +
           std::to_string(rows.size()));
      continue;
    }
    if (static_cast<long>(exactalg::span_basis(F, len, rows).size()) != c.r + 1)
      fail("component " + g.label(v) + ": basis rows are dependent");
  }
  return d;
}

std::vector<long> critical_indices(const DivisorSeq& D) {
  std::vector<long> out;
  for (std::size_t j = 0; j + 1 < D.length(); ++j)
    if (D.mult[j + 1] != D.mult[j]) out.push_back(static_cast<long>(j));
  return out;
}

std::vector<Vector> vanishing_subspace(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const DivisorSeq& D, std::size_t i) {
  return curves::subspace_vanishing(field, len, V, D.points, D.mult.at(i));
}

Multivanishing multivanishing_sequence(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const DivisorSeq& D) {
  Multivanishing out;
  std::vector<long> dims;
  for (std::size_t i = 0; i < D.length(); ++i)
    dims.push_back(static_cast<long>(vanishing_subspace(field, len, V, D, i).size()));
  for (std::size_t i = 0; i + 1 < D.length(); ++i)
    for (long m = 0; m < dims[i] - dims[i + 1]; ++m) out.a.push_back(D.degree(i));
  if (!dims.empty() && dims.back() > 0) {
    out.terminal = true;
    for (long m = 0; m < dims.back(); ++m) out.a.push_back(D.degree(D.length() - 1));
  }
  return out;
}

long order_of_vanishing(const FieldSpec& field, std::size_t len, const Vector& s, const DivisorSeq& D) {
  if (exactalg::is_zero_vector(s)) throw std::invalid_argument("order of vanishing of the zero section");
  long best = D.degree(0);
  for (std::size_t i = 0; i < D.length(); ++i) {
    if (vanishing_subspace(field, len, {s}, D, i).empty()) break;
    best = D.degree(i);
  }
  return best;
}

long brill_noether_rho(long g, long r, long d) { return g + (r + 1) * (d - r - g); }

std::vector<Matrix> annihilators(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c) {
  std::vector<Matrix> out;
  for (std::size_t v = 0; v < c.V.size(); ++v)
    out.push_back(exactalg::annihilator(model.field(), len_of(t.w.at(v).weights.at(v)), c.V[v]));
  return out;
}

KernelChecker::KernelChecker(const CurveModel& model, const ConcentratedTuple& t) : model_(model), tuple_(t) {}

const std::vector<Matrix>& KernelChecker::restrictions(const Multidegree& w) {
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;
  std::vector<Matrix> rs;
  for (std::size_t v = 0; v < tuple_.w.size(); ++v) rs.push_back(model_.restrict_to_component(w, v, tuple_.w[v]));
  return cache_.emplace(w, std::move(rs)).first->second;
}

long KernelChecker::kernel_dimension_at(const std::vector<Matrix>& ann, const Multidegree& w) {
  const auto& rs = restrictions(w);
  auto dim = model_.section_space(w)->dim();
  Matrix stacked(model_.field(), 0, dim);
  for (std::size_t v = 0; v < rs.size(); ++v) stacked = stacked.stack(ann[v] * rs[v]);
  return static_cast<long>(dim) - static_cast<long>(exactalg::rank(stacked));
}

long KernelChecker::kernel_dimension_at(const Candidate& c, const Multidegree& w) {
  return kernel_dimension_at(annihilators(model_, tuple_, c), w);
}

std::vector<Multidegree> KernelChecker::default_window() const {
  if (!model_.graph().multitree())
    throw std::invalid_argument("the kernel method needs an explicit window on graphs that are not multitrees");
  return multidegrees::enumerate_bar_G(model_.graph(), tuple_).nodes;
}

long kernel_dimension_at(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                         const Multidegree& w) {
  KernelChecker k(model, t);
  return k.kernel_dimension_at(c, w);
}

namespace {

void fill_common(Verdict& out, const CurveModel& model, const ConcentratedTuple& t, const Candidate& c) {
  out.r = c.r;
  out.d = model.degree();
  out.g = model.genus();
  out.rho = brill_noether_rho(out.g, out.r, out.d);
  for (std::size_t v = 0; v < t.w.size(); ++v) out.component_degrees.push_back(t.w[v].weights[v]);
}

}  // namespace

Verdict is_lls_kernel(KernelChecker& checker, const Candidate& c,
                      const std::optional<std::vector<Multidegree>>& window) {
  const auto& model = checker.model();
  Verdict out;
  out.method = "kernel";
  fill_common(out, model, checker.tuple(), c);
  out.window_bounded = window.has_value() && !model.graph().multitree();
  auto ws = window ? *window : checker.default_window();
  auto ann = annihilators(model, checker.tuple(), c);
  out.member = true;
  for (const auto& w : ws) {
    long k = checker.kernel_dimension_at(ann, w);
    out.kernel_dims.emplace_back(w, k);
    if (k < c.r + 1) out.member = false;
  }
  return out;
}

Verdict is_lls_kernel(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                      const std::optional<std::vector<Multidegree>>& window) {
  KernelChecker k(model, t);
  return is_lls_kernel(k, c, window);
}

namespace {

struct PairData {
  std::size_t v, v2;
  long b;
  DivisorSeq D1, D2;
  std::size_t len1, len2;
};

PairData pair_data(const CurveModel& model, const ConcentratedTuple& t, std::size_t ce) {
  const auto& cg = model.graph();
  if (!cg.multitree()) throw std::invalid_argument("pairwise checks need a multitree");
  const auto& edge = cg.collapsed().edges.at(ce);
  PairData p{edge.a, edge.b, t.b.at(ce), model.divisor_sequence(t, ce, edge.a),
             model.divisor_sequence(t, ce, edge.b), len_of(t.w[edge.a].weights[edge.a]),
             len_of(t.w[edge.b].weights[edge.b])};
  return p;
}

struct JetRanks {
  long dim1, dim2, image1, image2, rank;
};

JetRanks jet_ranks(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c, std::size_t ce,
                   const PairData& p, long i) {
  const auto& F = model.field();
  auto W1 = vanishing_subspace(F, p.len1, c.V[p.v], p.D1, static_cast<std::size_t>(i));
  auto W2 = vanishing_subspace(F, p.len2, c.V[p.v2], p.D2, static_cast<std::size_t>(p.b - i));
  JetRanks out{static_cast<long>(W1.size()), static_cast<long>(W2.size()), 0, 0, 0};
  auto jm = model.jet_map(t, ce, p.v, i);
  if (jm.nodes.empty()) return out;
  std::size_t rows = jm.nodes.size();
  auto im1 = exactalg::span_basis(F, rows, images(jm.v_side, W1));
  auto im2 = exactalg::span_basis(F, rows, images(jm.w_side, W2));
  out.image1 = static_cast<long>(im1.size());
  out.image2 = static_cast<long>(im2.size());
  out.rank = static_cast<long>(exactalg::subspace_sum(F, rows, im1, im2).size());
  return out;
}

}  // namespace

std::vector<long> pairwise_kernel_check(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                                        std::size_t ce) {
  auto p = pair_data(model, t, ce);
  std::vector<long> out;
  for (long i = 0; i <= p.b; ++i) {
    auto jr = jet_ranks(model, t, c, ce, p, i);
    out.push_back(jr.dim1 + jr.dim2 - jr.rank);
  }
  return out;
}

namespace {

// Failing (l, j) pairs of condition (I) read from side 1 against side 2.
std::vector<std::pair<long, long>> condition_I_failures(long r, long b, const std::vector<long>& a1,
                                                        const std::vector<long>& a2, const DivisorSeq& D1,
                                                        const DivisorSeq& D2) {
  std::vector<std::pair<long, long>> out;
  auto crit = critical_indices(D1);
  for (long l = 0; l <= r; ++l)
    for (long j : crit) {
      if (j > b) continue;
      if (a1[static_cast<std::size_t>(l)] != D1.degree(static_cast<std::size_t>(j))) continue;
      if (a2[static_cast<std::size_t>(r - l)] < D2.degree(static_cast<std::size_t>(b - j))) out.emplace_back(l, j);
    }
  return out;
}

}  // namespace

EdgeReport eh_conditions(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c, std::size_t ce) {
  const auto& F = model.field();
  auto p = pair_data(model, t, ce);
  EdgeReport rep;
  rep.ce = ce;
  rep.v = p.v;
  rep.v2 = p.v2;
  rep.b = p.b;
  rep.a1 = multivanishing_sequence(F, p.len1, c.V[p.v], p.D1);
  rep.a2 = multivanishing_sequence(F, p.len2, c.V[p.v2], p.D2);
  rep.critical = critical_indices(p.D1);
  const long r = c.r;
  if (static_cast<long>(rep.a1.a.size()) != r + 1 || static_cast<long>(rep.a2.a.size()) != r + 1)
    throw std::invalid_argument("candidate subspaces must have dimension r+1");
  rep.failures_I = condition_I_failures(r, p.b, rep.a1.a, rep.a2.a, p.D1, p.D2);
  rep.cond_I = rep.failures_I.empty();
  rep.cond_I_symmetric = condition_I_failures(r, p.b, rep.a2.a, rep.a1.a, p.D2, p.D1).empty();
  if (!rep.cond_I) {
    rep.cond_II = false;
    return rep;
  }
  rep.cond_II_checked = true;
  for (long i : rep.critical) {
    CriticalStep st;
    st.j = i;
    long deg1 = p.D1.degree(static_cast<std::size_t>(i));
    long deg2 = p.D2.degree(static_cast<std::size_t>(p.b - i));
    const auto& a1 = rep.a1.a;
    const auto& a2 = rep.a2.a;
    st.l1 = r + 1;
    st.l2 = -1;
    st.l3 = r + 1;
    st.l4 = -1;
    for (long l = r; l >= 0; --l)
      if (a1[static_cast<std::size_t>(l)] >= deg1) st.l1 = l;
    for (long l = 0; l <= r; ++l)
      if (a1[static_cast<std::size_t>(l)] <= deg1) st.l2 = l;
    for (long l = r; l >= 0; --l)
      if (a2[static_cast<std::size_t>(l)] >= deg2) st.l3 = l;
    for (long l = 0; l <= r; ++l)
      if (a2[static_cast<std::size_t>(l)] <= deg2) st.l4 = l;
    for (long l = st.l1; l <= st.l2; ++l)
      if (st.l3 <= r - l && r - l <= st.l4) ++st.required;
    auto jr = jet_ranks(model, t, c, ce, p, i);
    st.rank = jr.rank;
    st.image1 = jr.image1;
    st.image2 = jr.image2;
    st.overlap = jr.image1 + jr.image2 - jr.rank;
    if (st.overlap < st.required) rep.cond_II = false;
    rep.steps.push_back(st);
  }
  return rep;
}

bool eh_condition_I(const EdgeReport& report) { return report.cond_I; }

bool eh_condition_II(const EdgeReport& report) {
  if (!report.cond_II_checked) throw std::logic_error("condition (II) is only evaluated once (I) holds");
  return report.cond_II;
}

Verdict is_lls_eh(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c) {
  const auto& cg = model.graph();
  if (!cg.multitree()) throw std::invalid_argument("the Eisenbud-Harris style check needs a multitree");
  Verdict out;
  out.method = "eh";
  fill_common(out, model, t, c);
  out.member = true;
  for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) {
    auto rep = eh_conditions(model, t, c, ce);
    if (!rep.cond_I || !rep.cond_II) out.member = false;
    out.edges.push_back(std::move(rep));
  }
  return out;
}

namespace {

// Multiplication by pi as a (len_to x len_from) matrix.
Matrix multiplication_matrix(const FieldSpec& F, const exactalg::Poly& pi, std::size_t len_from, std::size_t len_to) {
  Matrix M(F, len_to, len_from);
  for (std::size_t j = 0; j < len_from; ++j) {
    Vector e(len_from, F.zero());
    e[j] = F.one();
    auto prod = exactalg::Poly(F, e) * pi;
    if (prod.degree() >= static_cast<int>(len_to)) throw curves::ModelError("transport overflows the target degree");
    auto col = prod.padded(len_to);
    for (std::size_t i = 0; i < len_to; ++i) M.at(i, j) = col[i];
  }
  return M;
}

// Multiplier on Z_v of the twist path from `from` to `to`; requires no twist at v.
std::optional<exactalg::Poly> avoiding_multiplier(const CurveModel& model, const Multidegree& from,
                                                  const Multidegree& to, std::size_t v) {
  auto path = multidegrees::minimal_path(model.graph(), from, to);
  if (!path) throw std::invalid_argument("tuples come from different multidegree classes");
  if (path->counts[v] != 0) return std::nullopt;
  return model.multiplier(path->subdivided, v);
}

}  // namespace

std::optional<Candidate> transport_candidate(const CurveModel& model, const ConcentratedTuple& t,
                                             const ConcentratedTuple& t2, const Candidate& c) {
  const auto& F = model.field();
  const auto& cg = model.graph();
  Candidate out{c.r, {}};
  for (std::size_t v = 0; v < c.V.size(); ++v) {
    const auto& wv = member_w(t, v);
    const auto& wv2 = member_w(t2, v);
    std::size_t len = len_of(wv.weights[v]), len2 = len_of(wv2.weights[v]);
    auto path = multidegrees::minimal_path(cg, wv, wv2);
    if (!path) throw std::invalid_argument("tuples come from different multidegree classes");
    // Intermediate w'' = w_v twisted along the path except at v; both w_v and
    // w'_v reach it without twisting at v.
    auto partial = path->counts;
    partial[v] = 0;
    auto mid = multidegrees::apply_multiset(cg, wv, partial);
    std::size_t len_mid = len_of(mid.weights[v]);
    auto pi1 = avoiding_multiplier(model, wv, mid, v);
    auto pi2 = avoiding_multiplier(model, wv2, mid, v);
    if (!pi1 || !pi2) throw std::logic_error("transport path unexpectedly twists at the component");
    auto M1 = multiplication_matrix(F, *pi1, len, len_mid);
    auto M2 = multiplication_matrix(F, *pi2, len2, len_mid);
    auto Vmid = images(M1, c.V[v]);
    auto ann = exactalg::annihilator(F, len_mid, Vmid);
    auto pre = exactalg::rank_and_kernel(ann * M2).kernel_basis;
    if (static_cast<long>(pre.size()) != c.r + 1) return std::nullopt;
    out.V.push_back(std::move(pre));
  }
  return out;
}

bool check_indep_of_wv(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                       const std::vector<ConcentratedTuple>& alternatives) {
  bool base = is_lls_kernel(model, t, c).member;
  for (const auto& t2 : alternatives) {
    auto c2 = transport_candidate(model, t, t2, c);
    if (!c2) {
      // A member always lies in the image of the transport map.
      if (base) return false;
      continue;
    }
    if (is_lls_kernel(model, t2, *c2).member != base) return false;
  }
  return true;
}

}  // namespace lls::llseries
