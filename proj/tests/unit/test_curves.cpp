#include <doctest.h>

#include "../support/builders.hpp"
#include "lls/cli/corpus.hpp"

using namespace lls;
using namespace lls::testing;
using exactalg::Matrix;

namespace {

std::vector<long> first_node(const curves::DivisorSeq& D) {
  std::vector<long> out;
  for (const auto& m : D.mult) out.push_back(m[0]);
  return out;
}

}  // namespace

TEST_CASE("divisor sequences") {
  auto Q = FieldSpec::rationals();
  SUBCASE("odd b on a chain of length two") {
    auto inst = curves::make_instance(Q, {"1", "2"}, {edge(Q, 0, 1, 2, 0, 0, 1)}, Multidegree{{1, -1}, {1}});
    auto& cg = *inst.graph;
    Multidegree wa{{1, -1}, {1}};
    inst.tuple = {{wa, multidegrees::twist_pair_times(cg, wa, 0, 0, 3)}, {3}};
    REQUIRE(multidegrees::validate_concentrated_tuple(cg, inst.tuple).ok);
    CurveModel m(inst);
    CHECK(first_node(m.divisor_sequence(inst.tuple, 0, 0)) == std::vector<long>{0, 0, 1, 1, 2});
  }
  SUBCASE("trivial chains give multiples of the node sum") {
    auto inst = curves::make_instance(Q, {"1", "2"}, {edge(Q, 0, 1, 1, 0, 0, 1), edge(Q, 0, 1, 1, 1, 1, 2)},
                                      Multidegree{{2, 0}, {0, 0}});
    CurveModel m(inst);
    const auto& t = m.instance().tuple;
    auto D = m.divisor_sequence(t, 0, 0);
    CHECK(D.length() == static_cast<std::size_t>(t.b[0] + 2));
    for (std::size_t i = 0; i < D.length(); ++i) {
      CHECK(D.mult[i] == std::vector<int>{static_cast<int>(i), static_cast<int>(i)});
      CHECK(D.degree(i) == 2 * static_cast<long>(i));
    }
    auto jm = m.jet_map(t, 0, 0, 0);
    CHECK(jm.nodes.size() == 2);
    CHECK(jm.v_side.rows() == 2);
    CHECK(jm.w_side.rows() == 2);
  }
}

TEST_CASE("vanishing orders along a segment") {
  auto Q = FieldSpec::rationals();
  CurveModel m(curves::make_instance(Q, {"1", "2"}, {edge(Q, 0, 1, 1, 0, 0, 1)}, Multidegree{{3, 0}, {0}}));
  const auto& t = m.instance().tuple;
  REQUIRE(t.b[0] == 3);
  auto seg = multidegrees::segment(m.graph(), t, 0, 0);
  for (std::size_t i = 0; i < seg.size(); ++i) {
    auto ord = m.vanishing_orders(t, seg[i]);
    CHECK(ord.at({0, 0}) == static_cast<int>(i));
    CHECK(ord.at({0, 1}) == 3 - static_cast<int>(i));
  }
}

TEST_CASE("section spaces") {
  auto Q = FieldSpec::rationals();
  // two lines meeting twice: g = 1, d = 2
  auto inst = curves::make_instance(Q, {"1", "2"}, {edge(Q, 0, 1, 1, 0, 0, 1), edge(Q, 0, 1, 1, 1, 1, 1)},
                                    Multidegree{{1, 1}, {0, 0}});
  CurveModel m(inst);
  CHECK(m.genus() == 1);
  CHECK(m.degree() == 2);
  auto S = m.section_space(Multidegree{{1, 1}, {0, 0}});
  CHECK(S->dim() == 2);
  // every basis section really glues
  for (std::size_t i = 0; i < S->dim(); ++i) {
    auto x = S->basis.row(i);
    for (std::size_t e = 0; e < 2; ++e) {
      auto p = Q.from_int(static_cast<long>(e));
      CHECK(S->component(x, 0).eval(p) == S->component(x, 1).eval(p));
    }
  }
  // negative degree on a component: no sections there
  CHECK(m.section_space(Multidegree{{3, -1}, {0, 0}})->dim() >= 1);
}

TEST_CASE("twist maps") {
  auto Q = FieldSpec::rationals();
  CurveModel m(worked_instance(Q));
  const auto& t = m.instance().tuple;
  auto S = m.section_space(t.w[0]);
  CHECK(m.twist_map(t.w[0], t.w[0]) == Matrix::identity(Q, S->dim()));

  // restriction is injective at a concentrated multidegree
  for (std::size_t v = 0; v < 2; ++v) {
    auto R = m.restrict_to_component(t.w[v], v, t.w[v]);
    CHECK(exactalg::rank(R) == m.section_space(t.w[v])->dim());
  }
  // from a negative twist at v, reaching w_v twists at v: the map to Z_v vanishes
  auto w = multidegrees::negative_twist(m.graph(), t.w[0], 0);
  CHECK(m.restrict_to_component(w, 0, t.w[0]).is_zero());

  // single component: restriction is the identity
  auto one = curves::make_instance(Q, {"x"}, {}, Multidegree{{2}, {}});
  CurveModel m1(one);
  CHECK(m1.restrict_to_component(one.w0, 0, one.w0) == Matrix::identity(Q, 3));
}

TEST_CASE("vanishing subspaces") {
  auto Q = FieldSpec::rationals();
  std::vector<Vector> full{ints(Q, {1, 0, 0}), ints(Q, {0, 1, 0}), ints(Q, {0, 0, 1})};
  CHECK(curves::subspace_vanishing(Q, 3, full, {Q.zero()}, {0}).size() == 3);
  CHECK(curves::subspace_vanishing(Q, 3, full, {Q.zero()}, {3}).empty());
  auto V = curves::subspace_vanishing(Q, 3, {ints(Q, {1, 0, 0}), ints(Q, {0, 0, 1})}, {Q.zero()}, {1});
  CHECK(V == std::vector<Vector>{ints(Q, {0, 0, 1})});
  // x(x-1) is the only quadric through 0 and 1 up to scaling
  auto W = curves::subspace_vanishing(Q, 3, full, {Q.zero(), Q.one()}, {1, 1});
  CHECK(W == std::vector<Vector>{ints(Q, {0, 1, -1})});
}

TEST_CASE("random instances: dimension bound and path independence") {
  std::mt19937_64 rng(17);
  auto F = FieldSpec::prime(5);
  cli::RandomInstanceOptions opts;
  opts.min_vertices = 1;
  opts.max_vertices = 3;
  opts.max_chain = 2;
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = cli::random_graph_instance(F, opts, rng);
    CurveModel m(inst);
    const auto& cg = m.graph();
    long bound = m.degree() + 1 - m.genus();
    auto ball = multidegrees::twist_ball(cg, {inst.w0}, 1);
    for (const auto& w : ball) {
      CHECK(static_cast<long>(m.section_space(w)->dim()) >= bound);
      auto mp = multidegrees::minimal_path(cg, inst.w0, w);
      REQUIRE(mp.has_value());
      // two orderings of the same multiset give the same map
      std::vector<std::size_t> order;
      for (std::size_t v = 0; v < mp->counts.size(); ++v)
        for (long k = 0; k < mp->counts[v]; ++k) order.push_back(v);
      auto direct = m.twist_map(inst.w0, w);
      CHECK(m.twist_map_along(inst.w0, order) == direct);
      std::reverse(order.begin(), order.end());
      CHECK(m.twist_map_along(inst.w0, order) == direct);
    }
  }
}
