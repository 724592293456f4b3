#include <doctest.h>

#include "../support/random_graphs.hpp"
#include "lls/multidegrees/tuple.hpp"

using namespace lls;
using namespace lls::multidegrees;
using lls::testing::random_chained_graph;
using lls::testing::random_multidegree;

namespace {

ChainedGraph chained(std::size_t nv, std::vector<graphs::Edge> es, ChainStructure n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nv; ++i) labels.push_back("v" + std::to_string(i + 1));
  return ChainedGraph(graphs::DualGraph(labels, std::move(es)), std::move(n));
}

}  // namespace

TEST_CASE("total degree") {
  auto one = chained(2, {{0, 1}}, {1});
  CHECK(total_degree(one, Multidegree{{1, 0}, {0}}) == 1);
  auto three = chained(2, {{0, 1}}, {3});
  CHECK(total_degree(three, Multidegree{{0, 0}, {2}}) == 1);
  auto two = chained(2, {{0, 1}, {0, 1}}, {2, 1});
  CHECK(total_degree(two, Multidegree{{-1, 1}, {1, 0}}) == 1);
  CHECK_FALSE(is_well_formed(three, Multidegree{{0, 0}, {3}}));
  CHECK_FALSE(is_well_formed(three, Multidegree{{0}, {0}}));
}

TEST_CASE("twist rule") {
  auto path = chained(3, {{0, 1}, {1, 2}}, {1, 1});
  CHECK(twist(path, Multidegree{{2, 0, 0}, {0, 0}}, 0) == Multidegree{{1, 1, 0}, {0, 0}});
  CHECK(twist(path, Multidegree{{0, 2, 0}, {0, 0}}, 1) == Multidegree{{1, 0, 1}, {0, 0}});

  auto g = chained(2, {{0, 1}}, {3});
  auto w = twist(g, Multidegree{{1, 0}, {0}}, 0);
  CHECK(w == Multidegree{{0, 0}, {1}});
  w = twist(g, twist(g, w, 0), 0);
  CHECK(w == Multidegree{{0, 1}, {0}});
}

TEST_CASE("lifting to the subdivision") {
  auto g = chained(2, {{0, 1}}, {3});
  auto lift = lift_to_subdivision(g, Multidegree{{0, 0}, {2}});
  const auto& pv = g.subdivision().path_vertices[0];
  std::vector<long> along;
  for (auto u : pv) along.push_back(lift[u]);
  CHECK(along == std::vector<long>{0, 0, 1, 0});
  auto flat = lift_to_subdivision(g, Multidegree{{2, 1}, {0}});
  CHECK(flat[pv[1]] == 0);
  CHECK(flat[pv[2]] == 0);
}

TEST_CASE("twist calculus properties") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    auto cg = random_chained_graph(rng);
    auto w = random_multidegree(cg, rng);
    std::size_t v = rng() % cg.num_vertices();
    auto t = twist(cg, w, v);
    CHECK(total_degree(cg, t) == total_degree(cg, w));
    CHECK(is_well_formed(cg, t));
    CHECK(negative_twist(cg, t, v) == w);
    CHECK(twist(cg, negative_twist(cg, w, v), v) == w);
    CHECK(twist_set(cg, w, std::vector<bool>(cg.num_vertices(), true)) == w);
    CHECK(descend_from_subdivision(cg, lift_to_subdivision(cg, w)) == std::optional<Multidegree>(w));
    CHECK(laplacian_kernel_check(cg));
    // lifted twist is chip-firing on the subdivision
    auto fired = lift_to_subdivision(cg, w);
    auto k = subdivided_firing(cg, w, v);
    for (std::size_t u = 0; u < k.size(); ++u) fired = fire(cg, fired, u, k[u]);
    CHECK(fired == lift_to_subdivision(cg, t));
  }
}

TEST_CASE("same endpoint") {
  auto g = chained(3, {{0, 1}, {1, 2}}, {1, 1});
  CHECK(same_endpoint({1, 0, 0}, {2, 1, 1}));
  CHECK(same_endpoint({0, 1, 0}, {0, 1, 0}));
  CHECK_FALSE(same_endpoint({1, 0, 0}, {0, 1, 0}));
  CHECK(normalize({2, 1, 1}) == TwistMultiset{1, 0, 0});

  // against brute-force application
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    auto cg = random_chained_graph(rng);
    auto w = random_multidegree(cg, rng);
    TwistMultiset a(cg.num_vertices()), b(cg.num_vertices());
    for (auto& x : a) x = static_cast<long>(rng() % 3);
    for (auto& x : b) x = static_cast<long>(rng() % 3);
    if (trial % 3 == 0) {
      b = a;
      long shift = static_cast<long>(rng() % 2);
      for (auto& x : b) x += shift;
    }
    CHECK(same_endpoint(a, b) == (apply_multiset(cg, w, a) == apply_multiset(cg, w, b)));
  }
}

TEST_CASE("minimal paths agree with breadth-first search") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 150; ++trial) {
    auto cg = random_chained_graph(rng, 3, 2);
    auto w = random_multidegree(cg, rng);
    TwistMultiset m(cg.num_vertices());
    for (auto& x : m) x = static_cast<long>(rng() % 3);
    auto target = apply_multiset(cg, w, m);
    auto mp = minimal_path(cg, w, target);
    REQUIRE(mp.has_value());
    CHECK(apply_multiset(cg, w, mp->counts) == target);
    CHECK(*std::min_element(mp->counts.begin(), mp->counts.end()) == 0);
    CHECK(same_endpoint(mp->counts, m));
    auto bfs = bfs_minimal_path(cg, w, target, 8);
    REQUIRE(bfs.has_value());
    long bl = 0;
    for (auto x : *bfs) bl += x;
    CHECK(mp->length() == bl);
  }
  // different total degree: unreachable
  auto g = chained(2, {{0, 1}}, {1});
  CHECK_FALSE(minimal_path(g, Multidegree{{1, 0}, {0}}, Multidegree{{1, 1}, {0}}).has_value());
}

TEST_CASE("concentration") {
  auto par = chained(2, {{0, 1}, {0, 1}}, {1, 1});
  CHECK(is_concentrated(par, Multidegree{{1, 1}, {0, 0}}, 0).has_value());
  CHECK(is_concentrated(par, Multidegree{{1, 1}, {0, 0}}, 1).has_value());

  auto node = chained(2, {{0, 1}}, {1});
  CHECK(is_concentrated(node, Multidegree{{3, 0}, {0}}, 0).has_value());
  CHECK_FALSE(is_concentrated(node, Multidegree{{3, 0}, {0}}, 1).has_value());
  CHECK(concentrate(node, Multidegree{{0, 3}, {0}}, 0).w == Multidegree{{3, 0}, {0}});
  CHECK(concentrate(node, Multidegree{{3, 0}, {0}}, 0).w == Multidegree{{3, 0}, {0}});

  auto path = chained(3, {{0, 1}, {1, 2}}, {1, 1});
  CHECK(is_concentrated(path, Multidegree{{5, -1, -2}, {0, 0}}, 0).has_value());

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    auto cg = random_chained_graph(rng);
    auto w = random_multidegree(cg, rng);
    std::size_t v = rng() % cg.num_vertices();
    auto c = concentrate(cg, w, v);
    CHECK(is_concentrated(cg, c.w, v).has_value());
    CHECK(c.twists[v] == 0);
    CHECK(apply_multiset(cg, w, c.twists) == c.w);
    if (is_strongly_concentrated(cg, c.w, v)) CHECK(is_concentrated(cg, c.w, v).has_value());
  }
}

TEST_CASE("concentrated tuples and the bounded tree") {
  auto two = chained(2, {{0, 1}}, {1});
  auto t = derive_tuple(two, Multidegree{{2, 0}, {0}});
  CHECK(validate_concentrated_tuple(two, t).ok);
  CHECK(t.b[0] == 2);
  CHECK(enumerate_bar_G(two, t).nodes.size() == 3);
  auto seg = segment(two, t, 0, 0);
  REQUIRE(seg.size() == 3);
  for (long i = 0; i < 3; ++i) {
    CHECK(t_ev(two, t, seg[i], 0, 0) == i);
    CHECK(t_ev(two, t, seg[i], 0, 1) == 2 - i);
  }
  CHECK(t_ev(two, t, t.w[0], 0, 0) == 0);

  auto path = chained(3, {{0, 1}, {1, 2}}, {1, 1});
  auto tp = derive_tuple(path, Multidegree{{1, 0, 0}, {0, 0}});
  CHECK(tp.b == std::vector<long>{1, 1});
  CHECK(enumerate_bar_G(path, tp).nodes.size() == 3);
  auto tp2 = derive_tuple(path, Multidegree{{2, 0, 0}, {0, 0}});
  CHECK(tp2.b == std::vector<long>{2, 2});
  CHECK(enumerate_bar_G(path, tp2).nodes.size() == 5);

  // restriction to everything is the identity; inside a segment it is naive
  auto all = restrict_multidegree(path, tp, tp.w[1], {true, true, true});
  CHECK(all.w == tp.w[1]);
  auto sub = restrict_multidegree(path, tp, tp.w[1], {true, true, false});
  CHECK(sub.w.weights == std::vector<long>{tp.w[1].weights[0], tp.w[1].weights[1]});

  // rejections
  auto bad = t;
  bad.w[0] = Multidegree{{0, 2}, {0}};
  CHECK_FALSE(validate_concentrated_tuple(two, bad).ok);
  auto neg = t;
  std::swap(neg.w[0], neg.w[1]);
  neg.b[0] = -2;
  CHECK_FALSE(validate_concentrated_tuple(two, neg).ok);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto cg = random_chained_graph(rng, 4, 3, true);
    REQUIRE(cg.multitree());
    auto w = random_multidegree(cg, rng, -1, 3);
    TupleOptions opts;
    opts.root = rng() % cg.num_vertices();
    auto tt = derive_tuple(cg, w, opts);
    CHECK(validate_concentrated_tuple(cg, tt).ok);
    long sum = 0;
    for (auto b : tt.b) sum += b;
    CHECK(static_cast<long>(enumerate_bar_G(cg, tt).nodes.size()) == 1 + sum);
    for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) {
      const auto& e = cg.collapsed().edges[ce];
      auto s = segment(cg, tt, ce, e.a);
      CHECK(s.front() == tt.w[e.a]);
      CHECK(s.back() == tt.w[e.b]);
      for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(t_ev(cg, tt, s[i], ce, e.a) + t_ev(cg, tt, s[i], ce, e.b) == tt.b[ce]);
    }
  }
}
