#include <doctest.h>

#include "../support/builders.hpp"
#include "lls/linkedet/linked.hpp"

using namespace lls;
using namespace lls::testing;
using exactalg::Matrix;
using linkedet::FlagPair;
using linkedet::LinkedChain;

namespace {

LinkedChain diag_chain(const FieldSpec& F) {
  LinkedChain c;
  c.field = F;
  c.d = 2;
  c.n = 2;
  c.s = F.zero();
  c.f = {Matrix::from_ints(F, {{1, 0}, {0, 0}})};
  c.fback = {Matrix::from_ints(F, {{0, 0}, {0, 1}})};
  return c;
}

bool has_problem(const linkedet::ChainDiagnostics& d, const std::string& tag) {
  for (const auto& p : d.problems)
    if (p.find(tag) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("s-linked validation") {
  auto Q = FieldSpec::rationals();
  CHECK(linkedet::validate_s_linked(diag_chain(Q)).ok);

  auto zero = diag_chain(Q);
  zero.f[0] = Matrix(Q, 2, 2);
  zero.fback[0] = Matrix(Q, 2, 2);
  auto d = linkedet::validate_s_linked(zero);
  CHECK_FALSE(d.ok);
  CHECK(has_problem(d, "(II)"));

  auto inv = diag_chain(Q);
  inv.s = Q.from_int(3);
  inv.f[0] = Matrix::from_ints(Q, {{1, 1}, {0, 1}});
  inv.fback[0] = exactalg::inverse(inv.f[0])->scaled(inv.s);
  CHECK(linkedet::validate_s_linked(inv).ok);
  inv.fback[0] = *exactalg::inverse(inv.f[0]);
  CHECK(has_problem(linkedet::validate_s_linked(inv), "(I)"));

  CHECK(linkedet::validate_s_linked(linkedet::reversed(diag_chain(Q))).ok);
}

TEST_CASE("linked determinantal membership") {
  auto Q = FieldSpec::rationals();
  auto c = diag_chain(Q);
  FlagPair same{1, {ints(Q, {1, 0})}, {ints(Q, {1, 0})}};
  auto m = linkedet::linked_det_membership(c, same);
  CHECK(m.member);
  CHECK(m.ranks == std::vector<long>{1, 1});

  FlagPair cross{1, {ints(Q, {1, 0})}, {ints(Q, {0, 1})}};
  auto m2 = linkedet::linked_det_membership(c, cross);
  CHECK_FALSE(m2.member);
  CHECK(m2.ranks[0] == 2);

  // n = 2: completion adds nothing and succeeds exactly for members
  auto comp = linkedet::complete_flags(c, same);
  CHECK(comp.ok);
  CHECK(comp.F.size() == 2);
  CHECK_FALSE(linkedet::complete_flags(c, cross).ok);
}

TEST_CASE("generated chains and completions") {
  auto F = FieldSpec::prime(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = linkedet::gen_random_chain(seed, F, 2, 3, F.zero(), {1, 1});
    REQUIRE(linkedet::validate_s_linked(c).ok);
    for (const auto& F1 : exactalg::enumerate_subspaces(F, 2, 1))
      for (const auto& Fn : exactalg::enumerate_subspaces(F, 2, 1)) {
        FlagPair flags{1, F1, Fn};
        auto m = linkedet::linked_det_membership(c, flags);
        auto comp = linkedet::complete_flags(c, flags);
        CHECK(m.member == comp.ok);
        if (comp.ok) CHECK(linkedet::validate_linked_grassmannian(c, comp.F, 1).ok);
      }
  }
  auto F5 = FieldSpec::prime(5);
  auto s = linkedet::gen_random_chain(3, F5, 3, 4, F5.from_int(2), {});
  CHECK(linkedet::validate_s_linked(s).ok);
  for (const auto& f : s.f) CHECK(exactalg::inverse(f).has_value());
  // same seed, same chain
  auto again = linkedet::gen_random_chain(3, F5, 3, 4, F5.from_int(2), {});
  CHECK(again.f == s.f);
  CHECK(again.fback == s.fback);
}

TEST_CASE("degenerate links") {
  auto Q = FieldSpec::rationals();
  auto I = Matrix::identity(Q, 2);
  auto [A, B] = linkedet::degenerate_link(I, I, 1);
  CHECK(A == Matrix::from_ints(Q, {{1, 0}, {0, 0}}));
  CHECK(B == Matrix::from_ints(Q, {{0, 0}, {0, 1}}));

  std::mt19937_64 rng(6);
  auto F = FieldSpec::prime(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto P = linkedet::random_invertible(F, 3, rng), Qm = linkedet::random_invertible(F, 3, rng);
    std::size_t d1 = rng() % 4;
    auto [a, b] = linkedet::degenerate_link(P, Qm, d1);
    CHECK((a * b).is_zero());
    CHECK((b * a).is_zero());
    CHECK(exactalg::rank(a) == d1);
    CHECK(exactalg::rank(b) == 3 - d1);
  }
}

TEST_CASE("bridge on a compact-type curve") {
  auto Q = FieldSpec::rationals();
  CurveModel model(worked_instance(Q));
  auto member = candidate(Q, 0, {{{0, 1}}, {{0, 1}}});
  // d + deg D + 1 - g = 1 + 2 + 1 - 0
  auto br = linkedet::curve_to_chain(model, member, 0, {1, 1}, 7);
  CHECK(br.expected_dim == 4);
  CHECK(br.chain.d == 4);
  CHECK(linkedet::curve_to_chain(model, member, 0, {1, 0}, 7).chain.d == 3);
  CHECK(br.chain.n == br.segment.size());
  CHECK(br.flags_full_rank);
  CHECK(br.chain.s.is_zero());
  for (std::size_t i = 0; i + 1 < br.chain.n; ++i) {
    CHECK((br.chain.f[i] * br.chain.fback[i]).is_zero());
    CHECK((br.chain.fback[i] * br.chain.f[i]).is_zero());
  }
  CHECK(linkedet::linked_det_membership(br.chain, br.flags).member);

  auto non = candidate(Q, 0, {{{-3, 1}}, {{1, 0}}});
  auto br2 = linkedet::curve_to_chain_auto(model, non, 0, 8, 7);
  CHECK_FALSE(linkedet::linked_det_membership(br2.chain, br2.flags).member);
}
