#include <doctest.h>

#include <set>

#include "../support/builders.hpp"
#include "lls/exactalg/poly.hpp"

using namespace lls;
using namespace lls::exactalg;
using lls::testing::ints;

namespace {

// Gaussian binomial [n choose k]_q by its product formula.
long gaussian_binomial(long q, long n, long k) {
  long num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    long a = 1, b = 1;
    for (long j = 0; j < n - i; ++j) a *= q;
    for (long j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

Matrix random_matrix(const FieldSpec& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = F.random(rng);
  return m;
}

}  // namespace

TEST_CASE("scalars") {
  auto Q = FieldSpec::rationals();
  CHECK(Q.parse("3/6").to_string() == "1/2");
  CHECK(Q.parse("-4/2") == Q.from_int(-2));
  CHECK((Q.parse("1/3") + Q.parse("1/6")).to_string() == "1/2");
  auto F = FieldSpec::prime(7);
  CHECK(F.parse("-1") == F.from_int(6));
  CHECK(F.parse("1/3") * F.from_int(3) == F.one());
  CHECK(F.from_int(3).inverse() == F.from_int(5));
  CHECK_THROWS_AS(FieldSpec::prime(4), FieldError);
  CHECK_THROWS_AS(F.one() + FieldSpec::prime(5).one(), FieldError);
  CHECK_THROWS_AS(F.one() + Q.one(), FieldError);
  CHECK_THROWS(F.zero().inverse());
  CHECK_THROWS(F.parse("1/7"));
}

TEST_CASE("rank and kernel") {
  auto Q = FieldSpec::rationals();
  auto I = Matrix::identity(Q, 3);
  auto rk = rank_and_kernel(I);
  CHECK(rk.rank == 3);
  CHECK(rk.kernel_basis.empty());

  auto Z = Matrix(Q, 2, 3);
  CHECK(rank(Z) == 0);
  CHECK(rank_and_kernel(Z).kernel_basis.size() == 3);

  auto F5 = FieldSpec::prime(5);
  auto m = Matrix::from_ints(F5, {{1, 2}, {2, 4}});
  rk = rank_and_kernel(m);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel_basis.size() == 1);
  // RREF scales (2, -1) to a leading 1: (1, 2) over F_5
  CHECK(rk.kernel_basis[0] == ints(F5, {1, 2}));
}

TEST_CASE("rank-nullity and kernel oracle on random matrices") {
  std::mt19937_64 rng(11);
  for (auto F : {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      auto m = random_matrix(F, r, c, rng);
      auto rk = rank_and_kernel(m);
      CHECK(rk.rank + rk.kernel_basis.size() == c);
      for (const auto& k : rk.kernel_basis) CHECK(is_zero_vector(m.apply(k)));
      CHECK(rank(m.transpose()) == rk.rank);
      // the kernel basis is independent
      CHECK(span_basis(F, c, rk.kernel_basis).size() == rk.kernel_basis.size());
      // rref is idempotent
      auto a = m;
      rref_in_place(a);
      auto b = a;
      rref_in_place(b);
      CHECK(a == b);
    }
  }
}

TEST_CASE("subspace intersection and sum") {
  auto Q = FieldSpec::rationals();
  auto e1 = ints(Q, {1, 0, 0}), e2 = ints(Q, {0, 1, 0}), e3 = ints(Q, {0, 0, 1});
  CHECK(subspace_intersect(Q, 3, {e1}, {e1}) == std::vector<Vector>{e1});
  CHECK(subspace_intersect(Q, 3, {e1}, {e2}).empty());
  CHECK(subspace_intersect(Q, 3, {e1, e2}, {e2, e3}) == std::vector<Vector>{e2});

  std::mt19937_64 rng(5);
  auto F = FieldSpec::prime(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto A = random_subspace(F, n, rng() % (n + 1), rng);
    auto B = random_subspace(F, n, rng() % (n + 1), rng);
    auto cap = subspace_intersect(F, n, A, B);
    auto sum = subspace_sum(F, n, A, B);
    CHECK(cap.size() + sum.size() == A.size() + B.size());
    CHECK(contained_in(F, n, cap, A));
    CHECK(contained_in(F, n, cap, B));
    CHECK(contained_in(F, n, A, sum));
    // ker(annihilator) recovers the span
    auto ann = annihilator(F, n, A);
    CHECK(kernel(ann) == span_basis(F, n, A));
  }
}

TEST_CASE("subspace enumeration matches the Gaussian binomial") {
  auto F3 = FieldSpec::prime(3);
  CHECK(enumerate_subspaces(F3, 4, 2).size() == 130);
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t k = 0; k <= n; ++k) {
        auto F = FieldSpec::prime(p);
        auto all = enumerate_subspaces(F, n, k);
        CHECK(static_cast<long>(all.size()) == gaussian_binomial(p, static_cast<long>(n), static_cast<long>(k)));
        std::set<std::string> seen;
        for (const auto& S : all) {
          CHECK(S.size() == k);
          CHECK(span_basis(F, n, S) == S);
          seen.insert(span_matrix(F, n, S).to_string());
        }
        CHECK(seen.size() == all.size());
      }
}

TEST_CASE("inverse and solve") {
  std::mt19937_64 rng(3);
  for (auto F : {FieldSpec::prime(2), FieldSpec::prime(7), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng() % 4;
      auto m = random_matrix(F, n, n, rng);
      auto inv = inverse(m);
      CHECK(inv.has_value() == (rank(m) == n));
      if (inv) {
        CHECK(m * *inv == Matrix::identity(F, n));
        CHECK(*inv * m == Matrix::identity(F, n));
      }
      Vector x0;
      for (std::size_t i = 0; i < n; ++i) x0.push_back(F.random(rng));
      auto rhs = m.apply(x0);
      Vector x;
      REQUIRE(solve(m, rhs, x));
      CHECK(m.apply(x) == rhs);
    }
  }
  auto Q = FieldSpec::rationals();
  Vector x;
  CHECK_FALSE(solve(Matrix::from_ints(Q, {{1, 1}, {1, 1}}), ints(Q, {0, 1}), x));
}

TEST_CASE("taylor coefficients") {
  auto Q = FieldSpec::rationals();
  Poly x2(Q, ints(Q, {0, 0, 1}));
  CHECK(taylor_coefficient(x2, Q.zero(), 2) == Q.one());
  CHECK(taylor_coefficient(x2, Q.one(), 1) == Q.from_int(2));
  Poly zero(Q);
  for (int k = 0; k < 4; ++k) CHECK(taylor_coefficient(zero, Q.from_int(5), k).is_zero());
  CHECK(order_at(zero, Q.zero()) == -1);

  // (x-2)^3 (x+1) vanishes to order exactly 3 at 2
  auto f = Poly::linear_power(Q, Q.from_int(2), 3) * Poly::linear_power(Q, Q.from_int(-1), 1);
  CHECK(order_at(f, Q.from_int(2)) == 3);
  CHECK(order_at(f, Q.from_int(-1)) == 1);
  CHECK(order_at(f, Q.zero()) == 0);

  // expansion about a point reproduces the polynomial: sum c_k (x-a)^k = f
  std::mt19937_64 rng(9);
  for (auto F : {FieldSpec::prime(5), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 30; ++trial) {
      Vector c;
      for (int i = 0; i < 4; ++i) c.push_back(F.random(rng));
      Poly g(F, c);
      auto a = F.random(rng);
      Poly back(F);
      for (int k = 0; k < 4; ++k)
        back = back + Poly::linear_power(F, a, k).scaled(taylor_coefficient(g, a, k));
      CHECK(back == g);
      for (int k = 0; k < 4; ++k) {
        auto row = taylor_row(F, a, k, 4);
        auto s = F.zero();
        for (int i = 0; i < 4; ++i) s += row[i] * g.coeff(i);
        CHECK(s == taylor_coefficient(g, a, k));
      }
    }
  }
  CHECK(binomial(Q, 5, 2) == Q.from_int(10));
  CHECK(binomial(FieldSpec::prime(5), 5, 2).is_zero());
}
