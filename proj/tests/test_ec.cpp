#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ramanujan/ec.hpp"

using namespace ramanujan;
using namespace ramanujan::ec;

namespace {

// #E(F_p) by summing Legendre symbols.
u64 count_points_fp(u64 p, u64 a, u64 b, const std::vector<int>& chi) {
  u64 n = 1;
  for (u64 x = 0; x < p; ++x) {
    u64 r = (x * x % p * x + a * x + b) % p;
    n += 1 + chi[r];
  }
  return n;
}

std::vector<int> chi_table(u64 p) {
  std::vector<int> chi(p, -1);
  chi[0] = 0;
  for (u64 x = 1; x < p; ++x) chi[x * x % p] = 1;
  return chi;
}

}  // namespace

TEST_CASE("j-invariant examples") {
  Fp2Params f = ff::make_fp2(431);
  CHECK(Curve(Fp2(f, 1), Fp2(f, 0)).j_invariant() == Fp2(f, 1728));
  CHECK(Curve(Fp2(f, 0), Fp2(f, 1)).j_invariant() == Fp2(f, 0));
  CHECK_THROWS_AS(Curve(Fp2(f, 0), Fp2(f, 0)), ParameterError);
  // 4a^3 + 27b^2 = 0 for (a, b) = (-3, 2)
  CHECK_THROWS_AS(Curve(Fp2::from_signed(f, -3), Fp2(f, 2)), ParameterError);
}

TEST_CASE("curve from j has that j, twists share j") {
  std::mt19937_64 rng(11);
  for (u64 p : {101ULL, 431ULL, 9241ULL}) {
    Fp2Params f = ff::make_fp2(p);
    for (int t = 0; t < 20; ++t) {
      Fp2 j(f, rng() % p, rng() % p);
      Curve c = Curve::from_j(j);
      CHECK(c.j_invariant() == j);
      Fp2 d(f, rng() % p, rng() % p);
      if (d.is_zero()) continue;
      CHECK(c.twist(d).j_invariant() == j);
      CHECK(c.scaled(d).j_invariant() == j);
    }
    CHECK(Curve::from_j(Fp2(f, 0)).j_invariant() == Fp2(f, 0));
    CHECK(Curve::from_j(Fp2(f, 1728)).j_invariant() == Fp2(f, 1728));
  }
}

TEST_CASE("group law") {
  Fp2Params f = ff::make_fp2(431);
  Curve c(Fp2(f, 7, 3), Fp2(f, 11, 5));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Point P = c.random_point(rng);
    Point Q = c.random_point(rng);
    Point R = c.random_point(rng);
    CHECK(c.contains(P));
    CHECK(c.mul(P, 1) == P);
    CHECK(c.mul(P, 0).inf);
    CHECK(c.add(P, c.neg(P)).inf);
    CHECK(c.add(P, Q) == c.add(Q, P));
    CHECK(c.add(c.add(P, Q), R) == c.add(P, c.add(Q, R)));
    u64 m = rng() % 1000, n = rng() % 1000;
    CHECK(c.mul(P, m + n) == c.add(c.mul(P, m), c.mul(P, n)));
    CHECK(c.mul_signed(P, -static_cast<i64>(m)) == c.neg(c.mul(P, m)));
  }
  Curve other(Fp2(f, 1), Fp2(f, 0));
  std::mt19937_64 rng2(4);
  Point P = c.random_point(rng2);
  Point Q = other.random_point(rng2);
  CHECK_THROWS_AS(c.add(P, Q), ParameterError);
}

TEST_CASE("supersingularity examples") {
  Fp2Params f431 = ff::make_fp2(431);
  Curve e431(Fp2(f431, 1), Fp2(f431, 0));
  CHECK(is_supersingular(e431));
  CHECK(count_points_fp(431, 1, 0, chi_table(431)) == 432);

  Fp2Params f101 = ff::make_fp2(101);
  Curve e101(Fp2(f101, 1), Fp2(f101, 0));
  CHECK_FALSE(is_supersingular(e101));
  CHECK(count_points_fp(101, 1, 0, chi_table(101)) != 102);

  CHECK_THROWS_AS(is_supersingular(Curve(Fp2(f431, 1, 1), Fp2(f431, 0))), ParameterError);
}

TEST_CASE("Deuring criterion agrees with point counting for p <= 200") {
  for (u64 p = 5; p <= 200; ++p) {
    if (!ff::is_prime(p)) continue;
    Fp2Params f = ff::make_fp2(p);
    auto chi = chi_table(p);
    for (u64 b : {u64{1}, f.s}) {
      for (u64 a = 0; a < p; ++a) {
        if ((4 * a * a % p * a + 27 * b * b) % p == 0) continue;
        Curve c(Fp2(f, a), Fp2(f, b));
        const bool ss = count_points_fp(p, a, b, chi) % p == 1;
        CHECK(is_supersingular(c) == ss);
        CHECK(hasse_invariant(c).is_zero() == ss);
      }
    }
  }
}

TEST_CASE("supersingular j-invariants over F_{p^2} by exhaustive Hasse invariant") {
  // (p, number of supersingular j in F_{p^2}): (p-1)/12 plus corrections.
  for (auto [p, expected] : std::vector<std::pair<u64, u64>>{{13, 1}, {37, 3}, {61, 5}, {101, 9}, {103, 9}}) {
    Fp2Params f = ff::make_fp2(p);
    u64 count = 0;
    for (u64 c0 = 0; c0 < p; ++c0)
      for (u64 c1 = 0; c1 < p; ++c1)
        if (hasse_invariant(Curve::from_j(Fp2(f, c0, c1))).is_zero()) ++count;
    CHECK(count == expected);
  }
}

TEST_CASE("find_supersingular_curve") {
  Curve c431 = find_supersingular_curve(431);
  CHECK(c431.j_invariant() == Fp2(c431.field(), 1728));
  Curve c101 = find_supersingular_curve(101);
  CHECK(c101.j_invariant().is_zero());

  Curve c = find_supersingular_curve(9241);
  CHECK(c.j_invariant() == Fp2(c.field(), 22));
  CHECK(is_supersingular(c));
  for (u64 j = 0; j < 22; ++j) CHECK_FALSE(is_supersingular(Curve::from_j(Fp2(c.field(), j))));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) CHECK(c.mul(c.random_point(rng), 9242).inf);
  CHECK(sidh_group_exponent(c) == 9242);
  CHECK(sidh_group_exponent(rational_torsion_model(c, 3)) == 9240);
  CHECK_THROWS_AS(find_supersingular_curve(4), ParameterError);
}

TEST_CASE("group of the p = 431 start curve is (Z/432)^2") {
  Curve c = find_supersingular_curve(431);
  // Brute-force count over F_{p^2}: 1 + sum over x of (1 + chi(x^3 + x)).
  u64 n = 1;
  const Fp2Params& f = c.field();
  for (u64 c0 = 0; c0 < 431; ++c0)
    for (u64 c1 = 0; c1 < 431; ++c1) {
      Fp2 x(f, c0, c1);
      Fp2 r = (x.square() + c.a()) * x + c.b();
      n += r.is_zero() ? 1 : (r.is_square() ? 2 : 0);
    }
  CHECK(n == 432 * 432);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) CHECK(c.mul(c.random_point(rng), 432).inf);
  CHECK(sidh_group_exponent(c) == 432);
}

namespace {

void check_basis(const Curve& c, u64 ell, int e) {
  auto [P, Q] = torsion_basis(c, ell, e);
  CHECK(has_exact_order(c, P, ell, e));
  CHECK(has_exact_order(c, Q, ell, e));
  const u64 top = ipow(ell, e - 1);
  Point P1 = c.mul(P, top), Q1 = c.mul(Q, top);
  // The l+1 order-l subgroups <Q1>, <P1 + i Q1> are pairwise distinct.
  std::vector<std::set<Point>> groups;
  std::vector<Point> gens{Q1};
  for (u64 i = 0; i < ell; ++i) gens.push_back(c.add(P1, c.mul(Q1, i)));
  for (const Point& g : gens) {
    std::set<Point> s;
    for (u64 k = 1; k < ell; ++k) s.insert(c.mul(g, k));
    CHECK(s.size() == ell - 1);
    for (const auto& h : groups)
      for (const auto& pt : s) CHECK(h.count(pt) == 0);
    groups.push_back(s);
  }
}

}  // namespace

TEST_CASE("torsion bases") {
  Curve c = find_supersingular_curve(431);
  check_basis(c, 2, 4);
  check_basis(c, 3, 3);
  check_basis(c, 2, 1);
  CHECK_THROWS_AS(torsion_basis(c, 2, 5), ParameterError);
  CHECK_THROWS_AS(torsion_basis(c, 5, 1), ParameterError);
  Curve t = rational_torsion_model(find_supersingular_curve(9241), 3);
  check_basis(t, 3, 1);
  check_basis(t, 2, 3);
  check_basis(t, 5, 1);
  check_basis(t, 7, 1);
}

TEST_CASE("decompose_in_basis") {
  Curve c = find_supersingular_curve(431);
  auto [P, Q] = torsion_basis(c, 2, 4);
  CHECK(decompose_in_basis(c, P, P, Q, 2, 4) == std::pair<u64, u64>{1, 0});
  Point R = c.add(c.mul(P, 3), c.mul(Q, 5));
  CHECK(decompose_in_basis(c, R, P, Q, 2, 4) == std::pair<u64, u64>{3, 5});
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    u64 m = rng() % 16, n = rng() % 16;
    Point S = c.add(c.mul(P, m), c.mul(Q, n));
    CHECK(decompose_in_basis(c, S, P, Q, 2, 4) == std::pair<u64, u64>{m, n});
  }
  auto [P3, Q3] = torsion_basis(c, 3, 3);
  CHECK_THROWS_AS(decompose_in_basis(c, P3, P, Q, 2, 4), ParameterError);
}
