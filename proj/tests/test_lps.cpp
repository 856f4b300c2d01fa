#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ramanujan/lps.hpp"

using namespace ramanujan;
using namespace ramanujan::lps;

namespace {

std::vector<std::string> strs(const std::vector<Quaternion>& qs) {
  std::vector<std::string> v;
  for (const auto& q : qs) v.push_back(q.str());
  return v;
}

// All integer solutions of x0^2 + ... + x3^2 = n, signs included.
std::size_t r4(i64 n) {
  std::size_t count = 0;
  for (i64 a = -10; a <= 10; ++a)
    for (i64 b = -10; b <= 10; ++b)
      for (i64 c = -10; c <= 10; ++c)
        for (i64 d = -10; d <= 10; ++d) count += a * a + b * b + c * c + d * d == n;
  return count;
}

}  // namespace

TEST_CASE("four-square solutions") {
  auto s5 = four_square_solutions(5);
  std::set<std::string> got5;
  for (auto& q : s5) got5.insert(q.str());
  CHECK(got5 == std::set<std::string>{"1+2i", "1-2i", "1+2j", "1-2j", "1+2k", "1-2k"});

  auto s13 = four_square_solutions(13);
  REQUIRE(s13.size() == 14);
  int threes = 0, ones = 0;
  for (auto& q : s13) {
    if (q.x0 == 3) {
      ++threes;
      CHECK(std::abs(q.x1) + std::abs(q.x2) + std::abs(q.x3) == 2);
    } else {
      ++ones;
      CHECK(q.x0 == 1);
      CHECK(std::abs(q.x1) == 2);
      CHECK(std::abs(q.x2) == 2);
      CHECK(std::abs(q.x3) == 2);
    }
  }
  CHECK(threes == 6);
  CHECK(ones == 8);

  for (u64 l : {5ULL, 13ULL, 17ULL, 29ULL, 37ULL, 41ULL}) {
    auto s = four_square_solutions(l);
    CHECK(s.size() == l + 1);
    // Jacobi: r4(l) = 8 (l + 1) for odd prime l, and a fixed x0 > 0 odd
    // with even rest picks one of every 8.
    CHECK(r4(static_cast<i64>(l)) == 8 * (l + 1));
    std::set<Quaternion> all(s.begin(), s.end());
    for (auto& q : s) {
      CHECK(q.norm() == static_cast<i64>(l));
      CHECK(all.count(q.conj()) == 1);
    }
  }
  CHECK_THROWS_AS(four_square_solutions(7), ParameterError);
  CHECK_THROWS_AS(four_square_solutions(21), ParameterError);
}

TEST_CASE("quaternion product and norm") {
  auto s = four_square_solutions(13);
  for (auto& a : s)
    for (auto& b : s) CHECK((a * b).norm() == a.norm() * b.norm());
  Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(i * j == k);
  CHECK(j * i == Quaternion{0, 0, 0, -1});
  CHECK(Quaternion{1, -2, 2, -2}.str() == "1-2i+2j-2k");
}

TEST_CASE("Cayley generators") {
  CHECK(epsilon(29) == 12);
  auto gens = cayley_generators(5, 29);
  REQUIRE(gens.size() == 6);
  auto sols = four_square_solutions(5);
  for (std::size_t t = 0; t < sols.size(); ++t) {
    if (sols[t] == Quaternion{1, 2, 0, 0}) CHECK(gens[t] == ProjMatrix(25, 0, 0, 6, 29));
  }
  CHECK(ProjMatrix(25, 0, 0, 6, 29).entries() == std::array<u64, 4>{1, 0, 0, 13});
  std::set<ProjMatrix> set(gens.begin(), gens.end());
  CHECK(set.size() == 6);
  for (auto& g : gens) {
    CHECK(set.count(g.inverse()) == 1);
    CHECK(g.in_psl2());
    CHECK(g * g.inverse() == ProjMatrix::identity(29));
  }
  // before normalisation the determinant is l
  for (auto& q : sols) {
    const u64 p = 29;
    const u64 a = ff::reduce(q.x0 + q.x1 * 12, p), b = ff::reduce(q.x2 + q.x3 * 12, p);
    const u64 c = ff::reduce(-q.x2 + q.x3 * 12, p), d = ff::reduce(q.x0 - q.x1 * 12, p);
    CHECK(ff::sub_mod(a * d % p, b * c % p, p) == 5);
  }
  for (auto [l, p] : std::vector<std::pair<u64, u64>>{{13, 17}, {5, 101}, {17, 13}, {29, 109}}) {
    auto g = cayley_generators(l, p);
    std::set<ProjMatrix> s(g.begin(), g.end());
    CHECK(s.size() == l + 1);
    for (auto& m : g) CHECK(s.count(m.inverse()) == 1);
  }
  CHECK_THROWS_AS(cayley_generators(5, 13), ParameterError);   // (13/5) = -1
  CHECK_THROWS_AS(cayley_generators(5, 31), ParameterError);   // 31 = 3 mod 4
  CHECK_THROWS_AS(cayley_generators(5, 5), ParameterError);
  CHECK_THROWS_AS(cayley_generators(7, 29), ParameterError);
}

TEST_CASE("LPS graph at (13, 17)") {
  auto g = build_lps_graph(13, 17);
  auto rep = graph::analyze(g);
  CHECK(rep.vertices == (17 * 17 * 17 - 17) / 2);
  CHECK(rep.regular_degree == 14u);
  CHECK(rep.connected);
  CHECK_FALSE(rep.bipartite);
  CHECK(rep.simple());
  auto est = graph::second_eigenvalue_sparse(g, 1e-9);
  CHECK(est.value <= 2 * std::sqrt(13.0) + 1e-6);
}

TEST_CASE("tree neighbour matrices") {
  for (u64 l : {2ULL, 5ULL, 13ULL}) {
    auto ms = tree_neighbor_matrices(l);
    REQUIRE(ms.size() == l + 1);
    CHECK(ms.back() == IntMatrix{1, 0, 0, static_cast<i64>(l)});
    std::set<std::pair<i64, i64>> lines;
    const i64 L = static_cast<i64>(l);
    for (auto& m : ms) {
      CHECK(m.det() == L);
      // mod l the matrix has rank 1; record its column space as a normalised
      // direction
      const i64 a = m.a % L, b = m.b % L, c = m.c % L, d = m.d % L;
      CHECK((a * d - b * c) % L == 0);
      i64 u = a, v = c;
      if (u == 0 && v == 0) {
        u = b;
        v = d;
      }
      REQUIRE((u != 0 || v != 0));
      const i64 inv = static_cast<i64>(ff::inv_mod(static_cast<u64>(u != 0 ? u : v), l));
      lines.insert({u * inv % L, v * inv % L});
    }
    CHECK(lines.size() == l + 1);
  }
}

TEST_CASE("generator-matrix correspondence") {
  auto c5 = correspondence_constants(5);
  CHECK(c5.a == 1);
  CHECK(c5.b == 2);
  CHECK(c5.e == 3);
  auto c13 = correspondence_constants(13);
  CHECK(c13.a == 3);
  CHECK(c13.b == 2);
  CHECK(c13.e == 8);

  // Frozen from an independent script: exhaustive four-square search and the
  // rule h = (x2 + x3 eps)/(x0 - x1 eps), h = l on a zero denominator.
  CHECK(strs(generator_matrix_correspondence(5, 3).alpha) ==
        std::vector<std::string>{"1-2i", "1+2k", "1+2j", "1-2j", "1-2k", "1+2i"});
  CHECK(strs(generator_matrix_correspondence(5, 2).alpha) ==
        std::vector<std::string>{"1+2i", "1-2k", "1+2j", "1-2j", "1+2k", "1-2i"});
  CHECK(strs(generator_matrix_correspondence(13, 8).alpha) ==
        std::vector<std::string>{"3-2i", "3+2k", "1-2i-2j-2k", "1-2i+2j-2k", "1+2i+2j+2k", "3+2j",
                                 "1+2i-2j+2k", "1+2i+2j-2k", "3-2j", "1+2i-2j-2k", "1-2i-2j+2k",
                                 "1-2i+2j+2k", "3-2k", "3+2i"});
  CHECK(strs(generator_matrix_correspondence(13, 5).alpha) ==
        std::vector<std::string>{"3+2i", "3-2k", "1+2i-2j+2k", "1+2i+2j+2k", "1-2i+2j-2k", "3+2j",
                                 "1-2i-2j-2k", "1-2i+2j+2k", "3-2j", "1-2i-2j+2k", "1+2i-2j-2k",
                                 "1+2i+2j-2k", "3+2k", "3-2i"});

  for (u64 l : {5ULL, 13ULL, 17ULL, 29ULL}) {
    auto base = correspondence_constants(l);
    auto plus = generator_matrix_correspondence(l, base.e);
    auto minus = generator_matrix_correspondence(l, l - base.e);
    auto ms = tree_neighbor_matrices(l);
    for (const auto* t : {&plus, &minus}) {
      std::set<Quaternion> seen(t->alpha.begin(), t->alpha.end());
      CHECK(seen.size() == l + 1);
      for (u64 h = 0; h <= l; ++h) {
        for (u64 h2 = 0; h2 <= l; ++h2) {
          CHECK(is_l_integral(t->alpha[h], ms[h2], l, t->eps) == (h == h2));
        }
      }
    }
    // Swapping the branch negates the i and k coordinates slot by slot.
    for (u64 h = 0; h <= l; ++h) {
      const Quaternion q = plus.alpha[h];
      CHECK(minus.alpha[h] == Quaternion{q.x0, -q.x1, q.x2, -q.x3});
    }
  }
  // the special solutions a +- b(i, j, k) sit at h in {0, 1, e, l-e, l-1, l}
  auto t13 = generator_matrix_correspondence(13, 8);
  for (u64 h : {0ULL, 1ULL, 8ULL, 5ULL, 12ULL, 13ULL}) CHECK(t13.alpha[h].x0 == 3);

  // 1-2k at h = 1 on the eps = 3 branch leaves 7/5 in sigma(alpha)^-1 M_1.
  CHECK_FALSE(is_l_integral({1, 0, 0, -2}, tree_neighbor_matrices(5)[1], 5, 3));
  CHECK(is_l_integral({1, 0, 0, -2}, tree_neighbor_matrices(5)[4], 5, 3));

  CHECK_THROWS_AS(generator_matrix_correspondence(5, 1), ParameterError);
  CHECK_THROWS_AS(generator_matrix_correspondence(7, 1), ParameterError);
  CHECK_THROWS_AS(is_l_integral({1, 0, 0, 2}, tree_neighbor_matrices(5)[0], 5, 1), ParameterError);
}
