#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramanujan/ec.hpp"
#include "ramanujan/pizer.hpp"

using namespace ramanujan;
using namespace ramanujan::pizer;

namespace {

bool direct_admissible(u64 p) {
  if (!ff::is_prime(p) || p % 12 != 1) return false;
  for (i64 d : {-20, -19, -11, -96, -51, -84, -91}) {
    if (ff::legendre(d, p) != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("class numbers") {
  CHECK(eichler_class_number(37) == 3);
  CHECK(eichler_class_number(101) == 9);
  CHECK(eichler_class_number(431) == 37);
  CHECK(eichler_class_number(9241) == 770);
  CHECK(eichler_class_number(53881) == 4490);
  CHECK(eichler_class_number(2) == 1);
  CHECK(eichler_class_number(3) == 1);
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 61ULL, 97ULL, 103ULL, 211ULL, 431ULL, 1009ULL}) {
    CHECK(eichler_class_number(p) == ec::supersingular_j_invariants(p).size());
  }
  for (u64 p = 13; p < 2000; p += 12) {
    if (ff::is_prime(p)) CHECK(12 * eichler_class_number(p) == p - 1);
  }
  CHECK_THROWS_AS(eichler_class_number(91), ParameterError);

  CHECK(class_number_level_p2(3) == 2);
  CHECK(class_number_level_p2(5) == 2);
  CHECK(class_number_level_p2(13) == 14);
  CHECK_THROWS_AS(class_number_level_p2(2), ParameterError);

  auto a = pizer_graph_size(13, 5, Level::p);
  CHECK(a.size == 1);
  CHECK_FALSE(a.bipartite);
  auto b = pizer_graph_size(13, 3, Level::p_squared);  // (3/13) = 1
  CHECK(b.size == 7);
  CHECK_FALSE(b.bipartite);
  auto c = pizer_graph_size(13, 5, Level::p_squared);  // (5/13) = -1
  CHECK(c.size == 14);
  CHECK(c.bipartite);
  CHECK_THROWS_AS(pizer_graph_size(13, 26, Level::p), ParameterError);
  CHECK_THROWS_AS(pizer_graph_size(3, 5, Level::p), ParameterError);

  CHECK(o2p_class_number(7) == 524);
  CHECK(o2p_class_number(5) == 200);
  CHECK(o2p_class_number(2) == 16);
  CHECK_THROWS_AS(o2p_class_number(3), ParameterError);
  for (u64 p = 2; p <= 1000; ++p) {
    if (p != 3 && ff::is_prime(p)) CHECK(o2p_class_number(p) != (p * p * p - p) / 2);
  }
}

TEST_CASE("discriminant rows") {
  auto r5 = discriminant_rows(5);
  REQUIRE(r5.size() == 5);
  const i64 delta5[] = {-20, -19, -16, -11, -4}, t5[] = {1, 1, 2, 1, 1}, rr5[] = {-5, -19, -1, -11, -1};
  for (int s = 0; s < 5; ++s) {
    CHECK(r5[s].s == s);
    CHECK(r5[s].delta == delta5[s]);
    CHECK(r5[s].t == t5[s]);
    CHECK(r5[s].r == rr5[s]);
  }
  CHECK(r5[2].f == std::vector<i64>{1, 2});
  CHECK(r5[2].d == std::vector<i64>{-16, -4});
  CHECK(r5[0].d == std::vector<i64>{-20});

  auto r25 = discriminant_rows(25);
  REQUIRE(r25.size() == 10);
  const i64 delta25[] = {-100, -99, -96, -91, -84, -75, -64, -51, -36, -19};
  const i64 t25[] = {5, 3, 4, 1, 1, 5, 4, 1, 3, 1};
  const i64 rr25[] = {-1, -11, -6, -91, -21, -3, -1, -51, -1, -19};
  for (int s = 0; s < 10; ++s) {
    CHECK(r25[s].delta == delta25[s]);
    CHECK(r25[s].t == t25[s]);
    CHECK(r25[s].r == rr25[s]);
  }
  CHECK(r25[2].f == std::vector<i64>{1, 2, 4});
  CHECK(r25[2].d == std::vector<i64>{-96, -24, -6});
  CHECK(r25[0].f == std::vector<i64>{1, 5});
  CHECK_THROWS_AS(discriminant_rows(7), ParameterError);
}

TEST_CASE("modular conditions") {
  using S = std::set<u64>;
  CHECK(modular_conditions(-20) == CongruenceCondition{5, S{1, 4}});
  CHECK(modular_conditions(-19) == CongruenceCondition{19, S{1, 4, 5, 6, 7, 9, 11, 16, 17}});
  CHECK(modular_conditions(-11) == CongruenceCondition{11, S{1, 3, 4, 5, 9}});
  CHECK(modular_conditions(-96) == CongruenceCondition{8, S{1, 7}});
  CHECK(modular_conditions(-24) == modular_conditions(-96));
  CHECK(modular_conditions(-6) == modular_conditions(-96));
  CHECK(modular_conditions(-51) == CongruenceCondition{17, S{1, 2, 4, 8, 9, 13, 15, 16}});
  CHECK(modular_conditions(-84) == CongruenceCondition{7, S{1, 2, 4}});
  CHECK(modular_conditions(-91) == CongruenceCondition{13, S{1, 3, 4, 9, 10, 12}});
  CHECK_THROWS_AS(modular_conditions(-7), ParameterError);

  // On primes p = 1 mod 12 meeting the earlier conditions, each condition is
  // equivalent to (d/p) = 1.
  const std::vector<i64> order = {-20, -19, -11, -96, -51, -84, -91};
  for (u64 p = 13; p < 200000; p += 12) {
    if (!ff::is_prime(p)) continue;
    for (std::size_t k = 0; k < order.size(); ++k) {
      bool earlier = true;
      for (std::size_t e = 0; e < k; ++e) earlier = earlier && ff::legendre(order[e], p) == 1;
      if (!earlier) break;
      CHECK(modular_conditions(order[k]).holds(p) == (ff::legendre(order[k], p) == 1));
    }
  }
}

TEST_CASE("admissibility table") {
  auto t = admissibility_table();
  REQUIRE(t.size() == 7);
  CHECK(t[0] == CongruenceCondition{24, {1}});
  std::vector<u64> mods;
  for (auto& c : t) mods.push_back(c.modulus);
  CHECK(mods == std::vector<u64>{24, 5, 7, 11, 13, 17, 19});
  CHECK(admissible_class_count() == 12960);
  CHECK(admissible_modulus() == 38798760);

  // direct count of residues mod 24 * 5 * ... * 19
  u64 count = 0;
  const u64 m = admissible_modulus();
  for (u64 n = 1; n < m; n += 24) {
    bool ok = true;
    for (std::size_t k = 1; k < t.size() && ok; ++k) ok = t[k].holds(n);
    count += ok;
  }
  CHECK(count == 12960);

  for (u64 p = 2; p < 3000000; ++p) {
    if (is_admissible_6regular(p) != direct_admissible(p)) {
      FAIL("mismatch at " << p);
    }
  }
  CHECK(is_admissible_6regular(53881));
}

TEST_CASE("prime scan") {
  auto small = scan_primes(10);
  CHECK(small.last_prime == 29);
  CHECK(small.admissible.empty());

  auto res = scan_primes(1000000);
  CHECK(res.primes_scanned == 1000000);
  CHECK(res.last_prime == 15485863);
  CHECK(res.admissible.size() == 1670);
  REQUIRE_FALSE(res.admissible.empty());
  CHECK(res.admissible.front() == 53881);
  for (std::size_t k = 0; k < res.admissible.size(); k += 37) CHECK(direct_admissible(res.admissible[k]));
  CHECK_THROWS_AS(scan_primes(0), ParameterError);
  CHECK_THROWS_AS(scan_primes(kScanCap + 1), ParameterError);
}
