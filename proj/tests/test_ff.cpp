#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ramanujan/ff.hpp"

using namespace ramanujan;
using namespace ramanujan::ff;

TEST_CASE("legendre symbol values") {
  CHECK(legendre(1, 7) == 1);
  CHECK(legendre(-4, 101) == 1);
  CHECK(legendre(5, 29) == 1);
  CHECK(legendre(0, 29) == 0);
  CHECK_THROWS_AS(legendre(3, 9), ParameterError);
  CHECK_THROWS_AS(legendre(3, 2), ParameterError);
}

TEST_CASE("legendre agrees with a table of squares and is multiplicative") {
  std::mt19937_64 rng(7);
  for (u64 q : {3ULL, 5ULL, 7ULL, 29ULL, 101ULL, 431ULL}) {
    std::vector<bool> square(q, false);
    for (u64 x = 1; x < q; ++x) square[x * x % q] = true;
    for (u64 a = 1; a < q; ++a) CHECK(legendre(static_cast<i64>(a), q) == (square[a] ? 1 : -1));
    for (int t = 0; t < 50; ++t) {
      i64 a = static_cast<i64>(rng() % 1000) - 500, b = static_cast<i64>(rng() % 1000) - 500;
      CHECK(legendre(a * b, q) == legendre(a, q) * legendre(b, q));
    }
  }
}

TEST_CASE("sqrt_mod picks the smaller root") {
  CHECK(sqrt_mod(Fp(0, 29))->value() == 0);
  CHECK(sqrt_mod(Fp::from_signed(-1, 29))->value() == 12);
  CHECK_FALSE(sqrt_mod(Fp(3, 5)).has_value());
  for (u64 p : {5ULL, 13ULL, 17ULL, 41ULL, 97ULL, 431ULL, 9241ULL}) {
    for (u64 a = 0; a < std::min<u64>(p, 300); ++a) {
      auto r = sqrt_mod(Fp(a, p));
      CHECK(r.has_value() == (legendre(static_cast<i64>(a), p) >= 0));
      if (r) {
        CHECK(mul_mod(r->value(), r->value(), p) == a);
        CHECK(r->value() <= p - r->value());
      }
    }
  }
}

TEST_CASE("primality") {
  CHECK(is_prime(431));
  CHECK(is_prime(9241));
  CHECK(is_prime(498961));
  CHECK(is_prime(15485863));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9240));
  CHECK_FALSE(is_prime(561));
}

TEST_CASE("Fp2 defining relation and inverses") {
  for (u64 p : {5ULL, 29ULL, 431ULL, 9241ULL}) {
    Fp2Params f = make_fp2(p);
    CHECK(legendre(static_cast<i64>(f.s), p) == -1);
    for (u64 s = 2; s < f.s; ++s) CHECK(legendre(static_cast<i64>(s), p) == 1);
    Fp2 t = Fp2::gen(f);
    CHECK(t * t == Fp2(f, f.s));
    std::mt19937_64 rng(p);
    for (int i = 0; i < 100; ++i) {
      Fp2 x(f, rng() % p, rng() % p);
      CHECK(Fp2::one(f) * x == x);
      if (x.is_zero()) continue;
      CHECK((x * x.inv()).is_one());
      Fp2 y(f, rng() % p, rng() % p), z(f, rng() % p, rng() % p);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x.pow(p * p - 1).is_one());
      auto r = (x * x).sqrt();
      REQUIRE(r.has_value());
      CHECK(r->square() == x * x);
    }
  }
  Fp2Params f = make_fp2(29);
  CHECK_THROWS_AS(Fp2::zero(f).inv(), ParameterError);
  CHECK_THROWS_AS(Fp2::one(f) + Fp2::one(make_fp2(31)), ParameterError);
  CHECK_THROWS_AS(make_fp2(9), ParameterError);
}

TEST_CASE("Fp2 squares are exactly the elements of square norm") {
  Fp2Params f = make_fp2(13);
  std::set<std::pair<u64, u64>> squares;
  for (u64 a = 0; a < 13; ++a)
    for (u64 b = 0; b < 13; ++b) {
      Fp2 s = Fp2(f, a, b).square();
      squares.insert({s.c0(), s.c1()});
    }
  for (u64 a = 0; a < 13; ++a)
    for (u64 b = 0; b < 13; ++b) {
      Fp2 x(f, a, b);
      CHECK(x.is_square() == squares.count({a, b}) > 0);
      CHECK(x.sqrt().has_value() == x.is_square());
    }
}

static std::vector<u64> naive_pow(const std::vector<u64>& f, u64 e, std::size_t d, u64 p) {
  std::vector<u64> r{1};
  for (u64 k = 0; k < e; ++k) {
    std::vector<u64> n(r.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) n[i + j] = (n[i + j] + r[i] * f[j]) % p;
    r = n;
  }
  r.resize(d + 1, 0);
  return r;
}

TEST_CASE("truncated power series") {
  std::vector<u64> x{0, 1};
  CHECK(truncated_poly_pow(x, 3, 2, 5) == std::vector<u64>{0, 0, 0});
  std::vector<u64> one_plus_x{1, 1};
  CHECK(truncated_poly_pow(one_plus_x, 2, 2, 5) == std::vector<u64>{1, 2, 1});

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    // Small p exercises the square-and-multiply path, large p the recurrence.
    const u64 p = (t % 2) ? 7 : 9241;
    std::vector<u64> f(1 + rng() % 6);
    for (auto& c : f) c = rng() % p;
    if (rng() % 3 == 0) f[0] = 0;
    f.back() = 1 + rng() % (p - 1);
    const u64 e = rng() % 17;
    const std::size_t d = rng() % 31;
    CHECK(truncated_poly_pow(f, e, d, p) == naive_pow(f, e, d, p));
  }
}
