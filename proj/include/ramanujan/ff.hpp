#pragma once

// Prime field F_p and its quadratic extension F_p(t), t^2 = s.
//
// Moduli are restricted to odd primes below 2^31 so every product of two
// reduced values fits in 64 bits.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramanujan/errors.hpp"

namespace ramanujan::ff {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kMaxModulus = u64{1} << 31;

bool is_prime(u64 n);

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 r = a + b;
  return r >= p ? r - p : r;
}
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul_mod(u64 a, u64 b, u64 p) { return (a * b) % p; }
u64 pow_mod(u64 base, u64 exp, u64 p);
// Throws ParameterError for a == 0 mod p.
u64 inv_mod(u64 a, u64 p);
// Reduces any signed integer into [0, p).
u64 reduce(i64 a, u64 p);

// Legendre symbol (a/q); q must be an odd prime.
int legendre(i64 a, u64 q);

class Fp {
 public:
  Fp() = default;
  Fp(u64 value, u64 modulus);
  static Fp from_signed(i64 value, u64 modulus);

  u64 value() const { return value_; }
  u64 modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator-() const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp inv() const;
  Fp pow(u64 e) const;

  bool operator==(const Fp& o) const = default;

 private:
  void check_same(const Fp& o) const;
  u64 value_ = 0;
  u64 p_ = 0;
};

// Square root with the smaller integer representative, or nullopt when a is
// a nonresidue.
std::optional<Fp> sqrt_mod(const Fp& a);

struct Fp2Params {
  u64 p = 0;
  u64 s = 0;  // smallest positive quadratic nonresidue mod p
  bool operator==(const Fp2Params&) const = default;
};

// Validates p (odd prime below 2^31) and picks the nonresidue by linear scan.
Fp2Params make_fp2(u64 p);

class Fp2 {
 public:
  Fp2() = default;
  Fp2(const Fp2Params& f, u64 c0, u64 c1 = 0);
  static Fp2 zero(const Fp2Params& f) { return Fp2(f, 0, 0); }
  static Fp2 one(const Fp2Params& f) { return Fp2(f, 1, 0); }
  static Fp2 from_signed(const Fp2Params& f, i64 c0, i64 c1 = 0);
  static Fp2 gen(const Fp2Params& f) { return Fp2(f, 0, 1); }

  u64 c0() const { return c0_; }
  u64 c1() const { return c1_; }
  const Fp2Params& params() const { return f_; }
  u64 p() const { return f_.p; }

  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_one() const { return c0_ == 1 && c1_ == 0; }
  bool in_prime_subfield() const { return c1_ == 0; }

  Fp2 operator+(const Fp2& o) const;
  Fp2 operator-(const Fp2& o) const;
  Fp2 operator-() const;
  Fp2 operator*(const Fp2& o) const;
  Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2 scale(u64 k) const;  // multiplication by an integer
  Fp2 square() const { return *this * *this; }
  Fp2 inv() const;
  Fp2 pow(u64 e) const;
  Fp2 conj() const;   // Frobenius c0 + c1 t -> c0 - c1 t
  u64 norm() const;   // c0^2 - s c1^2 in F_p

  bool is_square() const;
  // Canonical root: the lexicographically smaller (c0, c1) of the two roots.
  std::optional<Fp2> sqrt() const;

  bool operator==(const Fp2& o) const { return c0_ == o.c0_ && c1_ == o.c1_ && f_ == o.f_; }
  bool operator<(const Fp2& o) const {
    return c0_ != o.c0_ ? c0_ < o.c0_ : c1_ < o.c1_;
  }

  // "c0,c1"
  std::string label() const;

 private:
  void check_same(const Fp2& o) const;
  u64 c0_ = 0;
  u64 c1_ = 0;
  Fp2Params f_{};
};

// Coefficients (lowest degree first) of f^e mod x^(d+1) over F_p.
std::vector<u64> truncated_poly_pow(std::span<const u64> f, u64 e, std::size_t d, u64 p);

}  // namespace ramanujan::ff
