#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over F_{p^2}.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ramanujan/ff.hpp"

namespace ramanujan::ec {

using ff::Fp2;
using ff::Fp2Params;
using ff::i64;
using ff::u64;

struct Point {
  Fp2 x, y;
  bool inf = true;

  static Point infinity() { return Point{}; }
  static Point affine(const Fp2& x, const Fp2& y) { return Point{x, y, false}; }
  bool operator==(const Point& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
  bool operator<(const Point& o) const {
    if (inf != o.inf) return inf;
    if (inf) return false;
    return x == o.x ? y < o.y : x < o.x;
  }
};

class Curve {
 public:
  Curve() = default;
  // Throws ParameterError on a singular curve.
  Curve(const Fp2& a, const Fp2& b);
  // a = 3j(1728 - j), b = 2j(1728 - j)^2, with y^2 = x^3 + 1 and y^2 = x^3 + x
  // for j = 0 and j = 1728.
  static Curve from_j(const Fp2& j);

  const Fp2& a() const { return a_; }
  const Fp2& b() const { return b_; }
  const Fp2Params& field() const { return a_.params(); }
  u64 p() const { return a_.p(); }
  bool over_prime_field() const { return a_.in_prime_subfield() && b_.in_prime_subfield(); }

  // -16 (4a^3 + 27b^2)
  Fp2 discriminant() const;
  Fp2 j_invariant() const;

  bool contains(const Point& P) const;
  // Throws ParameterError unless P lies on this curve.
  void require(const Point& P) const;

  Point neg(const Point& P) const;
  Point add(const Point& P, const Point& Q) const;
  Point dbl(const Point& P) const { return add(P, P); }
  Point mul(const Point& P, u64 k) const;
  Point mul_signed(const Point& P, i64 k) const;

  // Point with the given x and the canonical square root as y, if any.
  std::optional<Point> lift_x(const Fp2& x) const;
  // Uniform-ish point of E(F_{p^2}) drawn from the engine.
  Point random_point(std::mt19937_64& rng) const;

  // (x, y) -> (u^2 x, u^3 y) lands on y^2 = x^3 + u^4 a x + u^6 b.
  Curve scaled(const Fp2& u) const;
  // Quadratic twist by d: y^2 = x^3 + a d^2 x + b d^3.
  Curve twist(const Fp2& d) const;

  bool operator==(const Curve& o) const { return a_ == o.a_ && b_ == o.b_; }

 private:
  Fp2 a_, b_;
};

inline Fp2 j_invariant(const Curve& c) { return c.j_invariant(); }

Point scale_point(const Point& P, const Fp2& u);

// Smallest nonsquare of F_{p^2} in (c0, c1) order.
Fp2 nonsquare(const Fp2Params& f);

// Coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2).
Fp2 hasse_invariant(const Curve& c);

// Deuring criterion. Requires a, b in F_p.
bool is_supersingular(const Curve& c);

Curve find_supersingular_curve(u64 p);

inline constexpr u64 kSupersingularScanCap = u64{1} << 16;

// Every supersingular j-invariant of characteristic p, ascending. Computed from
// the roots of the Legendre polynomial sum_i C(m, i)^2 x^i, m = (p - 1)/2,
// which split over F_{p^2}; independent of any isogeny walk. Requires
// 5 <= p < kSupersingularScanCap.
std::vector<Fp2> supersingular_j_invariants(u64 p);

// Smallest k <= max_k with [l^k]P = O, or nullopt.
std::optional<int> ell_power_order(const Curve& c, const Point& P, u64 ell, int max_k);
bool has_exact_order(const Curve& c, const Point& P, u64 ell, int e);

// For a supersingular curve whose F_{p^2}-points form (Z/N)^2 with N = p + 1 or
// p - 1, returns N. Throws ParameterError for any other group structure.
u64 sidh_group_exponent(const Curve& c);

// The curve itself when l | N, else its quadratic twist (which swaps p+1 and
// p-1). Throws ParameterError when l divides neither.
Curve rational_torsion_model(const Curve& c, u64 ell);

// Basis (P, Q) of E[l^e]. The engine defaults to one seeded from the curve.
std::pair<Point, Point> torsion_basis(const Curve& c, u64 ell, int e);
std::pair<Point, Point> torsion_basis(const Curve& c, u64 ell, int e, std::mt19937_64& rng);

// Writes R = [m]P + [n]Q for a basis (P, Q) of E[l^e]; throws ParameterError
// when R is outside the span.
std::pair<u64, u64> decompose_in_basis(const Curve& c, const Point& R, const Point& P,
                                       const Point& Q, u64 ell, int e);

u64 ipow(u64 base, int e);

}  // namespace ramanujan::ec
