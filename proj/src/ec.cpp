#include "ramanujan/ec.hpp"

#include <string>

namespace ramanujan::ec {

namespace {

u64 splitmix(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 curve_seed(const Curve& c, u64 salt) {
  u64 h = splitmix(c.p() ^ salt);
  for (u64 v : {c.a().c0(), c.a().c1(), c.b().c0(), c.b().c1()}) h = splitmix(h ^ v);
  return h;
}

Point add_raw(const Curve& c, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Fp2 lambda;
  if (P.x == Q.x) {
    if (!(P.y == Q.y) || P.y.is_zero()) return Point::infinity();
    Fp2 x2 = P.x.square();
    lambda = (x2.scale(3) + c.a()) / P.y.scale(2);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  Fp2 x3 = lambda.square() - P.x - Q.x;
  Fp2 y3 = lambda * (P.x - x3) - P.y;
  return Point::affine(x3, y3);
}

Point mul_raw(const Curve& c, Point P, u64 k) {
  Point R = Point::infinity();
  while (k) {
    if (k & 1) R = add_raw(c, R, P);
    k >>= 1;
    if (k) P = add_raw(c, P, P);
  }
  return R;
}

}  // namespace

u64 ipow(u64 base, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

Curve::Curve(const Fp2& a, const Fp2& b) : a_(a), b_(b) {
  if (!(a.params() == b.params())) throw ParameterError("curve coefficients from different fields");
  if (a.p() < 5) throw ParameterError("short Weierstrass form needs p >= 5");
  if (discriminant().is_zero()) throw ParameterError("singular curve: 4a^3 + 27b^2 = 0");
}

Curve Curve::from_j(const Fp2& j) {
  const Fp2Params& f = j.params();
  const Fp2 k = Fp2(f, 1728) - j;
  if (j.is_zero()) return Curve(Fp2::zero(f), Fp2::one(f));
  if (k.is_zero()) return Curve(Fp2::one(f), Fp2::zero(f));
  return Curve(j.scale(3) * k, j.scale(2) * k.square());
}

Fp2 Curve::discriminant() const {
  Fp2 s = a_.square() * a_ * Fp2(field(), 4) + b_.square().scale(27);
  return -s.scale(16);
}

Fp2 Curve::j_invariant() const {
  Fp2 a3 = a_.square() * a_.scale(4);
  return a3.scale(1728) / (a3 + b_.square().scale(27));
}

bool Curve::contains(const Point& P) const {
  if (P.inf) return true;
  if (!(P.x.params() == field()) || !(P.y.params() == field())) return false;
  return P.y.square() == (P.x.square() + a_) * P.x + b_;
}

void Curve::require(const Point& P) const {
  if (!contains(P)) throw ParameterError("point is not on the curve");
}

Point Curve::neg(const Point& P) const {
  require(P);
  if (P.inf) return P;
  return Point::affine(P.x, -P.y);
}

Point Curve::add(const Point& P, const Point& Q) const {
  require(P);
  require(Q);
  return add_raw(*this, P, Q);
}

Point Curve::mul(const Point& P, u64 k) const {
  require(P);
  return mul_raw(*this, P, k);
}

Point Curve::mul_signed(const Point& P, i64 k) const {
  if (k >= 0) return mul(P, static_cast<u64>(k));
  return neg(mul(P, static_cast<u64>(-(k + 1)) + 1));
}

std::optional<Point> Curve::lift_x(const Fp2& x) const {
  Fp2 rhs = (x.square() + a_) * x + b_;
  auto y = rhs.sqrt();
  if (!y) return std::nullopt;
  return Point::affine(x, *y);
}

Point Curve::random_point(std::mt19937_64& rng) const {
  const u64 p = this->p();
  for (;;) {
    Fp2 x(field(), rng() % p, rng() % p);
    if (auto P = lift_x(x)) {
      if (rng() & 1) P->y = -P->y;
      return *P;
    }
  }
}

Curve Curve::scaled(const Fp2& u) const {
  Fp2 u2 = u.square();
  Fp2 u4 = u2.square();
  return Curve(a_ * u4, b_ * u4 * u2);
}

Curve Curve::twist(const Fp2& d) const {
  Fp2 d2 = d.square();
  return Curve(a_ * d2, b_ * d2 * d);
}

Point scale_point(const Point& P, const Fp2& u) {
  if (P.inf) return P;
  Fp2 u2 = u.square();
  return Point::affine(P.x * u2, P.y * u2 * u);
}

Fp2 nonsquare(const Fp2Params& f) {
  for (u64 c1 = 0; c1 < f.p; ++c1) {
    for (u64 c0 = 0; c0 < f.p; ++c0) {
      Fp2 d(f, c0, c1);
      if (!d.is_zero() && !d.is_square()) return d;
    }
  }
  throw InternalError("F_{p^2} has no nonsquare");
}

Fp2 hasse_invariant(const Curve& c) {
  // h = g^e with g = (x^3 + a x + b) / x^v, using g h' = e g' h.
  const Fp2Params& f = c.field();
  const u64 p = f.p;
  const u64 e = (p - 1) / 2;
  std::vector<Fp2> g;
  std::size_t v = 0;
  if (c.b().is_zero()) {
    v = 1;
    g = {c.a(), Fp2::zero(f), Fp2::one(f)};
  } else {
    g = {c.b(), c.a(), Fp2::zero(f), Fp2::one(f)};
  }
  if (g[0].is_zero()) {  // a = b = 0 cannot happen on a nonsingular curve
    throw InternalError("hasse_invariant: degenerate cubic");
  }
  const std::size_t target = (p - 1) - v * e;
  std::vector<Fp2> h(target + 1, Fp2::zero(f));
  h[0] = g[0].pow(e);
  const Fp2 g0inv = g[0].inv();
  const u64 e1 = (e + 1) % p;
  const std::size_t deg = g.size() - 1;
  for (std::size_t k = 1; k <= target; ++k) {
    Fp2 sum = Fp2::zero(f);
    for (std::size_t i = 1; i <= std::min(k, deg); ++i) {
      if (g[i].is_zero()) continue;
      u64 coef = ff::sub_mod(ff::mul_mod(e1, i, p), k % p, p);
      sum += (g[i] * h[k - i]).scale(coef);
    }
    h[k] = sum * g0inv.scale(ff::inv_mod(k % p, p));
  }
  return h[target];
}

bool is_supersingular(const Curve& c) {
  if (!c.over_prime_field()) {
    throw ParameterError("is_supersingular: coefficients must lie in F_p");
  }
  const u64 p = c.p();
  std::vector<u64> f{c.b().c0(), c.a().c0(), 0, 1};
  auto series = ff::truncated_poly_pow(f, (p - 1) / 2, p - 1, p);
  return series[p - 1] == 0;
}

Curve find_supersingular_curve(u64 p) {
  if (p < 5 || !ff::is_prime(p)) {
    throw ParameterError("find_supersingular_curve: p must be a prime >= 5");
  }
  const Fp2Params f = ff::make_fp2(p);
  if (p % 4 == 3) return Curve(Fp2::one(f), Fp2::zero(f));
  if (p % 3 == 2) return Curve(Fp2::zero(f), Fp2::one(f));
  for (u64 j = 0; j < p; ++j) {
    Curve c = Curve::from_j(Fp2(f, j));
    if (is_supersingular(c)) return c;
  }
  throw InternalError("no supersingular j-invariant in F_" + std::to_string(p));
}

std::optional<int> ell_power_order(const Curve& c, const Point& P, u64 ell, int max_k) {
  c.require(P);
  Point R = P;
  int k = 0;
  while (!R.inf) {
    if (k == max_k) return std::nullopt;
    R = mul_raw(c, R, ell);
    ++k;
  }
  return k;
}

bool has_exact_order(const Curve& c, const Point& P, u64 ell, int e) {
  auto k = ell_power_order(c, P, ell, e);
  return k && *k == e;
}

u64 sidh_group_exponent(const Curve& c) {
  const u64 p = c.p();
  std::mt19937_64 rng(curve_seed(c, 0x5eed));
  bool plus = true, minus = true;
  for (int i = 0; i < 12 && (plus || minus); ++i) {
    Point R = c.random_point(rng);
    if (plus && !mul_raw(c, R, p + 1).inf) plus = false;
    if (minus && !mul_raw(c, R, p - 1).inf) minus = false;
  }
  if (plus) return p + 1;
  if (minus) return p - 1;
  throw ParameterError("curve group is not (Z/(p+1))^2 or (Z/(p-1))^2");
}

Curve rational_torsion_model(const Curve& c, u64 ell) {
  if (sidh_group_exponent(c) % ell == 0) return c;
  Curve t = c.twist(nonsquare(c.field()));
  if (sidh_group_exponent(t) % ell == 0) return t;
  throw ParameterError("l divides neither p+1 nor p-1");
}

std::pair<Point, Point> torsion_basis(const Curve& c, u64 ell, int e) {
  std::mt19937_64 rng(curve_seed(c, ell * 1000003ULL + static_cast<u64>(e)));
  return torsion_basis(c, ell, e, rng);
}

std::pair<Point, Point> torsion_basis(const Curve& c, u64 ell, int e, std::mt19937_64& rng) {
  if (e < 1) throw ParameterError("torsion_basis: exponent must be positive");
  const u64 N = sidh_group_exponent(c);
  const u64 L = ipow(ell, e);
  if (N % L != 0) {
    throw ParameterError("torsion_basis: " + std::to_string(ell) + "^" + std::to_string(e) +
                         " does not divide the group exponent");
  }
  const u64 cof = N / L;
  const u64 top = L / ell;
  auto sample = [&]() -> std::optional<Point> {
    for (int tries = 0; tries < 200; ++tries) {
      Point P = mul_raw(c, c.random_point(rng), cof);
      if (!mul_raw(c, P, top).inf) return P;
    }
    return std::nullopt;
  };
  auto P = sample();
  if (!P) throw InternalError("torsion_basis: no point of full order found");
  const Point P1 = mul_raw(c, *P, top);
  for (int tries = 0; tries < 200; ++tries) {
    auto Q = sample();
    if (!Q) break;
    const Point Q1 = mul_raw(c, *Q, top);
    bool dependent = false;
    Point M = Point::infinity();
    for (u64 k = 0; k < ell && !dependent; ++k) {
      if (M == Q1) dependent = true;
      M = add_raw(c, M, P1);
    }
    if (!dependent) return {*P, *Q};
  }
  throw InternalError("torsion_basis: no independent second point found");
}

std::pair<u64, u64> decompose_in_basis(const Curve& c, const Point& R, const Point& P,
                                       const Point& Q, u64 ell, int e) {
  c.require(R);
  c.require(P);
  c.require(Q);
  const u64 L = ipow(ell, e);
  const Point P1 = mul_raw(c, P, L / ell);
  const Point Q1 = mul_raw(c, Q, L / ell);
  // table[i * ell + j] = [i]P1 + [j]Q1
  std::vector<Point> table(ell * ell);
  for (u64 i = 0; i < ell; ++i) {
    for (u64 j = 0; j < ell; ++j) {
      table[i * ell + j] = add_raw(c, mul_raw(c, P1, i), mul_raw(c, Q1, j));
    }
  }
  u64 m = 0, n = 0, scale = 1;
  for (int k = 0; k < e; ++k) {
    Point T = add_raw(c, R, c.neg(add_raw(c, mul_raw(c, P, m), mul_raw(c, Q, n))));
    Point S = mul_raw(c, T, L / (scale * ell));
    bool found = false;
    for (u64 idx = 0; idx < table.size(); ++idx) {
      if (table[idx] == S) {
        m += (idx / ell) * scale;
        n += (idx % ell) * scale;
        found = true;
        break;
      }
    }
    if (!found) throw ParameterError("decompose_in_basis: point is not in the span of the basis");
    scale *= ell;
  }
  if (!(add_raw(c, mul_raw(c, P, m), mul_raw(c, Q, n)) == R)) {
    throw ParameterError("decompose_in_basis: point is not in the span of the basis");
  }
  return {m, n};
}

}  // namespace ramanujan::ec
