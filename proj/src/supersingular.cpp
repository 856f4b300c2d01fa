#include <algorithm>
#include <random>

#include "ramanujan/ec.hpp"

namespace ramanujan::ec {

namespace {

// Dense polynomials over F_p, lowest degree first, for p < 2^16. With
// p^2 < 2^32 a u64 accumulator absorbs 2^32 products before reduction, so
// inner loops run unreduced.
using FpPoly = std::vector<u64>;

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly mul(const FpPoly& f, const FpPoly& g, u64 p) {
  if (f.empty() || g.empty()) return {};
  std::vector<u64> acc(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const u64 c = f[i];
    if (c == 0) continue;
    u64* out = acc.data() + i;
    for (std::size_t j = 0; j < g.size(); ++j) out[j] += c * g[j];
  }
  for (auto& x : acc) x %= p;
  trim(acc);
  return acc;
}

// Remainder modulo a monic g; r holds lazily reduced entries.
FpPoly mod(const FpPoly& f, const FpPoly& g, u64 p) {
  const int dg = deg(g);
  std::vector<u64> r(f);
  if (deg(r) < dg) {
    trim(r);
    return r;
  }
  for (int k = deg(r); k >= dg; --k) {
    const u64 c = r[k] % p;
    if (c == 0) continue;
    const u64 nc = p - c;  // adds nc * g[i], i.e. subtracts c * g[i]
    u64* out = r.data() + (k - dg);
    for (int i = 0; i < dg; ++i) out[i] += nc * g[i];
    r[k] = 0;
  }
  r.resize(dg);
  for (auto& x : r) x %= p;
  trim(r);
  return r;
}

FpPoly make_monic(FpPoly f, u64 p) {
  trim(f);
  if (f.empty()) return f;
  const u64 inv = ff::inv_mod(f.back(), p);
  for (auto& c : f) c = ff::mul_mod(c, inv, p);
  return f;
}

FpPoly sub(FpPoly f, const FpPoly& g, u64 p) {
  if (f.size() < g.size()) f.resize(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = ff::sub_mod(f[i], g[i], p);
  trim(f);
  return f;
}

FpPoly gcd(FpPoly f, FpPoly g, u64 p) {
  f = make_monic(std::move(f), p);
  g = make_monic(std::move(g), p);
  while (!g.empty()) {
    FpPoly r = make_monic(mod(f, g, p), p);
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

FpPoly quotient(const FpPoly& f, const FpPoly& g, u64 p) {
  const int dg = deg(g);
  FpPoly r(f);
  FpPoly q(f.size() - dg, 0);
  for (int k = deg(r); k >= dg; --k) {
    const u64 c = r[k] % p;
    q[k - dg] = c;
    if (c == 0) continue;
    for (int i = 0; i <= dg; ++i) r[k - dg + i] = ff::sub_mod(r[k - dg + i] % p, ff::mul_mod(c, g[i], p), p);
  }
  trim(q);
  return q;
}

FpPoly powmod(FpPoly b, u64 e, const FpPoly& m, u64 p) {
  FpPoly r{1};
  b = mod(b, m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, b, p), m, p);
    e >>= 1;
    if (e) b = mod(mul(b, b, p), m, p);
  }
  return r;
}

// Splits a monic product of distinct irreducible quadratics.
void split_quadratics(const FpPoly& g, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (deg(g) <= 0) return;
  if (deg(g) == 2) {
    out.push_back(g);
    return;
  }
  const u64 e = (p * p - 1) / 2;
  for (int tries = 0; tries < 200; ++tries) {
    FpPoly h{rng() % p, 1};
    FpPoly w = sub(powmod(h, e, g, p), FpPoly{1}, p);
    FpPoly c = gcd(g, w, p);
    if (deg(c) > 0 && deg(c) < deg(g)) {
      split_quadratics(c, p, rng, out);
      split_quadratics(quotient(g, c, p), p, rng, out);
      return;
    }
  }
  throw InternalError("supersingular_j_invariants: quadratic splitting did not terminate");
}

Fp2 lambda_to_j(const Fp2& l) {
  const Fp2 one = Fp2::one(l.params());
  const Fp2 s = l.square() - l + one;
  const Fp2 d = l * (l - one);
  return (s.square() * s).scale(256) / d.square();
}

}  // namespace

std::vector<Fp2> supersingular_j_invariants(u64 p) {
  if (p < 5 || p >= kSupersingularScanCap || !ff::is_prime(p)) {
    throw ParameterError("supersingular_j_invariants: need a prime 5 <= p < 65536");
  }
  const Fp2Params f = ff::make_fp2(p);
  const u64 m = (p - 1) / 2;

  // H(x) = sum C(m, i)^2 x^i; all m roots are distinct and lie in F_{p^2}.
  FpPoly H(m + 1);
  u64 binom = 1;
  for (u64 i = 0; i <= m; ++i) {
    H[i] = ff::mul_mod(binom, binom, p);
    binom = ff::mul_mod(ff::mul_mod(binom, m - i, p), ff::inv_mod((i + 1) % p, p), p);
  }
  H = make_monic(H, p);
  const FpPoly x{0, 1};
  const FpPoly xp = powmod(x, p, H, p);
  if (powmod(xp, p, H, p) != x) {
    throw InternalError("supersingular_j_invariants: Legendre polynomial does not split over F_{p^2}");
  }

  std::vector<Fp2> lambdas;
  const FpPoly lin = gcd(H, sub(xp, x, p), p);
  for (u64 v = 0; v < p && static_cast<int>(lambdas.size()) < deg(lin); ++v) {
    u64 acc = 0;
    for (auto it = lin.rbegin(); it != lin.rend(); ++it) acc = (acc * v + *it) % p;
    if (acc == 0) lambdas.emplace_back(f, v);
  }
  std::mt19937_64 rng(0x5eed ^ p);
  std::vector<FpPoly> quads;
  split_quadratics(quotient(H, lin, p), p, rng, quads);
  for (const FpPoly& q : quads) {
    // x^2 + b x + c
    const Fp2 b(f, q[1]), c(f, q[0]);
    const Fp2 disc = b.square() - c.scale(4);
    const Fp2 r = *disc.sqrt();
    const Fp2 half = Fp2(f, 2).inv();
    lambdas.push_back((r - b) * half);
    lambdas.push_back((-r - b) * half);
  }
  if (lambdas.size() != m) throw InternalError("supersingular_j_invariants: root count mismatch");

  std::vector<Fp2> js;
  for (const Fp2& l : lambdas) js.push_back(lambda_to_j(l));
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  return js;
}

}  // namespace ramanujan::ec
