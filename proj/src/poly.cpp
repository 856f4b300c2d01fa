#include "ramanujan/poly.hpp"

#include <algorithm>

namespace ramanujan::poly {

void trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!f[i].is_zero()) return i;
  return -1;
}

Poly mul(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, Fp2::zero(f[0].params()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  trim(r);
  return r;
}

Poly sub(const Poly& f, const Poly& g) {
  const Fp2Params& fp = (f.empty() ? g : f)[0].params();
  Poly r(std::max(f.size(), g.size()), Fp2::zero(fp));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  const int dg = degree(g);
  if (dg < 0) throw ParameterError("polynomial division by zero");
  Poly r = f;
  trim(r);
  if (degree(r) < dg) return {{}, r};
  const Fp2 lead_inv = g[dg].inv();
  Poly q(r.size() - dg, Fp2::zero(g[0].params()));
  for (int k = degree(r); k >= dg; --k) {
    const Fp2 c = r[k] * lead_inv;
    if (c.is_zero()) continue;
    q[k - dg] = c;
    for (int i = 0; i <= dg; ++i) r[k - dg + i] -= c * g[i];
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly monic(const Poly& f) {
  Poly r = f;
  trim(r);
  if (r.empty()) return r;
  const Fp2 inv = r.back().inv();
  for (auto& c : r) c *= inv;
  return r;
}

Poly gcd(Poly f, Poly g) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = divmod(f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return monic(f);
}

Poly powmod(const Poly& base, u64 e, const Poly& m) {
  const Fp2Params& fp = m[0].params();
  Poly r{Fp2::one(fp)};
  Poly b = divmod(base, m).second;
  while (e) {
    if (e & 1) r = divmod(mul(r, b), m).second;
    e >>= 1;
    if (e) b = divmod(mul(b, b), m).second;
  }
  return r;
}

Fp2 eval(const Poly& f, const Fp2& x) {
  Fp2 acc = Fp2::zero(x.params());
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

void split(const Poly& g, std::mt19937_64& rng, std::vector<Fp2>& out) {
  const int d = degree(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  const Fp2Params& fp = g[0].params();
  const u64 q = fp.p * fp.p;
  for (int tries = 0; tries < 200; ++tries) {
    Poly h{Fp2(fp, rng() % fp.p, rng() % fp.p), Fp2::one(fp)};
    Poly w = sub(powmod(h, (q - 1) / 2, g), Poly{Fp2::one(fp)});
    Poly c = gcd(g, w);
    const int dc = degree(c);
    if (dc > 0 && dc < d) {
      split(c, rng, out);
      split(divmod(g, c).first, rng, out);
      return;
    }
  }
  throw InternalError("root splitting did not terminate");
}

}  // namespace

std::vector<Fp2> roots(const Poly& f) {
  Poly g = monic(f);
  if (degree(g) < 1) return {};
  const Fp2Params& fp = g[0].params();
  const u64 q = fp.p * fp.p;
  // Product of the distinct linear factors: gcd(f, X^q - X).
  Poly x{Fp2::zero(fp), Fp2::one(fp)};
  Poly g_lin = gcd(g, sub(powmod(x, q, g), x));
  std::mt19937_64 rng(0x600d5eedULL ^ fp.p);
  std::vector<Fp2> out;
  split(g_lin, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ramanujan::poly
