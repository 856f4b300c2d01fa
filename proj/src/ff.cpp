#include "ramanujan/ff.hpp"

#include <algorithm>
#include <sstream>

namespace ramanujan::ff {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulm = [n](u64 a, u64 b) { return static_cast<u64>((unsigned __int128)a * b % n); };
  auto powm = [&](u64 b, u64 e) {
    u64 r = 1;
    b %= n;
    while (e) {
      if (e & 1) r = mulm(r, b);
      b = mulm(b, b);
      e >>= 1;
    }
    return r;
  };
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powm(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulm(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p), new_r = static_cast<i64>(a % p);
  if (new_r == 0) throw ParameterError("inverse of zero mod " + std::to_string(p));
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ParameterError("element not invertible mod " + std::to_string(p));
  return reduce(t, p);
}

u64 reduce(i64 a, u64 p) {
  i64 m = a % static_cast<i64>(p);
  return static_cast<u64>(m < 0 ? m + static_cast<i64>(p) : m);
}

int legendre(i64 a, u64 q) {
  if (q % 2 == 0 || !is_prime(q)) {
    throw ParameterError("legendre: modulus " + std::to_string(q) + " is not an odd prime");
  }
  u64 r = reduce(a, q);
  if (r == 0) return 0;
  return pow_mod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------- Fp

Fp::Fp(u64 value, u64 modulus) : value_(value % modulus), p_(modulus) {}

Fp Fp::from_signed(i64 value, u64 modulus) { return Fp(reduce(value, modulus), modulus); }

void Fp::check_same(const Fp& o) const {
  if (p_ != o.p_) throw ParameterError("Fp: mismatched moduli");
}

Fp Fp::operator+(const Fp& o) const {
  check_same(o);
  return Fp(add_mod(value_, o.value_, p_), p_);
}
Fp Fp::operator-(const Fp& o) const {
  check_same(o);
  return Fp(sub_mod(value_, o.value_, p_), p_);
}
Fp Fp::operator-() const { return Fp(sub_mod(0, value_, p_), p_); }
Fp Fp::operator*(const Fp& o) const {
  check_same(o);
  return Fp(mul_mod(value_, o.value_, p_), p_);
}
Fp Fp::inv() const {
  if (value_ == 0) throw ParameterError("Fp: division by zero");
  return Fp(inv_mod(value_, p_), p_);
}
Fp Fp::pow(u64 e) const { return Fp(pow_mod(value_, e, p_), p_); }

std::optional<Fp> sqrt_mod(const Fp& a) {
  const u64 p = a.modulus();
  const u64 n = a.value();
  if (n == 0) return Fp(0, p);
  if (pow_mod(n, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 root;
  if (p % 4 == 3) {
    root = pow_mod(n, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = pow_mod(z, q, p);
    u64 x = pow_mod(n, (q + 1) / 2, p);
    u64 t = pow_mod(n, q, p);
    int m = s;
    while (t != 1) {
      int i = 0;
      u64 tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, p);
        ++i;
      }
      u64 b = c;
      for (int k = 0; k < m - i - 1; ++k) b = mul_mod(b, b, p);
      x = mul_mod(x, b, p);
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      m = i;
    }
    root = x;
  }
  return Fp(std::min(root, p - root), p);
}

// ---------------------------------------------------------------- Fp2

Fp2Params make_fp2(u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw ParameterError("field modulus " + std::to_string(p) + " is not an odd prime");
  }
  if (p >= kMaxModulus) throw ParameterError("field modulus exceeds 2^31");
  u64 s = 2;
  while (legendre(static_cast<i64>(s), p) != -1) ++s;
  return Fp2Params{p, s};
}

Fp2::Fp2(const Fp2Params& f, u64 c0, u64 c1) : c0_(c0 % f.p), c1_(c1 % f.p), f_(f) {}

Fp2 Fp2::from_signed(const Fp2Params& f, i64 c0, i64 c1) {
  return Fp2(f, reduce(c0, f.p), reduce(c1, f.p));
}

void Fp2::check_same(const Fp2& o) const {
  if (!(f_ == o.f_)) throw ParameterError("Fp2: mismatched field parameters");
}

Fp2 Fp2::operator+(const Fp2& o) const {
  check_same(o);
  Fp2 r;
  r.f_ = f_;
  r.c0_ = add_mod(c0_, o.c0_, f_.p);
  r.c1_ = add_mod(c1_, o.c1_, f_.p);
  return r;
}

Fp2 Fp2::operator-(const Fp2& o) const {
  check_same(o);
  Fp2 r;
  r.f_ = f_;
  r.c0_ = sub_mod(c0_, o.c0_, f_.p);
  r.c1_ = sub_mod(c1_, o.c1_, f_.p);
  return r;
}

Fp2 Fp2::operator-() const {
  Fp2 r;
  r.f_ = f_;
  r.c0_ = sub_mod(0, c0_, f_.p);
  r.c1_ = sub_mod(0, c1_, f_.p);
  return r;
}

Fp2 Fp2::operator*(const Fp2& o) const {
  check_same(o);
  const u64 p = f_.p;
  Fp2 r;
  r.f_ = f_;
  u64 a = mul_mod(c0_, o.c0_, p);
  u64 b = mul_mod(c1_, o.c1_, p);
  r.c0_ = add_mod(a, mul_mod(b, f_.s, p), p);
  r.c1_ = add_mod(mul_mod(c0_, o.c1_, p), mul_mod(c1_, o.c0_, p), p);
  return r;
}

Fp2 Fp2::scale(u64 k) const {
  k %= f_.p;
  return Fp2(f_, mul_mod(c0_, k, f_.p), mul_mod(c1_, k, f_.p));
}

u64 Fp2::norm() const {
  const u64 p = f_.p;
  return sub_mod(mul_mod(c0_, c0_, p), mul_mod(f_.s, mul_mod(c1_, c1_, p), p), p);
}

Fp2 Fp2::conj() const { return Fp2(f_, c0_, sub_mod(0, c1_, f_.p)); }

Fp2 Fp2::inv() const {
  if (is_zero()) throw ParameterError("Fp2: division by zero");
  u64 ninv = inv_mod(norm(), f_.p);
  Fp2 c = conj();
  return Fp2(f_, mul_mod(c.c0_, ninv, f_.p), mul_mod(c.c1_, ninv, f_.p));
}

Fp2 Fp2::pow(u64 e) const {
  Fp2 r = one(f_);
  Fp2 b = *this;
  while (e) {
    if (e & 1) r *= b;
    b = b.square();
    e >>= 1;
  }
  return r;
}

bool Fp2::is_square() const {
  // a is a square in F_{p^2} iff N(a) is a square in F_p.
  if (is_zero()) return true;
  return pow_mod(norm(), (f_.p - 1) / 2, f_.p) == 1;
}

std::optional<Fp2> Fp2::sqrt() const {
  const u64 p = f_.p;
  if (is_zero()) return *this;
  if (!is_square()) return std::nullopt;
  Fp2 root;
  if (c1_ == 0) {
    if (auto r = sqrt_mod(Fp(c0_, p))) {
      root = Fp2(f_, r->value(), 0);
    } else {
      // c0 = s * y^2  =>  sqrt = y t
      auto y = sqrt_mod(Fp(mul_mod(c0_, inv_mod(f_.s, p), p), p));
      if (!y) throw InternalError("Fp2::sqrt: prime-subfield root missing");
      root = Fp2(f_, 0, y->value());
    }
  } else {
    auto n = sqrt_mod(Fp(norm(), p));
    if (!n) throw InternalError("Fp2::sqrt: norm is not a square");
    const u64 inv2 = inv_mod(2, p);
    u64 alpha = mul_mod(add_mod(c0_, n->value(), p), inv2, p);
    auto x0 = sqrt_mod(Fp(alpha, p));
    if (!x0 || x0->is_zero()) {
      alpha = mul_mod(sub_mod(c0_, n->value(), p), inv2, p);
      x0 = sqrt_mod(Fp(alpha, p));
    }
    if (!x0 || x0->is_zero()) throw InternalError("Fp2::sqrt: no half-norm root");
    u64 x1 = mul_mod(c1_, inv_mod(mul_mod(2, x0->value(), p), p), p);
    root = Fp2(f_, x0->value(), x1);
  }
  if (!(root.square() == *this)) throw InternalError("Fp2::sqrt: verification failed");
  Fp2 other = -root;
  return other < root ? other : root;
}

std::string Fp2::label() const {
  std::ostringstream os;
  os << c0_ << ',' << c1_;
  return os.str();
}

// ---------------------------------------------------------------- series

namespace {

std::vector<u64> truncated_mul(const std::vector<u64>& a, const std::vector<u64>& b,
                               std::size_t d, u64 p) {
  std::vector<unsigned __int128> acc(std::min(d + 1, a.size() + b.size() - 1), 0);
  for (std::size_t i = 0; i < a.size() && i < acc.size(); ++i) {
    if (a[i] == 0) continue;
    const std::size_t lim = std::min(b.size(), acc.size() - i);
    for (std::size_t j = 0; j < lim; ++j) acc[i + j] += (unsigned __int128)a[i] * b[j];
  }
  std::vector<u64> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<u64>(acc[i] % p);
  return out;
}

}  // namespace

std::vector<u64> truncated_poly_pow(std::span<const u64> f, u64 e, std::size_t d, u64 p) {
  std::vector<u64> out(d + 1, 0);
  std::size_t v = 0;
  while (v < f.size() && f[v] % p == 0) ++v;
  if (v == f.size()) {
    if (e == 0) out[0] = 1 % p;
    return out;
  }
  if (v > 0 && e > d / v) return out;  // x^(v e) truncated away
  const std::size_t shift = v * static_cast<std::size_t>(e);
  const std::size_t dd = d - shift;
  std::vector<u64> g;
  for (std::size_t i = v; i < f.size(); ++i) g.push_back(f[i] % p);
  while (g.size() > 1 && g.back() == 0) g.pop_back();

  std::vector<u64> h;
  if (dd < p) {
    // g h' = e g' h gives each coefficient from the previous deg(g) ones.
    h.assign(dd + 1, 0);
    std::vector<u64> inv(dd + 1, 1);
    for (std::size_t k = 2; k <= dd; ++k) {
      inv[k] = mul_mod(p - p / k, inv[p % k], p);
    }
    const u64 g0inv = inv_mod(g[0], p);
    const u64 e1 = (e % p + 1) % p;
    h[0] = pow_mod(g[0], e, p);
    const std::size_t deg = g.size() - 1;
    for (std::size_t k = 1; k <= dd; ++k) {
      u64 sum = 0;
      const std::size_t lim = std::min(k, deg);
      for (std::size_t i = 1; i <= lim; ++i) {
        u64 coef = sub_mod(mul_mod(e1, i % p, p), k % p, p);
        sum = add_mod(sum, mul_mod(coef, mul_mod(g[i], h[k - i], p), p), p);
      }
      h[k] = mul_mod(sum, mul_mod(inv[k], g0inv, p), p);
    }
  } else {
    h = {1 % p};
    std::vector<u64> base = g;
    if (base.size() > dd + 1) base.resize(dd + 1);
    u64 ee = e;
    while (ee) {
      if (ee & 1) h = truncated_mul(h, base, dd, p);
      ee >>= 1;
      if (ee) base = truncated_mul(base, base, dd, p);
    }
  }
  for (std::size_t i = 0; i < h.size() && i + shift <= d; ++i) out[i + shift] = h[i];
  return out;
}

}  // namespace ramanujan::ff
