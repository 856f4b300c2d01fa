#include "ramanujan/lps.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ramanujan::lps {

std::string Quaternion::str() const {
  std::string s = std::to_string(x0);
  const i64 c[3] = {x1, x2, x3};
  const char unit[3] = {'i', 'j', 'k'};
  for (int t = 0; t < 3; ++t) {
    if (c[t] == 0) continue;
    s += c[t] > 0 ? '+' : '-';
    s += std::to_string(c[t] > 0 ? c[t] : -c[t]);
    s += unit[t];
  }
  return s;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

namespace {

void require_l(u64 l) {
  if (l < 5 || l > 1000000 || !ff::is_prime(l) || l % 4 != 1) {
    throw ParameterError("lps: l must be a prime with l = 1 mod 4 (and at most 10^6)");
  }
}

}  // namespace

std::vector<Quaternion> four_square_solutions(u64 l) {
  require_l(l);
  const i64 L = static_cast<i64>(l);
  const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(l))) + 1;
  std::vector<Quaternion> out;
  for (i64 x0 = 1; x0 <= r; x0 += 2) {
    for (i64 x1 = -r; x1 <= r; ++x1) {
      for (i64 x2 = -r; x2 <= r; ++x2) {
        const i64 rest = L - x0 * x0 - x1 * x1 - x2 * x2;
        if (rest < 0) continue;
        const i64 x3 = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(rest))));
        if (x3 * x3 != rest) continue;
        for (i64 s : {x3, -x3}) {
          Quaternion q{x0, x1, x2, s};
          if (x1 % 2 == 0 && x2 % 2 == 0 && s % 2 == 0) out.push_back(q);
          if (x3 == 0) break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (out.size() != l + 1) {
    throw InternalError("four_square_solutions: expected l+1 solutions, found " + std::to_string(out.size()));
  }
  return out;
}

ProjMatrix::ProjMatrix(u64 a, u64 b, u64 c, u64 d, u64 p) : p_(p) {
  m_ = {a % p, b % p, c % p, d % p};
  if (ff::sub_mod(ff::mul_mod(m_[0], m_[3], p), ff::mul_mod(m_[1], m_[2], p), p) == 0) {
    throw ParameterError("ProjMatrix: singular matrix");
  }
  const u64 lead = m_[0] != 0 ? m_[0] : m_[1];
  const u64 inv = ff::inv_mod(lead, p);
  for (auto& x : m_) x = ff::mul_mod(x, inv, p);
}

u64 ProjMatrix::det() const {
  return ff::sub_mod(ff::mul_mod(m_[0], m_[3], p_), ff::mul_mod(m_[1], m_[2], p_), p_);
}

bool ProjMatrix::in_psl2() const { return ff::legendre(static_cast<i64>(det()), p_) == 1; }

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  const auto& x = m_;
  const auto& y = o.m_;
  const u64 p = p_;
  return ProjMatrix(ff::add_mod(ff::mul_mod(x[0], y[0], p), ff::mul_mod(x[1], y[2], p), p),
                    ff::add_mod(ff::mul_mod(x[0], y[1], p), ff::mul_mod(x[1], y[3], p), p),
                    ff::add_mod(ff::mul_mod(x[2], y[0], p), ff::mul_mod(x[3], y[2], p), p),
                    ff::add_mod(ff::mul_mod(x[2], y[1], p), ff::mul_mod(x[3], y[3], p), p), p);
}

ProjMatrix ProjMatrix::inverse() const {
  // The adjugate is a scalar multiple of the inverse.
  return ProjMatrix(m_[3], p_ - m_[1], p_ - m_[2], m_[0], p_);
}

u64 ProjMatrix::key() const { return ((m_[0] * p_ + m_[1]) * p_ + m_[2]) * p_ + m_[3]; }

std::string ProjMatrix::label() const {
  return std::to_string(m_[0]) + "," + std::to_string(m_[1]) + "," + std::to_string(m_[2]) + "," +
         std::to_string(m_[3]);
}

u64 epsilon(u64 p) {
  if (p % 4 != 1 || !ff::is_prime(p)) throw ParameterError("epsilon: need a prime p = 1 mod 4");
  return ff::sqrt_mod(ff::Fp(p - 1, p))->value();
}

ProjMatrix quaternion_image(const Quaternion& q, u64 eps, u64 p) {
  const auto r = [p](i64 v) { return ff::reduce(v, p); };
  const u64 e = eps % p;
  const u64 x0 = r(q.x0), x1 = r(q.x1), x2 = r(q.x2), x3 = r(q.x3);
  return ProjMatrix(ff::add_mod(x0, ff::mul_mod(x1, e, p), p), ff::add_mod(x2, ff::mul_mod(x3, e, p), p),
                    ff::add_mod(ff::sub_mod(0, x2, p), ff::mul_mod(x3, e, p), p),
                    ff::sub_mod(x0, ff::mul_mod(x1, e, p), p), p);
}

std::vector<ProjMatrix> cayley_generators(u64 l, u64 p) {
  require_l(l);
  if (!ff::is_prime(p) || p == l || p % 4 != 1 || p >= 2000) {
    throw ParameterError("lps: p must be a prime below 2000 with p = 1 mod 4 and p != l");
  }
  if (ff::legendre(static_cast<i64>(l), p) != 1) {
    throw ParameterError("lps: l must be a square mod p (the other case is bipartite)");
  }
  const u64 eps = epsilon(p);
  std::vector<ProjMatrix> gens;
  for (const auto& q : four_square_solutions(l)) gens.push_back(quaternion_image(q, eps, p));
  return gens;
}

graph::LabeledMultigraph build_lps_graph(u64 l, u64 p) {
  const std::vector<ProjMatrix> gens = cayley_generators(l, p);
  graph::LabeledMultigraph g;
  std::unordered_map<u64, std::size_t> index;
  std::vector<ProjMatrix> vertices;
  auto visit = [&](const ProjMatrix& m) {
    auto [it, fresh] = index.emplace(m.key(), vertices.size());
    if (fresh) {
      vertices.push_back(m);
      g.add_vertex(m.label());
    }
    return it->second;
  };
  visit(ProjMatrix::identity(p));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const ProjMatrix cur = vertices[i];
    for (const auto& s : gens) {
      const std::size_t j = visit(cur * s);
      // each edge {x, xs} is met once from each end
      if (i < j) g.add_edge(i, j);
    }
  }
  const u64 expected = (p * p * p - p) / 2;
  if (vertices.size() != expected) {
    throw InternalError("build_lps_graph: closure has " + std::to_string(vertices.size()) + " elements, expected " +
                        std::to_string(expected));
  }
  return g;
}

std::vector<IntMatrix> tree_neighbor_matrices(u64 l) {
  if (!ff::is_prime(l)) throw ParameterError("tree_neighbor_matrices: l must be prime");
  const i64 L = static_cast<i64>(l);
  std::vector<IntMatrix> out;
  for (i64 h = 0; h < L; ++h) out.push_back({L, h, 0, 1});
  out.push_back({1, 0, 0, L});
  return out;
}

CorrespondenceTable correspondence_constants(u64 l) {
  require_l(l);
  CorrespondenceTable t;
  t.l = l;
  for (u64 a = 1; a * a < l; a += 2) {
    const u64 rest = l - a * a;
    const u64 b = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) {
      t.a = a;
      t.b = b;
      break;
    }
  }
  if (t.b == 0) throw InternalError("correspondence_constants: no a^2 + b^2 = l");
  t.e = ff::mul_mod(t.a % l, ff::inv_mod(t.b % l, l), l);
  return t;
}

CorrespondenceTable generator_matrix_correspondence(u64 l, u64 eps) {
  CorrespondenceTable t = correspondence_constants(l);
  eps %= l;
  if (eps != t.e && eps != l - t.e) {
    throw ParameterError("correspondence: eps must be e = " + std::to_string(t.e) + " or l - e = " +
                         std::to_string(l - t.e) + " mod l");
  }
  t.eps = eps;
  const auto r = [l](i64 v) { return ff::reduce(v, l); };
  std::vector<bool> filled(l + 1, false);
  t.alpha.assign(l + 1, Quaternion{});
  for (const auto& q : four_square_solutions(l)) {
    const u64 den = ff::sub_mod(r(q.x0), ff::mul_mod(r(q.x1), eps, l), l);
    u64 h = l;
    if (den != 0) {
      const u64 num = ff::add_mod(r(q.x2), ff::mul_mod(r(q.x3), eps, l), l);
      h = ff::mul_mod(num, ff::inv_mod(den, l), l);
    }
    if (filled[h]) throw InternalError("correspondence: two solutions share h = " + std::to_string(h));
    filled[h] = true;
    t.alpha[h] = q;
  }
  return t;
}

bool is_l_integral(const Quaternion& alpha, const IntMatrix& m, u64 l, u64 eps) {
  using i128 = __int128;
  const i64 L = static_cast<i64>(l);
  const i128 L2 = static_cast<i128>(L) * L;
  // Hensel step: E^2 = -1 mod l^2.
  const i64 e0 = static_cast<i64>(eps % l);
  if ((static_cast<i128>(e0) * e0 + 1) % L != 0) {
    throw ParameterError("is_l_integral: eps is not a square root of -1 mod l");
  }
  const i128 inv2e = ff::inv_mod(static_cast<u64>(2 * e0 % L), l);  // inverse mod l suffices for one step
  i128 E = (e0 - (static_cast<i128>(e0) * e0 + 1) * inv2e) % L2;
  if (E < 0) E += L2;
  // l * sigma(alpha)^-1 is the adjugate of sigma(alpha)
  const i128 s00 = alpha.x0 - alpha.x1 * E, s01 = -alpha.x2 - alpha.x3 * E;
  const i128 s10 = alpha.x2 - alpha.x3 * E, s11 = alpha.x0 + alpha.x1 * E;
  const i128 prod[4] = {s00 * m.a + s01 * m.c, s00 * m.b + s01 * m.d, s10 * m.a + s11 * m.c,
                        s10 * m.b + s11 * m.d};
  // v / l in lowest terms keeps a factor l in the denominator unless l | v
  for (i128 v : prod) {
    if (v % L != 0) return false;
  }
  return true;
}

}  // namespace ramanujan::lps
