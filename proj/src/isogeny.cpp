#include "ramanujan/isogeny.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace ramanujan::isogeny {

namespace {

std::mt19937_64 engine_for(const Curve& c, u64 salt) {
  std::seed_seq seq{c.a().c0(), c.a().c1(), c.b().c0(), c.b().c1(), c.p(), salt};
  return std::mt19937_64(seq);
}

// Random point S with [l]S affine and both coordinates nonzero.
std::pair<Point, Point> sample_probe(const Curve& c, u64 ell, std::mt19937_64& rng) {
  for (int tries = 0; tries < 500; ++tries) {
    Point S = c.random_point(rng);
    Point T = c.mul(S, ell);
    if (!T.inf && !T.x.is_zero() && !T.y.is_zero()) return {S, T};
  }
  throw InternalError("no usable probe point found");
}

}  // namespace

// ---------------------------------------------------------------- Velu

Isogeny velu(const Curve& c, const Point& K) {
  c.require(K);
  if (K.inf) throw ParameterError("velu: kernel generator is the point at infinity");
  std::vector<Point> multiples{K};
  while (!multiples.back().inf) {
    if (multiples.size() > 1000) throw ParameterError("velu: kernel order exceeds 1000");
    multiples.push_back(c.add(multiples.back(), K));
  }
  const u64 n = multiples.size();
  if (!ff::is_prime(n)) {
    throw ParameterError("velu: kernel order " + std::to_string(n) + " is not prime");
  }

  Isogeny phi;
  phi.domain_ = c;
  phi.kernel_ = K;
  phi.degree_ = n;
  phi.post_ = Fp2::one(c.field());
  const std::size_t reps = n == 2 ? 1 : (n - 1) / 2;
  Fp2 v = Fp2::zero(c.field());
  Fp2 w = Fp2::zero(c.field());
  for (std::size_t i = 0; i < reps; ++i) {
    const Point& Q = multiples[i];
    Isogeny::Term t;
    t.xq = Q.x;
    t.yq = Q.y;
    t.gx = Q.x.square().scale(3) + c.a();
    t.gy = Q.y.scale(2).operator-();
    t.v = n == 2 ? t.gx : t.gx.scale(2);
    t.u = t.gy.square();
    v += t.v;
    w += t.u + t.xq * t.v;
    phi.terms_.push_back(t);
  }
  phi.codomain_ = Curve(c.a() - v.scale(5), c.b() - w.scale(7));
  return phi;
}

Point Isogeny::operator()(const Point& P) const {
  domain_.require(P);
  if (P.inf) return P;
  Fp2 X = P.x;
  Fp2 Y = P.y;
  for (const auto& t : terms_) {
    if (P.x == t.xq) return Point::infinity();
    const Fp2 d = (P.x - t.xq).inv();
    const Fp2 d2 = d.square();
    const Fp2 d3 = d2 * d;
    X += t.v * d + t.u * d2;
    Y -= t.u * P.y.scale(2) * d3 + t.v * (P.y - t.yq) * d2 - t.gx * t.gy * d2;
  }
  Point R = Point::affine(X, Y);
  return scaled_ ? ec::scale_point(R, post_) : R;
}

Isogeny Isogeny::then_scale(const Fp2& u) const {
  Isogeny r = *this;
  r.post_ = post_ * u;
  r.scaled_ = !r.post_.is_one();
  r.codomain_ = codomain_.scaled(u);
  return r;
}

// ---------------------------------------------------------------- kernels

Fp2 subgroup_key(const Curve& c, const Point& K) {
  c.require(K);
  if (K.inf) throw ParameterError("subgroup_key: trivial subgroup");
  Fp2 best = K.x;
  Point M = c.add(K, K);
  for (int guard = 0; !M.inf; ++guard) {
    if (guard > 100000) throw ParameterError("subgroup_key: subgroup too large");
    if (M.x < best) best = M.x;
    M = c.add(M, K);
  }
  return best;
}

namespace {

Point smallest_in_subgroup(const Curve& c, const Point& K) {
  Point best = K;
  for (Point M = c.add(K, K); !M.inf; M = c.add(M, K)) {
    if (M < best) best = M;
  }
  return best;
}

}  // namespace

std::vector<Point> ell_kernel_generators(const Curve& c, u64 ell) {
  if (!ff::is_prime(ell)) throw ParameterError("ell_kernel_generators: l must be prime");
  auto [P, Q] = ec::torsion_basis(c, ell, 1);
  std::vector<Point> gens{smallest_in_subgroup(c, Q)};
  Point R = P;
  for (u64 i = 0; i < ell; ++i) {
    gens.push_back(smallest_in_subgroup(c, R));
    R = c.add(R, Q);
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

// ---------------------------------------------------------------- duals

Fp2 isomorphism_from_points(const Curve& from, const Point& source, const Curve& to,
                            const Point& target) {
  if (source.inf || target.inf || source.x.is_zero() || source.y.is_zero()) {
    throw InternalError("isomorphism_from_points: degenerate probe point");
  }
  const Fp2 u2 = target.x / source.x;
  const Fp2 u3 = target.y / source.y;
  if (u2.is_zero()) throw InternalError("isomorphism_from_points: degenerate target point");
  const Fp2 u = u3 / u2;
  if (!(u.square() == u2) || !(from.scaled(u) == to)) {
    throw InternalError("isomorphism_from_points: points do not correspond under an isomorphism");
  }
  return u;
}

Isogeny dual(const Isogeny& phi) {
  const Curve& E = phi.domain();
  const u64 ell = phi.degree();
  auto [P, Q] = ec::torsion_basis(E, ell, 1);
  Point G = phi(P);
  if (G.inf) G = phi(Q);
  Isogeny psi = velu(phi.codomain(), G);
  auto rng = engine_for(E, 0xd0a1);
  auto [S, T] = sample_probe(E, ell, rng);
  const Fp2 u = isomorphism_from_points(psi.codomain(), psi(phi(S)), E, T);
  return psi.then_scale(u);
}

bool composes_to_multiplication(const Isogeny& phi1, const Isogeny& phi2) {
  if (!(phi1.codomain() == phi2.domain())) {
    throw ParameterError("composes_to_multiplication: steps do not chain");
  }
  auto [P, Q] = ec::torsion_basis(phi1.domain(), phi1.degree(), 1);
  return phi2(phi1(P)).inf && phi2(phi1(Q)).inf;
}

// ---------------------------------------------------------------- chains

std::vector<Fp2> IsogenyChain::j_sequence() const {
  std::vector<Fp2> js;
  if (steps.empty()) return js;
  js.push_back(start().j_invariant());
  for (const auto& s : steps) js.push_back(s.codomain().j_invariant());
  return js;
}

bool has_backtracking(const IsogenyChain& chain) {
  for (std::size_t i = 0; i + 1 < chain.steps.size(); ++i) {
    if (composes_to_multiplication(chain.steps[i], chain.steps[i + 1])) return true;
  }
  return false;
}

IsogenyChain decompose_prime_power(const Curve& c, const Point& K, u64 ell, int m) {
  if (m < 1) throw ParameterError("decompose_prime_power: m must be positive");
  if (!ec::has_exact_order(c, K, ell, m)) {
    throw ParameterError("decompose_prime_power: kernel generator does not have order l^m");
  }
  IsogenyChain chain{ell, {}};
  Point P = K;
  Curve E = c;
  for (int i = 1; i <= m; ++i) {
    Isogeny phi = velu(E, E.mul(P, ec::ipow(ell, m - i)));
    P = phi(P);
    E = phi.codomain();
    chain.steps.push_back(std::move(phi));
  }
  return chain;
}

Point compose_chain_to_kernel(const IsogenyChain& chain) {
  if (chain.steps.empty()) throw ParameterError("compose_chain_to_kernel: empty chain");
  if (has_backtracking(chain)) {
    throw ParameterError("compose_chain_to_kernel: chain has backtracking");
  }
  const u64 ell = chain.ell;
  const int m = static_cast<int>(chain.steps.size());
  Point T = chain.steps.back().kernel();
  // T generates ker(phi_m) on E_{m-1}; pull back one step at a time through
  // phi_i o dual(phi_i) = [l].
  for (int i = m - 2; i >= 0; --i) {
    const Curve& E = chain.steps[i].codomain();
    const int k = m - 1 - i;  // order of T is l^k
    auto [B1, B2] = ec::torsion_basis(E, ell, k + 1);
    auto [a, b] = ec::decompose_in_basis(E, T, E.mul(B1, ell), E.mul(B2, ell), ell, k);
    Point Q = E.add(E.mul(B1, a), E.mul(B2, b));
    T = dual(chain.steps[i])(Q);
  }
  if (!ec::has_exact_order(chain.start(), T, ell, m)) {
    throw InternalError("compose_chain_to_kernel: pulled-back point has the wrong order");
  }
  return T;
}

SubgroupCounts count_subgroups_formulas(u64 ell, int m) {
  if (m < 1 || !ff::is_prime(ell)) throw ParameterError("count_subgroups_formulas: bad (l, m)");
  return {(ec::ipow(ell, m + 1) - 1) / (ell - 1), ec::ipow(ell, m) + ec::ipow(ell, m - 1)};
}

namespace {

struct Reduced {
  Isogeny step;  // on the reduced curves, starting from the walk's origin
  Fp2 key;       // kernel subgroup on step.domain()
  Fp2 dual_key;  // subgroup step(E[l]) on step.codomain()
};

struct Walker {
  u64 ell;
  int m;
  Curve origin;
  ChainCounts counts;
  std::set<std::vector<u64>> kernels;
  std::mt19937_64 rng;

  const Curve& top(const std::vector<Reduced>& stack) const {
    return stack.empty() ? origin : stack.back().step.codomain();
  }

  // C: actual curve at this depth. dual_gen: generator of the backtracking
  // kernel on C (unset at the root). u: reduced top = C scaled by u.
  void walk(const Curve& C, int depth, const Point* dual_gen, bool clean,
            std::vector<Reduced>& stack, u64 b, const Fp2& u) {
    if (depth == m) {
      ++counts.leaves;
      if (clean) ++counts.without_backtracking;
      std::vector<u64> key{b};
      for (const auto& r : stack) {
        key.push_back(r.key.c0());
        key.push_back(r.key.c1());
      }
      kernels.insert(std::move(key));
      return;
    }
    const auto gens = ell_kernel_generators(C, ell);
    const Fp2 back_key = dual_gen ? subgroup_key(C, *dual_gen) : Fp2();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Point& K = gens[i];
      Isogeny psi = velu(C, K);
      const Curve& C2 = psi.codomain();
      const Point G = psi(gens[i == 0 ? 1 : 0]);  // generates psi(C[l])
      const bool backtrack = dual_gen && subgroup_key(C, K) == back_key;

      const Curve R = top(stack);
      const Point KR = ec::scale_point(K, u);
      const Fp2 keyR = subgroup_key(R, KR);
      if (!stack.empty() && keyR == stack.back().dual_key) {
        Reduced popped = stack.back();
        stack.pop_back();
        const Curve& Rprev = top(stack);
        auto [S, T] = sample_probe(Rprev, ell, rng);
        const Point X = psi(ec::scale_point(popped.step(S), u.inv()));
        const Fp2 u2 = isomorphism_from_points(C2, X, Rprev, T);
        walk(C2, depth + 1, &G, clean && !backtrack, stack, b + 1, u2);
        stack.push_back(std::move(popped));
      } else {
        Isogeny step = velu(R, KR);
        if (!(step.codomain() == C2.scaled(u))) {
          throw InternalError("enumerate_chains: Velu is not compatible with the isomorphism");
        }
        const Fp2 dkey = subgroup_key(step.codomain(), ec::scale_point(G, u));
        stack.push_back(Reduced{std::move(step), keyR, dkey});
        walk(C2, depth + 1, &G, clean && !backtrack, stack, b, u);
        stack.pop_back();
      }
    }
  }
};

}  // namespace

ChainCounts enumerate_chains(const Curve& start, u64 ell, int m) {
  if (m < 1 || !ff::is_prime(ell)) throw ParameterError("enumerate_chains: bad (l, m)");
  const long double leaves = static_cast<long double>(ell + 1) * std::pow((long double)ell, m - 1);
  if (leaves > 1e6L) {
    throw ParameterError("enumerate_chains: (l+1) l^(m-1) exceeds the 10^6 enumeration guard");
  }
  Walker w{ell, m, start, {}, {}, engine_for(start, 0xc4a1)};
  std::vector<Reduced> stack;
  w.walk(start, 0, nullptr, true, stack, 0, Fp2::one(start.field()));
  w.counts.with_backtracking = w.kernels.size();
  return w.counts;
}

u64 enumerate_chains(const Curve& start, u64 ell, int m, bool allow_backtracking) {
  ChainCounts c = enumerate_chains(start, ell, m);
  return allow_backtracking ? c.with_backtracking : c.without_backtracking;
}

}  // namespace ramanujan::isogeny
