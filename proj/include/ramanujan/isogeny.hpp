#pragma once

// Separable prime-degree isogenies via Velu, chains of them, and the
// counting identities for chains of l-isogenies.

#include <cstdint>
#include <vector>

#include "ramanujan/ec.hpp"

namespace ramanujan::isogeny {

using ec::Curve;
using ec::Point;
using ff::Fp2;
using ff::u64;

// phi : domain -> codomain with kernel <kernel>, followed by the isomorphism
// (x, y) -> (u^2 x, u^3 y) when post != 1.
class Isogeny {
 public:
  const Curve& domain() const { return domain_; }
  const Curve& codomain() const { return codomain_; }
  const Point& kernel() const { return kernel_; }
  u64 degree() const { return degree_; }

  Point operator()(const Point& P) const;
  // Same kernel, codomain moved by the isomorphism with parameter u.
  Isogeny then_scale(const Fp2& u) const;

 private:
  friend Isogeny velu(const Curve&, const Point&);
  struct Term {
    Fp2 xq, yq, gx, gy, v, u;
  };
  Curve domain_, codomain_;
  Point kernel_;
  u64 degree_ = 0;
  std::vector<Term> terms_;
  Fp2 post_;
  bool scaled_ = false;
};

// K must have prime order (checked by repeated addition, up to order 1000).
Isogeny velu(const Curve& c, const Point& K);

// Canonical label of the cyclic subgroup <K>: the smallest x over its
// nonzero points.
Fp2 subgroup_key(const Curve& c, const Point& K);

// One generator for each of the l+1 subgroups of order l, each the smallest
// nonzero point of its subgroup, sorted. Throws ParameterError when E[l] is
// not rational.
std::vector<Point> ell_kernel_generators(const Curve& c, u64 ell);

// The u with target = (x, y) -> (u^2 x, u^3 y) applied to source; needs
// source.x, source.y nonzero. Throws InternalError if the coefficients do not
// match.
Fp2 isomorphism_from_points(const Curve& from, const Point& source, const Curve& to,
                            const Point& target);

// The dual, a genuine isogeny codomain -> domain with dual o phi = [l].
Isogeny dual(const Isogeny& phi);

// True iff phi2 o phi1 kills the whole of domain(phi1)[l].
bool composes_to_multiplication(const Isogeny& phi1, const Isogeny& phi2);

struct IsogenyChain {
  u64 ell = 0;
  std::vector<Isogeny> steps;

  const Curve& start() const { return steps.front().domain(); }
  const Curve& end() const { return steps.back().codomain(); }
  Point operator()(Point P) const {
    for (const auto& s : steps) P = s(P);
    return P;
  }
  std::vector<Fp2> j_sequence() const;
};

bool has_backtracking(const IsogenyChain& chain);

// K of exact order l^m.
IsogenyChain decompose_prime_power(const Curve& c, const Point& K, u64 ell, int m);

// Generator of the kernel of the composite, for a chain without backtracking.
Point compose_chain_to_kernel(const IsogenyChain& chain);

struct SubgroupCounts {
  u64 total = 0;   // subgroups of order l^m in (Z/l^m)^2
  u64 cyclic = 0;  // cyclic ones
};
SubgroupCounts count_subgroups_formulas(u64 ell, int m);

struct ChainCounts {
  u64 without_backtracking = 0;
  u64 with_backtracking = 0;  // distinct composite kernels over all chains
  u64 leaves = 0;             // all (l+1)^m step sequences walked
};

// Exhaustive walk over every length-m chain from start. With backtracking
// allowed, chains are counted by their composite kernel. Refuses when
// (l+1) l^(m-1) exceeds one million.
ChainCounts enumerate_chains(const Curve& start, u64 ell, int m);
u64 enumerate_chains(const Curve& start, u64 ell, int m, bool allow_backtracking);

}  // namespace ramanujan::isogeny
