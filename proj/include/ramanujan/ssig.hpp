#pragma once

// Supersingular l-isogeny graphs over F_{p^2}.
//
// Vertices are supersingular j-invariants labelled "c0,c1". Edges are
// kernel subgroups of order l, so every vertex has l+1 outgoing edges
// counted with multiplicity.

#include <string>
#include <vector>

#include "ramanujan/ec.hpp"
#include "ramanujan/graph.hpp"

namespace ramanujan::ssig {

using ff::Fp2;
using ff::Fp2Params;
using ff::u64;

enum class Method { velu, modular_polynomial };

struct SsigParams {
  u64 p = 0;
  u64 ell = 2;
  Method method = Method::velu;
  bool directed = false;
};

// Throws ParameterError for bad primes, l == p, an l without a modular
// polynomial table under Method::modular_polynomial, or an undirected
// request with p != 1 mod 12.
void validate(const SsigParams& params);

// Codomain j-invariants of the l+1 l-isogenies out of j, ascending, with
// multiplicity. Needs E[l] rational over F_{p^2} on some model of j.
std::vector<Fp2> neighbors_velu(const Fp2& j, u64 ell);

struct ModpolyNeighbors {
  std::vector<Fp2> roots;  // ascending, with multiplicity; only roots in F_{p^2}
  bool complete = false;   // false when Phi_l(j, Y) does not split over F_{p^2}
};
ModpolyNeighbors neighbors_modpoly(const Fp2& j, u64 ell);

std::vector<Fp2> neighbors(const SsigParams& params, const Fp2& j);

// BFS from the curve of ec::find_supersingular_curve. Directed mode keeps
// one arc per kernel. Undirected mode merges each arc with its reverse; loops
// are kept one per kernel so the adjacency diagonal is the loop count.
graph::LabeledMultigraph build(const SsigParams& params);

// Non-backtracking walk of the 3-regular 2-isogeny graph. `predecessor` is
// the vertex the walk is taken to have arrived from; one copy of the edge
// back to it is excluded at each step, the two remaining edges are ordered by
// codomain coordinates (c0, then c1) and the bit picks one ('0' the smaller).
// Returns every vertex visited, starting with `start`.
std::vector<Fp2> cgl_path(const SsigParams& params, const Fp2& start, const Fp2& predecessor,
                          const std::string& bits);
Fp2 cgl_walk(const SsigParams& params, const Fp2& start, const Fp2& predecessor,
             const std::string& bits);

// Modulus M such that p = 1 mod M rules out multiple edges in the l-graph.
u64 simplicity_congruence(u64 ell);

}  // namespace ramanujan::ssig
