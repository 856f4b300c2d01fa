#include "ramanujan/ssig.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ramanujan/isogeny.hpp"
#include "ramanujan/modpoly.hpp"

namespace ramanujan::ssig {

void validate(const SsigParams& params) {
  if (params.p < 5 || params.p >= ff::kMaxModulus || !ff::is_prime(params.p)) {
    throw ParameterError("ssig: p must be a prime with 5 <= p < 2^31");
  }
  if (params.ell < 2 || !ff::is_prime(params.ell) || params.ell == params.p) {
    throw ParameterError("ssig: l must be a prime different from p");
  }
  if (params.method == Method::modular_polynomial && params.ell != 2 && params.ell != 3) {
    throw ParameterError("ssig: modular polynomial tables exist only for l = 2 and l = 3");
  }
  if (!params.directed && params.p % 12 != 1) {
    throw ParameterError("ssig: undirected graphs need p = 1 mod 12; use directed mode");
  }
}

std::vector<Fp2> neighbors_velu(const Fp2& j, u64 ell) {
  const ec::Curve E = ec::rational_torsion_model(ec::Curve::from_j(j), ell);
  std::vector<Fp2> out;
  for (const auto& K : isogeny::ell_kernel_generators(E, ell)) {
    out.push_back(isogeny::velu(E, K).codomain().j_invariant());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModpolyNeighbors neighbors_modpoly(const Fp2& j, u64 ell) {
  const auto nr = modpoly::neighbor_roots(modpoly::ModularPolynomial::builtin(ell), j);
  ModpolyNeighbors out;
  for (const auto& [root, mult] : nr.roots) out.roots.insert(out.roots.end(), mult, root);
  out.complete = nr.all_rational;
  return out;
}

std::vector<Fp2> neighbors(const SsigParams& params, const Fp2& j) {
  if (params.method == Method::velu) return neighbors_velu(j, params.ell);
  ModpolyNeighbors nb = neighbors_modpoly(j, params.ell);
  if (!nb.complete) {
    throw InternalError("ssig: modular polynomial does not split at supersingular j = " + j.label());
  }
  return nb.roots;
}

graph::LabeledMultigraph build(const SsigParams& params) {
  validate(params);
  const Fp2 start = ec::find_supersingular_curve(params.p).j_invariant();

  // BFS over j-invariants; arcs[j] is the sorted out-neighbour multiset.
  std::vector<Fp2> order{start};
  std::map<Fp2, std::vector<Fp2>> arcs;
  std::set<Fp2> seen{start};
  std::deque<Fp2> queue{start};
  while (!queue.empty()) {
    const Fp2 j = queue.front();
    queue.pop_front();
    std::vector<Fp2> nb = neighbors(params, j);
    if (nb.size() != params.ell + 1) {
      throw InternalError("ssig: vertex " + j.label() + " has out-degree " + std::to_string(nb.size()));
    }
    for (const Fp2& k : nb) {
      if (seen.insert(k).second) {
        order.push_back(k);
        queue.push_back(k);
      }
    }
    arcs[j] = std::move(nb);
  }

  graph::LabeledMultigraph g(params.directed);
  for (const Fp2& j : order) g.add_vertex(j.label());
  std::map<std::pair<std::size_t, std::size_t>, int> count;
  for (const Fp2& j : order) {
    const std::size_t u = *g.index_of(j.label());
    for (const Fp2& k : arcs[j]) ++count[{u, *g.index_of(k.label())}];
  }
  for (const auto& [uv, c] : count) {
    const auto [u, v] = uv;
    if (params.directed || u == v) {
      for (int i = 0; i < c; ++i) g.add_edge(u, v);
      continue;
    }
    auto back = count.find({v, u});
    if (back == count.end() || back->second != c) {
      throw InternalError("ssig: arcs " + g.labels()[u] + " -> " + g.labels()[v] +
                          " have no matching dual arcs");
    }
    if (u < v) {
      for (int i = 0; i < c; ++i) g.add_edge(u, v);
    }
  }
  return g;
}

std::vector<Fp2> cgl_path(const SsigParams& params, const Fp2& start, const Fp2& predecessor,
                          const std::string& bits) {
  if (params.ell != 2) throw ParameterError("cgl_walk: the walk is defined on the 2-isogeny graph");
  for (char b : bits) {
    if (b != '0' && b != '1') throw ParameterError("cgl_walk: input must be a string of 0 and 1");
  }
  std::vector<Fp2> path{start};
  Fp2 prev = predecessor, cur = start;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    std::vector<Fp2> nb = neighbors(params, cur);
    auto back = std::find(nb.begin(), nb.end(), prev);
    if (back == nb.end()) {
      throw ParameterError("cgl_walk: " + prev.label() + " is not adjacent to " + cur.label());
    }
    nb.erase(back);
    const Fp2 next = nb[bits[i] == '1'];
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  if (bits.empty()) {
    // The start edge must still be a real edge.
    std::vector<Fp2> nb = neighbors(params, start);
    if (std::find(nb.begin(), nb.end(), predecessor) == nb.end()) {
      throw ParameterError("cgl_walk: " + predecessor.label() + " is not adjacent to " + start.label());
    }
  }
  return path;
}

Fp2 cgl_walk(const SsigParams& params, const Fp2& start, const Fp2& predecessor, const std::string& bits) {
  return cgl_path(params, start, predecessor, bits).back();
}

u64 simplicity_congruence(u64 ell) {
  if (ell == 2) return 420;
  if (ell == 3) return 9240;
  throw ParameterError("simplicity_congruence: only l = 2 and l = 3 are covered");
}

}  // namespace ramanujan::ssig
