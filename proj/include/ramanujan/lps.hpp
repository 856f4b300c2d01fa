#pragma once

// LPS graphs: Cayley graphs of PSL_2(F_p) on the l+1 quaternions of norm l,
// together with the local picture at l (neighbours of the standard lattice
// in the Bruhat-Tits tree and their pairing with the generators).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramanujan/ff.hpp"
#include "ramanujan/graph.hpp"

namespace ramanujan::lps {

using ff::i64;
using ff::u64;

struct Quaternion {
  i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;

  i64 norm() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  Quaternion conj() const { return {x0, -x1, -x2, -x3}; }
  auto operator<=>(const Quaternion&) const = default;
  // "1-2i+2k" style
  std::string str() const;
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);

// The l+1 solutions of l = x0^2 + x1^2 + x2^2 + x3^2 with x0 odd and
// positive and x1, x2, x3 even, ascending. Needs l prime, l = 1 mod 4.
std::vector<Quaternion> four_square_solutions(u64 l);

// A class in PGL_2(F_p), stored with its first nonzero entry (row-major)
// scaled to 1.
class ProjMatrix {
 public:
  ProjMatrix(u64 a, u64 b, u64 c, u64 d, u64 p);
  static ProjMatrix identity(u64 p) { return ProjMatrix(1, 0, 0, 1, p); }

  const std::array<u64, 4>& entries() const { return m_; }
  u64 modulus() const { return p_; }
  u64 det() const;
  // Determinant class is a square, i.e. the class lies in PSL_2(F_p).
  bool in_psl2() const;
  ProjMatrix operator*(const ProjMatrix& o) const;
  ProjMatrix inverse() const;
  u64 key() const;  // injective for a fixed p
  std::string label() const;

  bool operator==(const ProjMatrix& o) const { return m_ == o.m_ && p_ == o.p_; }
  bool operator<(const ProjMatrix& o) const { return m_ < o.m_; }

 private:
  std::array<u64, 4> m_{};
  u64 p_ = 0;
};

// The square root of -1 mod p with the smaller representative.
u64 epsilon(u64 p);

// [[x0 + x1 e, x2 + x3 e], [-x2 + x3 e, x0 - x1 e]] modulo p.
ProjMatrix quaternion_image(const Quaternion& q, u64 eps, u64 p);

// Images of four_square_solutions(l) in the order of the solutions. Throws
// ParameterError unless l != p are primes with l, p = 1 mod 4 and (l/p) = 1.
std::vector<ProjMatrix> cayley_generators(u64 l, u64 p);

// BFS closure of the identity under right multiplication by the generators.
// Throws InternalError if the closure is not all of PSL_2(F_p).
graph::LabeledMultigraph build_lps_graph(u64 l, u64 p);

struct IntMatrix {
  i64 a = 0, b = 0, c = 0, d = 0;
  i64 det() const { return a * d - b * c; }
  bool operator==(const IntMatrix&) const = default;
};

// M_h = [[l, h], [0, 1]] for h = 0..l-1, then M_l = [[1, 0], [0, l]].
std::vector<IntMatrix> tree_neighbor_matrices(u64 l);

struct CorrespondenceTable {
  u64 l = 0;
  u64 a = 0, b = 0;  // a^2 + b^2 = l, a odd
  u64 e = 0;         // e b = a mod l
  u64 eps = 0;       // residue of epsilon mod l on this branch: e or l - e
  std::vector<Quaternion> alpha;  // alpha[h], h = 0..l
};

// a, b and e for l.
CorrespondenceTable correspondence_constants(u64 l);

// Pairs each solution alpha with h = l when x0 - x1 eps = 0 mod l, and with
// h = (x2 + x3 eps)/(x0 - x1 eps) mod l otherwise. `eps` must be e or l - e.
CorrespondenceTable generator_matrix_correspondence(u64 l, u64 eps);

// Independent check: sigma(alpha)^-1 M_h has l-integral entries, evaluated
// over the rationals with eps lifted to a square root of -1 mod l^2.
bool is_l_integral(const Quaternion& alpha, const IntMatrix& m, u64 l, u64 eps);

}  // namespace ramanujan::lps
