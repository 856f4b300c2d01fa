#pragma once

// Class numbers and the congruence conditions under which the level-p
// Brandt matrix B(p; 5) is a 6-regular simple Ramanujan graph.

#include <cstdint>
#include <set>
#include <vector>

#include "ramanujan/ff.hpp"

namespace ramanujan::pizer {

using ff::i64;
using ff::u64;

// H(p) = (p-1)/12 + (1 - (-4/p))/4 + (1 - (-3/p))/3 for primes p >= 5.
u64 eichler_class_number(u64 p);

// (p^2 - 1)/12 for p >= 5 and 2 for p = 3.
u64 class_number_level_p2(u64 p);

enum class Level { p, p_squared };
struct GraphSize {
  u64 size = 0;
  bool bipartite = false;
};
// Level p: H(p) vertices. Level p^2: H(p^2)/2 when (l/p) = 1, otherwise
// H(p^2) with a bipartite graph. Needs p > 3 prime and p not dividing l.
GraphSize pizer_graph_size(u64 p, u64 l, Level level);

struct DiscriminantRow {
  i64 s = 0;
  i64 delta = 0;  // s^2 - 4m
  i64 t = 0;
  i64 r = 0;
  std::vector<i64> f;  // positive divisors of t
  std::vector<i64> d;  // delta / f^2, same order as f
};

// Rows for s = 0, 1, ... while s^2 < 4m, m in {5, 25}. The square part is
// split off as delta = t^2 r when r = 1, 2 mod 4 and as t^2 4r when r = 3
// mod 4, r squarefree.
std::vector<DiscriminantRow> discriminant_rows(u64 m);

struct CongruenceCondition {
  u64 modulus = 1;
  std::set<u64> residues;
  bool holds(u64 p) const { return residues.count(p % modulus) > 0; }
  bool operator==(const CongruenceCondition&) const = default;
};

// The condition on p, given p = 1 mod 12 and the conditions of the earlier
// discriminants in the order -20, -19, -11, -96, -51, -84, -91, that is
// equivalent to (d/p) = 1. Accepts those values and d = -24, -6 (the other
// quotients of -96). Residue sets are found from the Legendre symbol, not
// tabulated.
CongruenceCondition modular_conditions(i64 d);

// p = 1 mod 24 and p a square modulo 5, 7, 11, 13, 17 and 19.
std::vector<CongruenceCondition> admissibility_table();
bool is_admissible_6regular(u64 p);
// Product of the residue counts of the table, and its combined modulus.
u64 admissible_class_count();
u64 admissible_modulus();

struct ScanResult {
  std::vector<u64> admissible;  // ascending
  u64 primes_scanned = 0;
  u64 last_prime = 0;
};
inline constexpr u64 kScanCap = 1000000;
// Segmented sieve over the first `count` primes (count <= kScanCap).
ScanResult scan_primes(u64 count);

// Class number of the order O(2p): (4p^2(p+1) + 4)/3 when p = 1 mod 3,
// else 4p^2(p+1)/3. Not defined for p = 3.
u64 o2p_class_number(u64 p);

}  // namespace ramanujan::pizer
