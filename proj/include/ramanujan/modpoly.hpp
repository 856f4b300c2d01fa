#pragma once

// Classical modular polynomials Phi_l(X, Y) with integer coefficients, read
// from "i j c" text tables and reduced into F_{p^2} on demand.

#include <string>
#include <utility>
#include <vector>

#include "ramanujan/ff.hpp"

namespace ramanujan::modpoly {

using ff::Fp2;
using ff::u64;

struct Term {
  int i = 0;  // power of X
  int j = 0;  // power of Y
  bool negative = false;
  std::string digits;  // |c| in decimal
};

class ModularPolynomial {
 public:
  // Throws ConfigurationError on malformed text.
  static ModularPolynomial parse(u64 ell, const std::string& text);
  static ModularPolynomial load_file(u64 ell, const std::string& path);
  // Tables compiled into the library; l in {2, 3}.
  static const ModularPolynomial& builtin(u64 ell);

  u64 ell() const { return ell_; }
  const std::vector<Term>& terms() const { return terms_; }  // symmetrized
  // Coefficients of Phi(j, Y) in Y, lowest first.
  std::vector<Fp2> specialize(const Fp2& j) const;
  Fp2 evaluate(const Fp2& x, const Fp2& y) const;

 private:
  u64 ell_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

// Integer given by its decimal digits, reduced mod p.
u64 reduce_decimal(const std::string& digits, u64 p);

struct NeighborRoots {
  std::vector<std::pair<Fp2, int>> roots;  // sorted by root
  // False when fewer than l+1 roots (with multiplicity) lie in F_{p^2}, as
  // for ordinary j.
  bool all_rational = true;
  int total() const {
    int n = 0;
    for (const auto& r : roots) n += r.second;
    return n;
  }
};

NeighborRoots neighbor_roots(const ModularPolynomial& phi, const Fp2& j);

}  // namespace ramanujan::modpoly
