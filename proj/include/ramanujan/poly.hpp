#pragma once

// Dense univariate polynomials over F_{p^2}, lowest degree first. Only what
// root finding of low-degree polynomials needs.

#include <random>
#include <vector>

#include "ramanujan/ff.hpp"

namespace ramanujan::poly {

using ff::Fp2;
using ff::Fp2Params;
using ff::u64;
using Poly = std::vector<Fp2>;

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly mul(const Poly& f, const Poly& g);
Poly sub(const Poly& f, const Poly& g);
// Quotient and remainder; g must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly monic(const Poly& f);
Poly gcd(Poly f, Poly g);
// base^e mod m
Poly powmod(const Poly& base, u64 e, const Poly& m);
Fp2 eval(const Poly& f, const Fp2& x);

// Distinct roots in F_{p^2}, sorted. Deterministic splitting.
std::vector<Fp2> roots(const Poly& f);

}  // namespace ramanujan::poly
