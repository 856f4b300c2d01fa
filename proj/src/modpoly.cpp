#include "ramanujan/modpoly.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ramanujan/poly.hpp"

namespace ramanujan::modpoly {

namespace detail {
extern const char* const kLevel2Text;
extern const char* const kLevel3Text;
}  // namespace detail

u64 reduce_decimal(const std::string& digits, u64 p) {
  u64 r = 0;
  for (char ch : digits) r = (r * 10 + static_cast<u64>(ch - '0')) % p;
  return r;
}

ModularPolynomial ModularPolynomial::parse(u64 ell, const std::string& text) {
  ModularPolynomial phi;
  phi.ell_ = ell;
  std::map<std::pair<int, int>, Term> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Term t;
    std::string c;
    if (!(ls >> t.i)) continue;  // blank or comment
    if (!(ls >> t.j >> c) || t.i < 0 || t.j < 0) {
      throw ConfigurationError("modular polynomial table, line " + std::to_string(lineno) +
                               ": expected \"i j c\"");
    }
    std::string extra;
    if (ls >> extra) {
      throw ConfigurationError("modular polynomial table, line " + std::to_string(lineno) +
                               ": trailing text");
    }
    if (c[0] == '-' || c[0] == '+') {
      t.negative = c[0] == '-';
      c.erase(0, 1);
    }
    if (c.empty() || !std::all_of(c.begin(), c.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw ConfigurationError("modular polynomial table, line " + std::to_string(lineno) +
                               ": bad coefficient");
    }
    t.digits = c;
    for (auto key : {std::pair{t.i, t.j}, std::pair{t.j, t.i}}) {
      if (seen.count(key) && key.first != key.second) {
        throw ConfigurationError("modular polynomial table: duplicate monomial");
      }
    }
    seen[{t.i, t.j}] = t;
    if (t.i != t.j) {
      Term s = t;
      std::swap(s.i, s.j);
      seen[{s.i, s.j}] = s;
    }
  }
  if (seen.empty()) throw ConfigurationError("modular polynomial table is empty");
  for (auto& [key, t] : seen) {
    phi.degree_ = std::max({phi.degree_, t.i, t.j});
    phi.terms_.push_back(t);
  }
  if (phi.degree_ != static_cast<int>(ell + 1)) {
    throw ConfigurationError("modular polynomial table has degree " + std::to_string(phi.degree_) +
                             ", expected l+1");
  }
  return phi;
}

ModularPolynomial ModularPolynomial::load_file(u64 ell, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open modular polynomial table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ell, ss.str());
}

const ModularPolynomial& ModularPolynomial::builtin(u64 ell) {
  static const ModularPolynomial phi2 = parse(2, detail::kLevel2Text);
  static const ModularPolynomial phi3 = parse(3, detail::kLevel3Text);
  if (ell == 2) return phi2;
  if (ell == 3) return phi3;
  throw ConfigurationError("no modular polynomial table for l = " + std::to_string(ell));
}

namespace {

Fp2 coefficient(const Term& t, const ff::Fp2Params& f) {
  u64 v = reduce_decimal(t.digits, f.p);
  if (t.negative) v = ff::sub_mod(0, v, f.p);
  return Fp2(f, v);
}

}  // namespace

std::vector<Fp2> ModularPolynomial::specialize(const Fp2& j) const {
  const auto& f = j.params();
  std::vector<Fp2> jpow(degree_ + 1, Fp2::one(f));
  for (int k = 1; k <= degree_; ++k) jpow[k] = jpow[k - 1] * j;
  std::vector<Fp2> out(degree_ + 1, Fp2::zero(f));
  for (const auto& t : terms_) out[t.j] += coefficient(t, f) * jpow[t.i];
  return out;
}

Fp2 ModularPolynomial::evaluate(const Fp2& x, const Fp2& y) const {
  return poly::eval(specialize(x), y);
}

NeighborRoots neighbor_roots(const ModularPolynomial& phi, const Fp2& j) {
  poly::Poly f = phi.specialize(j);
  poly::trim(f);
  NeighborRoots out;
  for (const Fp2& r : poly::roots(f)) {
    int mult = 0;
    poly::Poly lin{-r, Fp2::one(j.params())};
    for (;;) {
      auto [q, rem] = poly::divmod(f, lin);
      if (!rem.empty()) break;
      f = std::move(q);
      ++mult;
    }
    out.roots.emplace_back(r, mult);
  }
  out.all_rational = out.total() == static_cast<int>(phi.ell() + 1);
  return out;
}

}  // namespace ramanujan::modpoly
