#include "ramanujan/pizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ramanujan::pizer {

namespace {

void require_prime(u64 p, const char* what) {
  if (!ff::is_prime(p)) throw ParameterError(std::string(what) + ": " + std::to_string(p) + " is not prime");
}

i64 mod4(i64 v) { return ((v % 4) + 4) % 4; }

i64 isqrt_exact(i64 v) {
  const i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(v))));
  if (r * r != v) throw InternalError("discriminant_rows: " + std::to_string(v) + " is not a square");
  return r;
}

// Primes of the squarefree part of n, ascending.
std::vector<u64> squarefree_primes(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2 == 1) out.push_back(q);
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Discriminants in the order their conditions are imposed.
const std::vector<i64>& derivation_order() {
  static const std::vector<i64> order = {-20, -19, -11, -96, -51, -84, -91};
  return order;
}

i64 canonical_delta(i64 d) {
  if (d == -24 || d == -6) return -96;
  const auto& o = derivation_order();
  if (std::find(o.begin(), o.end(), d) == o.end()) {
    throw ParameterError("modular_conditions: unsupported discriminant " + std::to_string(d));
  }
  return d;
}

CongruenceCondition condition_for_prime(u64 q) {
  CongruenceCondition c;
  if (q == 2) {
    // (2/p) depends on p mod 8; read it off one prime in each odd class.
    c.modulus = 8;
    for (u64 cls = 1; cls < 8; cls += 2) {
      u64 sample = cls == 1 ? 17 : cls;
      while (!ff::is_prime(sample)) sample += 8;
      if (ff::legendre(2, sample) == 1) c.residues.insert(cls);
    }
    return c;
  }
  // With p = 1 mod 4, (q/p) = (p/q).
  c.modulus = q;
  for (u64 r = 1; r < q; ++r) {
    if (ff::legendre(static_cast<i64>(r), q) == 1) c.residues.insert(r);
  }
  return c;
}

}  // namespace

u64 eichler_class_number(u64 p) {
  require_prime(p, "eichler_class_number");
  if (p < 5) return 1;
  const i64 k4 = ff::legendre(-4, p), k3 = ff::legendre(-3, p);
  const i64 twelve_h = static_cast<i64>(p - 1) + 3 * (1 - k4) + 4 * (1 - k3);
  if (twelve_h % 12 != 0) throw InternalError("eichler_class_number: 12H not divisible by 12");
  return static_cast<u64>(twelve_h / 12);
}

u64 class_number_level_p2(u64 p) {
  require_prime(p, "class_number_level_p2");
  if (p == 2) throw ParameterError("class_number_level_p2: p = 2 is not covered");
  if (p == 3) return 2;
  return (p * p - 1) / 12;
}

GraphSize pizer_graph_size(u64 p, u64 l, Level level) {
  require_prime(p, "pizer_graph_size");
  if (p < 3 || (level == Level::p && p < 5)) throw ParameterError("pizer_graph_size: p too small");
  if (l == 0 || l % p == 0) throw ParameterError("pizer_graph_size: p must not divide l");
  if (level == Level::p) return {eichler_class_number(p), false};
  const u64 h = class_number_level_p2(p);
  if (ff::legendre(static_cast<i64>(l % p), p) == 1) {
    if (h % 2 != 0) throw InternalError("pizer_graph_size: odd class number at level p^2");
    return {h / 2, false};
  }
  return {h, true};
}

std::vector<DiscriminantRow> discriminant_rows(u64 m) {
  if (m != 5 && m != 25) throw ParameterError("discriminant_rows: m must be 5 or 25");
  const i64 M = static_cast<i64>(m);
  std::vector<DiscriminantRow> rows;
  for (i64 s = 0; s * s < 4 * M; ++s) {
    DiscriminantRow row;
    row.s = s;
    row.delta = s * s - 4 * M;
    i64 r = -1;
    for (u64 q : squarefree_primes(static_cast<u64>(-row.delta))) r *= static_cast<i64>(q);
    row.r = r;
    const i64 rm = mod4(r);
    row.t = isqrt_exact(rm == 3 ? row.delta / (4 * r) : row.delta / r);
    for (i64 f = 1; f <= row.t; ++f) {
      if (row.t % f != 0) continue;
      row.f.push_back(f);
      row.d.push_back(row.delta / (f * f));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CongruenceCondition modular_conditions(i64 d) {
  const i64 target = canonical_delta(d);
  // -1 and 3 are settled by p = 1 mod 12.
  std::vector<u64> imposed = {3};
  for (i64 delta : derivation_order()) {
    std::vector<u64> fresh;
    for (u64 q : squarefree_primes(static_cast<u64>(-delta))) {
      if (std::find(imposed.begin(), imposed.end(), q) == imposed.end()) fresh.push_back(q);
    }
    if (delta == target) {
      if (fresh.size() != 1) {
        throw InternalError("modular_conditions: " + std::to_string(d) + " leaves " + std::to_string(fresh.size()) +
                            " new prime factors");
      }
      return condition_for_prime(fresh[0]);
    }
    imposed.insert(imposed.end(), fresh.begin(), fresh.end());
  }
  throw InternalError("modular_conditions: discriminant missing from the derivation order");
}

std::vector<CongruenceCondition> admissibility_table() {
  const CongruenceCondition c8 = modular_conditions(-96);
  CongruenceCondition c24;
  c24.modulus = 24;
  for (u64 n = 0; n < 24; ++n) {
    if (n % 12 == 1 && c8.holds(n)) c24.residues.insert(n);
  }
  std::map<u64, CongruenceCondition> odd;
  for (i64 delta : derivation_order()) {
    if (delta == -96) continue;
    auto c = modular_conditions(delta);
    odd.emplace(c.modulus, std::move(c));
  }
  std::vector<CongruenceCondition> out = {c24};
  for (auto& [q, c] : odd) out.push_back(c);
  return out;
}

bool is_admissible_6regular(u64 p) {
  if (!ff::is_prime(p)) return false;
  static const std::vector<CongruenceCondition> table = admissibility_table();
  return std::all_of(table.begin(), table.end(), [p](const CongruenceCondition& c) { return c.holds(p); });
}

u64 admissible_class_count() {
  u64 n = 1;
  for (const auto& c : admissibility_table()) n *= c.residues.size();
  return n;
}

u64 admissible_modulus() {
  u64 n = 1;
  for (const auto& c : admissibility_table()) n *= c.modulus;
  return n;
}

ScanResult scan_primes(u64 count) {
  if (count == 0 || count > kScanCap) {
    throw ParameterError("scan_primes: count must be in 1.." + std::to_string(kScanCap));
  }
  // n (ln n + ln ln n) bounds the n-th prime for n >= 6.
  const double n = static_cast<double>(std::max<u64>(count, 6));
  const u64 bound = static_cast<u64>(n * (std::log(n) + std::log(std::log(n)))) + 1;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(bound))) + 1;

  std::vector<u64> base;
  {
    std::vector<bool> comp(root + 1, false);
    for (u64 i = 2; i <= root; ++i) {
      if (comp[i]) continue;
      base.push_back(i);
      for (u64 j = i * i; j <= root; j += i) comp[j] = true;
    }
  }

  ScanResult res;
  constexpr u64 kSegment = 1 << 18;
  std::vector<char> comp(kSegment);
  for (u64 lo = 2; lo <= bound && res.primes_scanned < count; lo += kSegment) {
    const u64 hi = std::min(lo + kSegment, bound + 1);
    std::fill(comp.begin(), comp.end(), 0);
    for (u64 q : base) {
      if (q * q >= hi) break;
      u64 start = std::max(q * q, (lo + q - 1) / q * q);
      for (u64 j = start; j < hi; j += q) comp[j - lo] = 1;
    }
    for (u64 v = lo; v < hi && res.primes_scanned < count; ++v) {
      if (comp[v - lo]) continue;
      ++res.primes_scanned;
      res.last_prime = v;
      if (is_admissible_6regular(v)) res.admissible.push_back(v);
    }
  }
  if (res.primes_scanned != count) throw InternalError("scan_primes: sieve bound too small");
  return res;
}

u64 o2p_class_number(u64 p) {
  require_prime(p, "o2p_class_number");
  if (p == 3) throw ParameterError("o2p_class_number: p = 3 is excluded");
  const u64 base = 4 * p * p * (p + 1);
  return p % 3 == 1 ? (base + 4) / 3 : base / 3;
}

}  // namespace ramanujan::pizer
