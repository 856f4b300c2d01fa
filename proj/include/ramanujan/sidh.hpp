#pragma once

// Toy SIDH exchange over F_{p^2} and key recovery from a path-finding
// oracle (meet in the middle on j-invariants).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ramanujan/ec.hpp"
#include "ramanujan/isogeny.hpp"

namespace ramanujan::sidh {

using ec::Curve;
using ec::Point;
using ff::Fp2;
using ff::i64;
using ff::u64;

inline constexpr u64 kPrimeCap = u64{1} << 31;

struct SidhParams {
  u64 la = 0;
  int n = 0;
  u64 lb = 0;
  int m = 0;
  u64 f = 1;
  int sign = -1;  // p = la^n lb^m f + sign
  u64 p = 0;
  Curve E;
  Point PA, QA, PB, QB;

  u64 order_a() const { return ec::ipow(la, n); }
  u64 order_b() const { return ec::ipow(lb, m); }
};

// Throws ParameterError when p is composite, above kPrimeCap, or when no
// model of the base curve has both torsion groups rational.
SidhParams setup(u64 la, int n, u64 lb, int m, u64 f, int sign);
SidhParams preset(const std::string& name);  // "p431"

enum class Side { A, B };

struct PublicKey {
  Curve curve;
  Point P, Q;  // images of the other side's basis
};

struct KeyPair {
  Side side = Side::A;
  u64 ms = 0, ns = 0;
  PublicKey pub;
};

// Secrets in [0, l^e)^2, not both divisible by l, by rejection.
std::pair<u64, u64> random_secret(const SidhParams& params, Side side, std::mt19937_64& rng);

// Throws ParameterError on out-of-range secrets or a kernel point of the
// wrong order.
KeyPair keygen(const SidhParams& params, Side side, u64 ms, u64 ns);

// j(E_other / <[m]P + [n]Q>) for the received images P, Q. Throws
// ProtocolError when the received data is off the curve or the points do not
// form a basis of the right torsion group.
Fp2 derive_shared(const SidhParams& params, const KeyPair& own, const PublicKey& other);

// Throws ProtocolError unless P, Q lie on the curve and form a basis of
// E[l^e].
void validate_public(const PublicKey& pub, u64 ell, int e);

// Non-backtracking chains of exactly `length` l-isogenies from `start` to a
// curve with j-invariant `end_j`. Half-depth trees from both ends are matched
// on j and the second half is then realized from the meeting curve by
// following the recorded j-sequence. Chains come in a deterministic order,
// one per composite kernel, at most `limit` of them. Throws ParameterError
// when length exceeds 2 log_l(p) or the trees would be too large.
std::vector<isogeny::IsogenyChain> pathfind_mitm_all(const Curve& start, const Fp2& end_j, u64 ell, int length,
                                                     std::size_t limit);
// First chain of pathfind_mitm_all, or nullopt if there is none.
std::optional<isogeny::IsogenyChain> pathfind_mitm(const Curve& start, const Fp2& end_j, u64 ell, int length);

inline constexpr int kAttackRetries = 32;

struct AttackResult {
  std::optional<Fp2> j;  // set only after the recovered secret reproduced the public key
  int attempts = 0;      // candidate paths tried
  std::string reason;    // why no j was recovered
};

// Recovers the shared j from public data: paths E -> E_target of the attacked
// side's length, the kernel of each, its coordinates in that side's basis, a
// check that keygen reproduces the public key, then derive_shared against
// the other side. `side` picks which party's isogeny is attacked.
AttackResult attack(const SidhParams& params, const PublicKey& pub_a, const PublicKey& pub_b, Side side = Side::A);

// Transcript JSON: {"params": {...}, "public_A": {"curve": {"a", "b"},
// "points": [P, Q]}, "public_B": {...}} with field elements as [c0, c1] and
// points as [x, y] or null for infinity.
std::string transcript_json(const SidhParams& params, const PublicKey& pub_a, const PublicKey& pub_b);
struct Transcript {
  SidhParams params;
  PublicKey pub_a, pub_b;
};
// Throws ParameterError on malformed JSON or parameters.
Transcript parse_transcript(const std::string& text);

}  // namespace ramanujan::sidh
