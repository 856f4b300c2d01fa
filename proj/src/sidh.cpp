#include "ramanujan/sidh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

namespace ramanujan::sidh {

using isogeny::Isogeny;
using isogeny::IsogenyChain;
using nlohmann::json;

namespace {

struct SideData {
  u64 ell;
  int e;
  const Point* P;
  const Point* Q;
};

SideData side_data(const SidhParams& params, Side side) {
  if (side == Side::A) return {params.la, params.n, &params.PA, &params.QA};
  return {params.lb, params.m, &params.PB, &params.QB};
}

Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

// ------------------------------------------------------------ path trees

// One partial walk: the chain so far and, after the first step, a generator
// of the kernel that would undo the last step.
struct Walk {
  IsogenyChain chain;
  Curve cur;
  std::optional<Point> back;
};

Walk extend(const Walk& w, const Point& K, const std::vector<Point>& gens, std::size_t idx) {
  Isogeny psi = isogeny::velu(w.cur, K);
  Walk next{w.chain, psi.codomain(), psi(gens[idx == 0 ? 1 : 0])};
  next.chain.steps.push_back(std::move(psi));
  return next;
}

bool backtracks(const Walk& w, const Point& K) {
  return w.back && isogeny::subgroup_key(w.cur, K) == isogeny::subgroup_key(w.cur, *w.back);
}

// All non-backtracking walks of the given depth, in generator order.
void expand(const Walk& w, u64 ell, int depth, std::vector<Walk>& out) {
  if (depth == 0) {
    out.push_back(w);
    return;
  }
  const auto gens = isogeny::ell_kernel_generators(w.cur, ell);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (backtracks(w, gens[i])) continue;
    expand(extend(w, gens[i], gens, i), ell, depth - 1, out);
  }
}

// Follows js[k], js[k+1], ... from w, trying every kernel that lands on the
// next j.
void realize(const Walk& w, const std::vector<Fp2>& js, std::size_t k, u64 ell, std::vector<IsogenyChain>& out,
             std::size_t limit) {
  if (out.size() >= limit) return;
  if (k + 1 == js.size()) {
    out.push_back(w.chain);
    return;
  }
  const auto gens = isogeny::ell_kernel_generators(w.cur, ell);
  for (std::size_t i = 0; i < gens.size() && out.size() < limit; ++i) {
    if (backtracks(w, gens[i])) continue;
    Walk next = extend(w, gens[i], gens, i);
    if (next.cur.j_invariant() == js[k + 1]) realize(next, js, k + 1, ell, out, limit);
  }
}

// Smallest generator of the cyclic group <K> of order l^e. The smallest x
// over all points would merge subgroups sharing their l^(e-1)-torsion.
Point cyclic_key(const Curve& C, const Point& K, u64 ell) {
  Point best = K, R = K;
  for (u64 k = 2;; ++k) {
    R = C.add(R, K);
    if (R.inf) break;
    if (k % ell != 0 && R < best) best = R;
  }
  return best;
}

int max_length(u64 p, u64 ell) {
  // largest L with l^L <= p^2
  const unsigned __int128 p2 = static_cast<unsigned __int128>(p) * p;
  unsigned __int128 v = 1;
  int L = 0;
  while (v * ell <= p2) {
    v *= ell;
    ++L;
  }
  return L;
}

// ------------------------------------------------------------ json

json fp2_json(const Fp2& v) { return json::array({v.c0(), v.c1()}); }

json point_json(const Point& P) {
  if (P.inf) return nullptr;
  return json::array({fp2_json(P.x), fp2_json(P.y)});
}

json public_json(const PublicKey& k) {
  return {{"curve", {{"a", fp2_json(k.curve.a())}, {"b", fp2_json(k.curve.b())}}},
          {"points", json::array({point_json(k.P), point_json(k.Q)})}};
}

Fp2 parse_fp2(const json& j, const ff::Fp2Params& f) {
  if (!j.is_array() || j.size() != 2) throw ParameterError("transcript: field element must be [c0, c1]");
  const u64 c0 = j.at(0).get<u64>(), c1 = j.at(1).get<u64>();
  if (c0 >= f.p || c1 >= f.p) throw ParameterError("transcript: coordinate out of range");
  return Fp2(f, c0, c1);
}

Point parse_point(const json& j, const ff::Fp2Params& f) {
  if (j.is_null()) return Point::infinity();
  if (!j.is_array() || j.size() != 2) throw ParameterError("transcript: point must be [x, y] or null");
  return Point::affine(parse_fp2(j.at(0), f), parse_fp2(j.at(1), f));
}

PublicKey parse_public(const json& j, const ff::Fp2Params& f) {
  PublicKey k;
  k.curve = Curve(parse_fp2(j.at("curve").at("a"), f), parse_fp2(j.at("curve").at("b"), f));
  const json& pts = j.at("points");
  if (!pts.is_array() || pts.size() != 2) throw ParameterError("transcript: points must hold two entries");
  k.P = parse_point(pts.at(0), f);
  k.Q = parse_point(pts.at(1), f);
  return k;
}

}  // namespace

SidhParams setup(u64 la, int n, u64 lb, int m, u64 f, int sign) {
  if (!ff::is_prime(la) || !ff::is_prime(lb) || la == lb) {
    throw ParameterError("sidh setup: l_A and l_B must be distinct primes");
  }
  if (n < 1 || m < 1 || f < 1 || (sign != 1 && sign != -1)) {
    throw ParameterError("sidh setup: need n, m, f >= 1 and sign = +1 or -1");
  }
  long double size = static_cast<long double>(f);
  for (int i = 0; i < n; ++i) size *= la;
  for (int i = 0; i < m; ++i) size *= lb;
  if (size > static_cast<long double>(kPrimeCap)) throw ParameterError("sidh setup: p exceeds 2^31");

  SidhParams s;
  s.la = la;
  s.n = n;
  s.lb = lb;
  s.m = m;
  s.f = f;
  s.sign = sign;
  const u64 need = s.order_a() * s.order_b();
  s.p = sign > 0 ? need * f + 1 : need * f - 1;
  if (s.p > kPrimeCap || s.p < 5 || !ff::is_prime(s.p)) {
    throw ParameterError("sidh setup: p = " + std::to_string(s.p) + " is not a usable prime");
  }
  Curve c = ec::find_supersingular_curve(s.p);
  if (ec::sidh_group_exponent(c) % need != 0) c = c.twist(ec::nonsquare(c.field()));
  if (ec::sidh_group_exponent(c) % need != 0) {
    throw ParameterError("sidh setup: no model of the base curve has both torsion groups rational");
  }
  s.E = c;
  std::tie(s.PA, s.QA) = ec::torsion_basis(c, la, n);
  std::tie(s.PB, s.QB) = ec::torsion_basis(c, lb, m);
  return s;
}

SidhParams preset(const std::string& name) {
  if (name == "p431") return setup(2, 4, 3, 3, 1, -1);
  throw ParameterError("sidh: unknown preset '" + name + "'");
}

std::pair<u64, u64> random_secret(const SidhParams& params, Side side, std::mt19937_64& rng) {
  const SideData d = side_data(params, side);
  std::uniform_int_distribution<u64> dist(0, ec::ipow(d.ell, d.e) - 1);
  for (;;) {
    const u64 a = dist(rng), b = dist(rng);
    if (a % d.ell != 0 || b % d.ell != 0) return {a, b};
  }
}

KeyPair keygen(const SidhParams& params, Side side, u64 ms, u64 ns) {
  const SideData d = side_data(params, side);
  const u64 bound = ec::ipow(d.ell, d.e);
  if (ms >= bound || ns >= bound) throw ParameterError("keygen: secrets must lie in [0, l^e)");
  if (ms % d.ell == 0 && ns % d.ell == 0) throw ParameterError("keygen: secrets are both divisible by l");
  const Curve& E = params.E;
  const Point K = E.add(E.mul(*d.P, ms), E.mul(*d.Q, ns));
  const IsogenyChain chain = isogeny::decompose_prime_power(E, K, d.ell, d.e);
  const SideData o = side_data(params, other(side));
  return {side, ms, ns, {chain.end(), chain(*o.P), chain(*o.Q)}};
}

void validate_public(const PublicKey& pub, u64 ell, int e) {
  const Curve& C = pub.curve;
  if (!C.contains(pub.P) || !C.contains(pub.Q)) throw ProtocolError("public key: point not on the curve");
  if (!ec::has_exact_order(C, pub.P, ell, e) || !ec::has_exact_order(C, pub.Q, ell, e)) {
    throw ProtocolError("public key: point of the wrong order");
  }
  const u64 top = ec::ipow(ell, e - 1);
  const Point P1 = C.mul(pub.P, top), Q1 = C.mul(pub.Q, top);
  if (isogeny::subgroup_key(C, P1) == isogeny::subgroup_key(C, Q1)) {
    throw ProtocolError("public key: points do not form a basis");
  }
}

Fp2 derive_shared(const SidhParams& params, const KeyPair& own, const PublicKey& other_pub) {
  const SideData d = side_data(params, own.side);
  validate_public(other_pub, d.ell, d.e);
  const Curve& C = other_pub.curve;
  const Point K = C.add(C.mul(other_pub.P, own.ms), C.mul(other_pub.Q, own.ns));
  if (!ec::has_exact_order(C, K, d.ell, d.e)) throw ProtocolError("derive_shared: kernel point of the wrong order");
  return isogeny::decompose_prime_power(C, K, d.ell, d.e).end().j_invariant();
}

std::vector<IsogenyChain> pathfind_mitm_all(const Curve& start, const Fp2& end_j, u64 ell, int length,
                                            std::size_t limit) {
  if (length < 0 || length > max_length(start.p(), ell)) {
    throw ParameterError("pathfind_mitm: length must be in [0, 2 log_l p]");
  }
  std::vector<IsogenyChain> out;
  if (limit == 0) return out;
  if (length == 0) {
    if (start.j_invariant() == end_j) out.push_back(IsogenyChain{ell, {}});
    return out;
  }
  const int a = (length + 1) / 2, b = length - a;
  const long double leaves = static_cast<long double>(ell + 1) * std::pow(static_cast<long double>(ell), a - 1);
  if (leaves > 1e6L) throw ParameterError("pathfind_mitm: half-depth tree exceeds 10^6 leaves");

  std::vector<Walk> forward;
  expand(Walk{IsogenyChain{ell, {}}, start, std::nullopt}, ell, a, forward);

  // j-sequences from a meeting j to end_j
  std::map<Fp2, std::set<std::vector<Fp2>>> meet;
  if (b == 0) {
    meet[end_j].insert({end_j});
  } else {
    std::optional<Curve> end_model;
    try {
      end_model = ec::rational_torsion_model(Curve::from_j(end_j), ell);
    } catch (const ParameterError&) {
      // no model with rational l-torsion: not in the isogeny class of start
      return out;
    }
    std::vector<Walk> backward;
    expand(Walk{IsogenyChain{ell, {}}, *end_model, std::nullopt}, ell, b, backward);
    for (const auto& w : backward) {
      std::vector<Fp2> js = w.chain.j_sequence();
      std::reverse(js.begin(), js.end());
      meet[js.front()].insert(js);
    }
  }

  std::set<Point> kernels;
  for (const auto& w : forward) {
    auto it = meet.find(w.cur.j_invariant());
    if (it == meet.end()) continue;
    for (const auto& js : it->second) {
      std::vector<IsogenyChain> found;
      realize(w, js, 0, ell, found, limit);
      for (auto& chain : found) {
        const Point key = cyclic_key(start, isogeny::compose_chain_to_kernel(chain), ell);
        if (kernels.insert(key).second) out.push_back(std::move(chain));
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

std::optional<IsogenyChain> pathfind_mitm(const Curve& start, const Fp2& end_j, u64 ell, int length) {
  auto all = pathfind_mitm_all(start, end_j, ell, length, 1);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

AttackResult attack(const SidhParams& params, const PublicKey& pub_a, const PublicKey& pub_b, Side side) {
  AttackResult res;
  try {
    validate_public(pub_a, params.lb, params.m);
    validate_public(pub_b, params.la, params.n);
  } catch (const ProtocolError& e) {
    res.reason = e.what();
    return res;
  }
  const SideData d = side_data(params, side);
  const PublicKey& target = side == Side::A ? pub_a : pub_b;
  const PublicKey& other_pub = side == Side::A ? pub_b : pub_a;

  const auto paths = pathfind_mitm_all(params.E, target.curve.j_invariant(), d.ell, d.e, kAttackRetries);
  if (paths.empty()) {
    res.reason = "no path of the required length";
    return res;
  }
  for (const auto& chain : paths) {
    ++res.attempts;
    const Point K = isogeny::compose_chain_to_kernel(chain);
    const auto [ms, ns] = ec::decompose_in_basis(params.E, K, *d.P, *d.Q, d.ell, d.e);
    const KeyPair guess = keygen(params, side, ms, ns);
    if (!(guess.pub.curve == target.curve) || !(guess.pub.P == target.P) || !(guess.pub.Q == target.Q)) continue;
    res.j = derive_shared(params, guess, other_pub);
    return res;
  }
  res.reason = "retries exhausted";
  return res;
}

std::string transcript_json(const SidhParams& params, const PublicKey& pub_a, const PublicKey& pub_b) {
  json j;
  j["params"] = {{"la", params.la}, {"n", params.n}, {"lb", params.lb}, {"m", params.m},
                 {"f", params.f},   {"sign", params.sign}, {"p", params.p}};
  j["public_A"] = public_json(pub_a);
  j["public_B"] = public_json(pub_b);
  return j.dump(2) + "\n";
}

Transcript parse_transcript(const std::string& text) {
  try {
    const json j = json::parse(text);
    const json& p = j.at("params");
    Transcript t;
    t.params = setup(p.at("la").get<u64>(), p.at("n").get<int>(), p.at("lb").get<u64>(), p.at("m").get<int>(),
                     p.at("f").get<u64>(), p.at("sign").get<int>());
    if (p.contains("p") && p.at("p").get<u64>() != t.params.p) {
      throw ParameterError("transcript: p does not match the parameters");
    }
    const ff::Fp2Params& f = t.params.E.field();
    t.pub_a = parse_public(j.at("public_A"), f);
    t.pub_b = parse_public(j.at("public_B"), f);
    return t;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("transcript: ") + e.what());
  }
}

}  // namespace ramanujan::sidh
