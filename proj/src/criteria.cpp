#include "ramanujan/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "ramanujan/isogeny.hpp"
#include "ramanujan/lps.hpp"
#include "ramanujan/pizer.hpp"
#include "ramanujan/sidh.hpp"
#include "ramanujan/ssig.hpp"

namespace ramanujan::criteria {

using ff::Fp2;
using ff::i64;
using ff::u64;

namespace {

// Collects failures; the criterion passes when none were recorded.
struct Checker {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      failures.push_back(os.str());
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

const graph::LabeledMultigraph& ssig9241(u64 ell) {
  static const graph::LabeledMultigraph g2 = ssig::build({9241, 2, ssig::Method::velu, false});
  static const graph::LabeledMultigraph g3 = ssig::build({9241, 3, ssig::Method::velu, false});
  return ell == 2 ? g2 : g3;
}

Fp2 parse_label(const std::string& label, u64 p) {
  const auto comma = label.find(',');
  return Fp2(ff::make_fp2(p), std::stoull(label.substr(0, comma)), std::stoull(label.substr(comma + 1)));
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// ------------------------------------------------------------ 1

void chain_counts(Checker& c) {
  const ec::Curve E = ec::find_supersingular_curve(431);
  struct Row {
    u64 ell;
    int m;
    u64 without, with;
  };
  const Row table[] = {{2, 4, 24, 31}, {2, 5, 48, 63}, {2, 6, 96, 127}, {2, 7, 192, 255}, {3, 4, 108, 121}, {3, 5, 324, 364}};
  for (const Row& r : table) {
    const auto k = isogeny::enumerate_chains(E, r.ell, r.m);
    const std::string tag = "(" + std::to_string(r.ell) + "," + std::to_string(r.m) + ")";
    c.equal(k.without_backtracking, r.without, tag + " without backtracking");
    c.equal(k.with_backtracking, r.with, tag + " with backtracking");
  }
  for (u64 ell : {2ULL, 3ULL}) {
    for (int m = 1; m <= 5; ++m) {
      const auto k = isogeny::enumerate_chains(E, ell, m);
      const u64 cyclic = ec::ipow(ell, m) + ec::ipow(ell, m - 1);
      const u64 total = (ec::ipow(ell, m + 1) - 1) / (ell - 1);
      const std::string tag = "(" + std::to_string(ell) + "," + std::to_string(m) + ")";
      c.equal(k.without_backtracking, cyclic, tag + " vs l^m + l^(m-1)");
      c.equal(k.with_backtracking, total, tag + " vs (l^(m+1) - 1)/(l - 1)");
    }
  }
  c.note("6 table rows, 10 closed-form cases");
}

// ------------------------------------------------------------ 2

void ssig_structure(Checker& c) {
  const auto& g = ssig9241(2);
  const auto rep = graph::analyze(g);
  const u64 h = pizer::eichler_class_number(9241);
  const auto js = ec::supersingular_j_invariants(9241);
  c.equal(rep.vertices, std::size_t{770}, "vertices");
  c.equal(h, u64{770}, "Eichler class number");
  c.equal(js.size(), std::size_t{770}, "enumerated supersingular j");
  std::vector<std::string> labels = g.labels(), enumerated;
  for (const auto& j : js) enumerated.push_back(j.label());
  std::sort(labels.begin(), labels.end());
  std::sort(enumerated.begin(), enumerated.end());
  c.expect(labels == enumerated, "vertex set differs from the enumerated j-invariants");
  c.expect(rep.connected, "l=2 graph not connected");
  c.expect(rep.regular_degree == 3u, "l=2 graph not 3-regular");
  c.expect(rep.simple(), "l=2 graph not simple");

  const auto rep3 = graph::analyze(ssig9241(3));
  c.equal(9241 % ssig::simplicity_congruence(3), u64{1}, "p mod simplicity congruence for l=3");
  c.equal(rep3.vertices, std::size_t{770}, "l=3 vertices");
  c.expect(rep3.connected, "l=3 graph not connected");
  c.expect(rep3.regular_degree == 4u, "l=3 graph not 4-regular");
  c.expect(rep3.simple(), "l=3 graph not simple");
  c.note("770 vertices = H(9241) = #enumerated j; 3- and 4-regular, simple");
}

// ------------------------------------------------------------ 3

void ssig_ramanujan(Checker& c) {
  for (u64 ell : {2ULL, 3ULL}) {
    const auto eig = graph::full_spectrum(ssig9241(ell));
    const double bound = 2 * std::sqrt(static_cast<double>(ell)) + 1e-9;
    const double top = eig.back();
    c.expect(std::abs(top - static_cast<double>(ell + 1)) < 1e-9, "top eigenvalue is not l+1");
    double worst = 0;
    for (std::size_t i = 0; i + 1 < eig.size(); ++i) worst = std::max(worst, std::abs(eig[i]));
    c.expect(worst <= bound, "l=" + std::to_string(ell) + " nontrivial |lambda| " + std::to_string(worst) +
                                 " exceeds 2 sqrt(l)");
    std::ostringstream os;
    os.precision(6);
    os << "l=" << ell << " max|lambda|=" << worst << " <= " << bound;
    c.note(os.str());
  }
}

// ------------------------------------------------------------ 4

void lps_structure(Checker& c) {
  const auto g = lps::build_lps_graph(5, 29);
  const auto rep = graph::analyze(g);
  c.equal(rep.vertices, std::size_t{12180}, "vertices");
  c.expect(rep.regular_degree == 6u, "not 6-regular");
  c.expect(rep.connected, "not connected");
  c.expect(rep.simple(), "not simple");
  c.expect(!rep.bipartite, "bipartite");
  const auto est = graph::second_eigenvalue_sparse(g, 1e-10);
  const double bound = 2 * std::sqrt(5.0) + 1e-6;
  c.expect(est.value <= bound, "second eigenvalue " + std::to_string(est.value) + " above 2 sqrt(5)");
  std::ostringstream os;
  os.precision(8);
  os << "lambda=" << est.value << " (residual " << est.residual << ") <= " << bound;
  c.note(os.str());
}

// ------------------------------------------------------------ 5

void correspondence(Checker& c) {
  struct Table {
    u64 l, eps;
    std::vector<std::string> alpha;  // expected alpha_0 .. alpha_l
  };
  const std::vector<Table> expected = {
      {5, 3, {"1-2i", "1-2k", "1+2j", "1-2j", "1+2k", "1+2i"}},
      {5, 2, {"1+2i", "1+2k", "1+2j", "1-2j", "1-2k", "1-2i"}},
      {13, 8,
       {"3-2i", "3-2k", "1-2i-2j-2k", "1-2i+2j-2k", "1+2i+2j+2k", "3+2j", "1+2i-2j+2k", "1+2i+2j-2k", "3-2j",
        "1+2i-2j-2k", "1-2i-2j+2k", "1-2i+2j+2k", "3+2k", "3+2i"}},
      {13, 5,
       {"3+2i", "3+2k", "1+2i-2j+2k", "1+2i+2j+2k", "1-2i+2j-2k", "3+2j", "1-2i-2j-2k", "1-2i+2j+2k", "3-2j",
        "1-2i-2j+2k", "1+2i-2j-2k", "1+2i+2j-2k", "3-2k", "3-2i"}},
  };
  const auto c5 = lps::correspondence_constants(5), c13 = lps::correspondence_constants(13);
  c.expect(c5.a == 1 && c5.b == 2 && c5.e == 3, "constants for l=5 are not a=1, b=2, e=3");
  c.expect(c13.a == 3 && c13.b == 2 && c13.e == 8, "constants for l=13 are not a=3, b=2, e=8");
  int cells = 0, mismatched = 0, integral = 0, pairings = 0, table_integral = 0;
  std::vector<std::string> where;
  for (const auto& t : expected) {
    const auto got = lps::generator_matrix_correspondence(t.l, t.eps);
    const auto ms = lps::tree_neighbor_matrices(t.l);
    for (u64 h = 0; h <= t.l; ++h) {
      ++cells;
      if (got.alpha[h].str() != t.alpha[h]) {
        ++mismatched;
        where.push_back("l=" + std::to_string(t.l) + " eps=" + std::to_string(t.eps) + " h=" + std::to_string(h) +
                        ": computed " + got.alpha[h].str() + ", table " + t.alpha[h]);
      }
      ++pairings;
      integral += lps::is_l_integral(got.alpha[h], ms[h], t.l, t.eps);
      for (const auto& q : lps::four_square_solutions(t.l)) {
        if (q.str() == t.alpha[h]) table_integral += lps::is_l_integral(q, ms[h], t.l, t.eps);
      }
    }
  }
  c.expect(integral == pairings, std::to_string(pairings - integral) + " computed pairings fail the integrality check");
  if (mismatched > 0) {
    c.failures.push_back(std::to_string(mismatched) + " of " + std::to_string(cells) +
                         " cells differ from the expected tables (" + join(where) + ")");
  }
  c.note(std::to_string(integral) + "/" + std::to_string(pairings) + " computed pairings l-integral, " +
         std::to_string(cells - mismatched) + "/" + std::to_string(cells) + " cells match, " +
         std::to_string(table_integral) + "/" + std::to_string(pairings) + " expected-table pairings l-integral");
}

// ------------------------------------------------------------ 6

void jacobi_counts(Checker& c) {
  for (u64 l : {5ULL, 13ULL, 17ULL, 29ULL}) {
    c.equal(lps::four_square_solutions(l).size(), l + 1, "solutions for l=" + std::to_string(l));
  }
  c.note("l+1 solutions for l = 5, 13, 17, 29");
}

// ------------------------------------------------------------ 7

void pizer_scan(Checker& c) {
  const auto res = pizer::scan_primes(1000000);
  c.equal(res.primes_scanned, u64{1000000}, "primes scanned");
  c.equal(res.admissible.size(), std::size_t{1670}, "admissible primes");
  c.expect(!res.admissible.empty() && res.admissible.front() == 53881, "smallest admissible prime is not 53881");
  c.equal(pizer::eichler_class_number(53881), u64{4490}, "H(53881)");
  c.note(std::to_string(res.admissible.size()) + " admissible up to " + std::to_string(res.last_prime) +
         ", min " + (res.admissible.empty() ? std::string("none") : std::to_string(res.admissible.front())));
}

// ------------------------------------------------------------ 8

void pizer_tables(Checker& c) {
  struct Row {
    i64 delta, t, r;
    std::vector<i64> f;
  };
  const std::vector<Row> m5 = {{-20, 1, -5, {1}}, {-19, 1, -19, {1}}, {-16, 2, -1, {1, 2}},
                               {-11, 1, -11, {1}}, {-4, 1, -1, {1}}};
  const std::vector<Row> m25 = {{-100, 5, -1, {1, 5}}, {-99, 3, -11, {1, 3}}, {-96, 4, -6, {1, 2, 4}},
                                {-91, 1, -91, {1}},     {-84, 1, -21, {1}},    {-75, 5, -3, {1, 5}},
                                {-64, 4, -1, {1, 2, 4}}, {-51, 1, -51, {1}},   {-36, 3, -1, {1, 3}},
                                {-19, 1, -19, {1}}};
  for (const auto& [m, rows] : {std::pair{5ULL, &m5}, std::pair{25ULL, &m25}}) {
    const auto got = pizer::discriminant_rows(m);
    c.equal(got.size(), rows->size(), "rows for m=" + std::to_string(m));
    for (std::size_t s = 0; s < std::min(got.size(), rows->size()); ++s) {
      const Row& want = (*rows)[s];
      const std::string tag = "m=" + std::to_string(m) + " s=" + std::to_string(s);
      c.equal(got[s].delta, want.delta, tag + " delta");
      c.equal(got[s].t, want.t, tag + " t");
      c.equal(got[s].r, want.r, tag + " r");
      c.expect(got[s].f == want.f, tag + " f");
    }
  }
  const auto r5 = pizer::discriminant_rows(5);
  c.expect(r5[2].d == std::vector<i64>{-16, -4}, "m=5 s=2 d");
  const auto r25 = pizer::discriminant_rows(25);
  c.expect(r25[2].d == std::vector<i64>{-96, -24, -6}, "m=25 s=2 d");

  using S = std::set<u64>;
  const std::vector<std::tuple<i64, u64, S>> conds = {
      {-20, 5, S{1, 4}},
      {-19, 19, S{1, 4, 5, 6, 7, 9, 11, 16, 17}},
      {-11, 11, S{1, 3, 4, 5, 9}},
      {-96, 8, S{1, 7}},
      {-51, 17, S{1, 2, 4, 8, 9, 13, 15, 16}},
      {-84, 7, S{1, 2, 4}},
      {-91, 13, S{1, 3, 4, 9, 10, 12}},
  };
  for (const auto& [d, mod, res] : conds) {
    const auto got = pizer::modular_conditions(d);
    c.expect(got.modulus == mod && got.residues == res, "residue set for d=" + std::to_string(d));
  }
  c.equal(pizer::admissible_class_count(), u64{12960}, "residue classes");
  c.note("15 rows, 7 residue sets, 12960 classes mod " + std::to_string(pizer::admissible_modulus()));
}

// ------------------------------------------------------------ 9

void sidh_round_trip(Checker& c) {
  const auto params = sidh::preset("p431");
  std::mt19937_64 rng(20240431);
  int agreed = 0, recovered = 0, attempts = 0, round_trips = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto [ma, na] = sidh::random_secret(params, sidh::Side::A, rng);
    const auto [mb, nb] = sidh::random_secret(params, sidh::Side::B, rng);
    const auto A = sidh::keygen(params, sidh::Side::A, ma, na);
    const auto B = sidh::keygen(params, sidh::Side::B, mb, nb);
    const Fp2 ja = sidh::derive_shared(params, A, B.pub), jb = sidh::derive_shared(params, B, A.pub);
    agreed += ja == jb;
    const auto res = sidh::attack(params, A.pub, B.pub);
    attempts += res.attempts;
    recovered += res.j && *res.j == ja;
  }
  const ec::Curve& E = params.E;
  for (int t = 0; t < 100; ++t) {
    const u64 m = rng() % 16, n = rng() % 16;
    const ec::Point R = E.add(E.mul(params.PA, m), E.mul(params.QA, n));
    round_trips += ec::decompose_in_basis(E, R, params.PA, params.QA, 2, 4) == std::pair<u64, u64>{m, n};
  }
  c.equal(agreed, 20, "exchanges agreeing");
  c.equal(recovered, 20, "attacks recovering the shared j");
  c.equal(round_trips, 100, "decompose_in_basis round trips");
  c.note("20/20 agree, " + std::to_string(recovered) + "/20 recovered with " + std::to_string(attempts) +
         " candidate paths, " + std::to_string(round_trips) + "/100 round trips");
}

// ------------------------------------------------------------ 10

void cross_validation(Checker& c) {
  std::mt19937_64 rng(9241);
  for (u64 ell : {2ULL, 3ULL}) {
    const auto& labels = ssig9241(ell).labels();
    std::vector<std::string> sample = labels;
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(50);
    int agree = 0;
    for (const auto& label : sample) {
      const Fp2 j = parse_label(label, 9241);
      const auto velu = ssig::neighbors_velu(j, ell);
      const auto mp = ssig::neighbors_modpoly(j, ell);
      if (mp.complete && mp.roots == velu) ++agree;
      else c.failures.push_back("l=" + std::to_string(ell) + " j=" + label + " neighbour multisets differ");
    }
    c.note("l=" + std::to_string(ell) + ": " + std::to_string(agree) + "/50");
  }
}

const std::pair<const char*, std::function<void(Checker&)>> kCriteria[kCount] = {
    {"chain counts", chain_counts},     {"ssig structure", ssig_structure}, {"ssig ramanujan", ssig_ramanujan},
    {"lps structure", lps_structure},   {"correspondence", correspondence}, {"jacobi counts", jacobi_counts},
    {"pizer scan", pizer_scan},         {"pizer tables", pizer_tables},     {"sidh", sidh_round_trip},
    {"cross-validation", cross_validation},
};

}  // namespace

Result run(int id) {
  if (id < 1 || id > kCount) throw ParameterError("criterion must be in 1.." + std::to_string(kCount));
  const auto& [name, fn] = kCriteria[id - 1];
  Result r;
  r.id = id;
  r.name = name;
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = c.failures.empty();
  r.detail = r.pass ? join(c.notes) : join(c.failures);
  if (!r.pass && !c.notes.empty()) r.detail += "; " + join(c.notes);
  return r;
}

std::string format(const Result& r) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL") << " ("
     << r.detail << ") " << r.seconds << "s";
  return os.str();
}

}  // namespace ramanujan::criteria
