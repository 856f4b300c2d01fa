#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ramanujan/graph.hpp"

using namespace ramanujan;
using namespace ramanujan::graph;

namespace {

LabeledMultigraph cycle(int n) {
  LabeledMultigraph g;
  for (int i = 0; i < n; ++i) g.add_edge("v" + std::to_string(i), "v" + std::to_string((i + 1) % n));
  return g;
}

LabeledMultigraph complete(int n, const std::string& prefix = "k") {
  LabeledMultigraph g;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(prefix + std::to_string(i), prefix + std::to_string(j));
  return g;
}

// Cyclic Jacobi rotations: the reference eigensolver.
std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  std::sort(d.begin(), d.end());
  return d;
}

// 2k-regular multigraph from k fixed-point-free permutations.
LabeledMultigraph random_regular(std::size_t n, int k, std::mt19937_64& rng) {
  LabeledMultigraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i));
  for (int t = 0; t < k; ++t) {
    std::vector<std::size_t> perm(n);
    for (;;) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) ok = ok && perm[i] != i;
      if (ok) break;
    }
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, perm[i]);
  }
  return g;
}

double second_abs(const std::vector<double>& ev, bool bipartite) {
  std::vector<double> rest(ev.begin(), ev.end() - 1);
  if (bipartite) rest.erase(rest.begin());
  double m = 0;
  for (double x : rest) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

TEST_CASE("structure of small graphs") {
  auto c6 = analyze(cycle(6));
  CHECK(c6.regular_degree == 2u);
  CHECK(c6.connected);
  CHECK(c6.bipartite);
  CHECK(c6.girth == 6u);
  CHECK(c6.simple());

  auto k4 = analyze(complete(4));
  CHECK(k4.regular_degree == 3u);
  CHECK(k4.connected);
  CHECK_FALSE(k4.bipartite);
  CHECK(k4.girth == 3u);

  CHECK(analyze(cycle(7)).girth == 7u);
  CHECK_FALSE(analyze(cycle(7)).bipartite);

  LabeledMultigraph loop;
  loop.add_edge("a", "a");
  auto lr = analyze(loop);
  CHECK(lr.loop_count == 1);
  CHECK(lr.regular_degree == 2u);
  CHECK(lr.girth == 1u);

  LabeledMultigraph dbl;
  dbl.add_edge("a", "b");
  dbl.add_edge("b", "a");
  CHECK(analyze(dbl).multi_edge_count == 1);
  CHECK(analyze(dbl).girth == 2u);

  LabeledMultigraph path;
  path.add_edge("a", "b");
  path.add_edge("b", "c");
  CHECK_FALSE(analyze(path).girth.has_value());
  CHECK_FALSE(analyze(path).regular_degree.has_value());

  CHECK_THROWS_AS(analyze(LabeledMultigraph{}), ParameterError);
}

TEST_CASE("dense spectra") {
  auto k4 = full_spectrum(complete(4));
  std::vector<double> k4_expected{-1, -1, -1, 3};
  for (int i = 0; i < 4; ++i) CHECK(k4[i] == doctest::Approx(k4_expected[i]).epsilon(1e-12));
  auto c6 = full_spectrum(cycle(6));
  std::vector<double> c6_expected{-2, -1, -1, 1, 1, 2};
  for (int i = 0; i < 6; ++i) CHECK(std::fabs(c6[i] - c6_expected[i]) < 1e-9);

  // Against Jacobi on random symmetric matrices.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + rng() % 40;
    DenseMatrix a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a[i][j] = a[j][i] = u(rng);
    auto x = symmetric_eigenvalues(a), y = jacobi_eigenvalues(a);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(x[i] - y[i]) < 1e-9);
  }

  // Bipartite double covers have spectra symmetric about zero.
  for (int t = 0; t < 5; ++t) {
    LabeledMultigraph base = random_regular(20, 2, rng);
    LabeledMultigraph cover;
    for (auto [a, b] : base.edges()) {
      cover.add_edge(base.labels()[a] + "+", base.labels()[b] + "-");
      cover.add_edge(base.labels()[a] + "-", base.labels()[b] + "+");
    }
    CHECK(analyze(cover).bipartite);
    auto ev = full_spectrum(cover);
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::fabs(ev[i] + ev[ev.size() - 1 - i]) < 1e-9);
  }

  // Loops sit on the diagonal once, so the trace is the loop count.
  LabeledMultigraph g = cycle(5);
  g.add_edge("v0", "v0");
  g.add_edge("v3", "v3");
  g.add_edge("v3", "v3");
  auto ev = full_spectrum(g);
  CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == doctest::Approx(3.0));

  CHECK_THROWS_AS(full_spectrum(cycle(10), 5), ParameterError);
}

TEST_CASE("sparse second eigenvalue") {
  auto est = second_eigenvalue_sparse(cycle(6));
  CHECK(std::fabs(est.value - 1.0) < 1e-6);

  std::mt19937_64 rng(2);
  int checked = 0;
  while (checked < 10) {
    const std::size_t n = 10 + rng() % 190;
    LabeledMultigraph g = random_regular(n, 2 + checked % 2, rng);
    auto rep = analyze(g);
    if (!rep.connected) continue;
    ++checked;
    const double dense = second_abs(full_spectrum(g), rep.bipartite);
    auto sp = second_eigenvalue_sparse(g, 1e-12);
    CHECK(std::fabs(sp.value - dense) < 1e-6);
  }

  LabeledMultigraph two = complete(4, "a");
  const LabeledMultigraph b = complete(4, "b");
  for (auto [u, v] : b.edges()) two.add_edge(b.labels()[u], b.labels()[v]);
  CHECK_THROWS_AS(second_eigenvalue_sparse(two), ParameterError);
  CHECK_THROWS_AS(second_eigenvalue_sparse(cycle(6), 1e-300, 3), ConvergenceError);
}

TEST_CASE("Ramanujan check") {
  CHECK(is_ramanujan(complete(4), 2));
  LabeledMultigraph two = complete(4, "a");
  const LabeledMultigraph b = complete(4, "b");
  for (auto [u, v] : b.edges()) two.add_edge(b.labels()[u], b.labels()[v]);
  CHECK_FALSE(is_ramanujan(two, 2));
  CHECK_THROWS_AS(is_ramanujan(cycle(6), 2), ParameterError);
}

TEST_CASE("export and parse") {
  LabeledMultigraph empty;
  CHECK(export_graph(empty, Format::json) == "{\"directed\":false,\"vertices\":[],\"edges\":[]}\n");

  LabeledMultigraph loop;
  loop.add_edge("a", "a");
  CHECK(export_graph(loop, Format::dot) == "graph G {\n  \"a\";\n  \"a\" -- \"a\";\n}\n");

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    LabeledMultigraph g(t % 2 == 1);
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) g.add_vertex(std::to_string(rng() % 1000) + "," + std::to_string(i));
    const int m = static_cast<int>(rng() % 30);
    for (int i = 0; i < m; ++i) g.add_edge(rng() % n, rng() % n);
    const std::string once = export_graph(g, Format::json);
    const std::string twice = export_graph(parse_json(once), Format::json);
    CHECK(once == twice);
    CHECK(export_graph(parse_json(once), Format::dot) == export_graph(g, Format::dot));
  }
  CHECK_THROWS_AS(parse_json(""), ParameterError);
  CHECK_THROWS_AS(parse_json("{\"directed\":false}"), ParameterError);
  CHECK_THROWS_AS(parse_json("{\"directed\":false,\"vertices\":[\"a\"],\"edges\":[[\"a\",\"b\"]]}"),
                  ParameterError);
}
