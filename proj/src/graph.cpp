#include "ramanujan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ramanujan::graph {

// ---------------------------------------------------------------- container

std::size_t LabeledMultigraph::add_vertex(const std::string& label) {
  auto [it, inserted] = index_.emplace(label, labels_.size());
  if (inserted) labels_.push_back(label);
  return it->second;
}

void LabeledMultigraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= labels_.size() || v >= labels_.size()) throw ParameterError("add_edge: bad vertex index");
  if (!directed_ && v < u) std::swap(u, v);
  edges_.emplace_back(u, v);
}

void LabeledMultigraph::add_edge(const std::string& u, const std::string& v) {
  std::size_t a = add_vertex(u);
  std::size_t b = add_vertex(v);
  add_edge(a, b);
}

std::optional<std::size_t> LabeledMultigraph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> LabeledMultigraph::adjacency_lists() const {
  std::vector<std::vector<std::size_t>> adj(labels_.size());
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    if (!directed_ && u != v) adj[v].push_back(u);
  }
  return adj;
}

// ---------------------------------------------------------------- structure

namespace {

// Underlying undirected structure: neighbour lists tagged with edge ids so a
// BFS can tell a parallel edge from the tree edge it arrived by.
struct Incidence {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // (neighbour, edge id)
};

Incidence incidence(const LabeledMultigraph& g) {
  Incidence inc;
  inc.adj.resize(g.vertex_count());
  const auto& edges = g.edges();
  for (std::size_t id = 0; id < edges.size(); ++id) {
    auto [u, v] = edges[id];
    if (u == v) continue;
    inc.adj[u].emplace_back(v, id);
    inc.adj[v].emplace_back(u, id);
  }
  return inc;
}

std::optional<std::uint64_t> simple_girth(const Incidence& inc) {
  const std::size_t n = inc.adj.size();
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> dist(n), via(n);
  std::vector<std::size_t> touched;
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::fill(dist.begin(), dist.end(), kUnseen);
  for (std::size_t s = 0; s < n && best > 3; ++s) {
    for (std::size_t t : touched) dist[t] = kUnseen;
    touched.clear();
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    via[s] = kUnseen;
    touched.push_back(s);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      if (2 * dist[u] >= best) break;
      for (auto [w, id] : inc.adj[u]) {
        if (id == via[u]) continue;
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          via[w] = id;
          touched.push_back(w);
          queue.push_back(w);
        } else {
          best = std::min<std::uint64_t>(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best;
}

}  // namespace

StructureReport analyze(const LabeledMultigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw ParameterError("analyze: empty graph");
  StructureReport r;
  r.vertices = n;
  r.edges = g.edge_count();

  std::vector<std::uint64_t> out(n, 0), in(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mult;
  for (auto [u, v] : g.edges()) {
    if (u == v) {
      ++r.loop_count;
    } else {
      ++mult[g.directed() ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)}];
    }
    if (g.directed()) {
      ++out[u];
      ++in[v];
    } else {
      ++out[u];
      ++out[v];  // a loop adds 2
    }
  }
  for (auto& [key, m] : mult) r.multi_edge_count += m - 1;

  bool regular = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (out[v] != out[0] || (g.directed() && in[v] != out[0])) regular = false;
  }
  if (regular) r.regular_degree = out[0];

  // Connectivity and 2-colouring on the underlying undirected graph.
  Incidence inc = incidence(g);
  std::vector<int> colour(n, -1);
  std::size_t components = 0;
  bool bip = r.loop_count == 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    ++components;
    colour[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (auto [w, id] : inc.adj[u]) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
        } else if (colour[w] == colour[u]) {
          bip = false;
        }
      }
    }
  }
  r.connected = components == 1;
  r.bipartite = bip;

  if (r.loop_count > 0) {
    r.girth = 1;
  } else if (g.directed()) {
    // a 2-cycle u -> v -> u or parallel arcs count as multi-edges of the
    // underlying graph
    bool two = r.multi_edge_count > 0;
    for (auto& [key, m] : mult) {
      if (mult.count({key.second, key.first})) two = true;
    }
    r.girth = two ? std::optional<std::uint64_t>(2) : simple_girth(inc);
  } else if (r.multi_edge_count > 0) {
    r.girth = 2;
  } else {
    r.girth = simple_girth(inc);
  }
  return r;
}

// ---------------------------------------------------------------- spectra

DenseMatrix adjacency_matrix(const LabeledMultigraph& g) {
  const std::size_t n = g.vertex_count();
  DenseMatrix a(n, std::vector<double>(n, 0.0));
  for (auto [u, v] : g.edges()) {
    a[u][v] += 1.0;
    if (!g.directed() && u != v) a[v][u] += 1.0;
  }
  return a;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw ParameterError("symmetric_eigenvalues: matrix is not square");
  }
  if (n == 0) return {};
  std::vector<double> d(n, 0.0), e(n, 0.0);

  // Householder reduction; the lower triangle carries the transforms.
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::fabs(a[i][k]);
      if (scale == 0.0) {
        e[i] = a[i][l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i][k] /= scale;
          h += a[i][k] * a[i][k];
        }
        double f = a[i][l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
          for (int k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
          e[j] = g / h;
          f += e[j] * a[i][j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a[i][j];
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) a[j][k] -= f * e[k] + g * a[i][k];
        }
      }
    } else {
      e[i] = a[i][l];
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = a[i][i];

  // Implicit QL on the tridiagonal (d, e).
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) throw InternalError("symmetric_eigenvalues: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> full_spectrum(const LabeledMultigraph& g, std::size_t cap) {
  if (g.directed()) throw ParameterError("full_spectrum: graph must be undirected");
  if (g.vertex_count() > cap) {
    throw ParameterError("full_spectrum: " + std::to_string(g.vertex_count()) +
                         " vertices exceed the dense cap of " + std::to_string(cap) +
                         "; use the sparse estimate");
  }
  return symmetric_eigenvalues(adjacency_matrix(g));
}

namespace {

double start_entry(std::size_t i) {
  std::uint64_t x = i + 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) / static_cast<double>(1ULL << 53) * 2.0 - 1.0;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SparseEstimate second_eigenvalue_sparse(const LabeledMultigraph& g, double tol, int max_iterations) {
  if (g.directed()) throw ParameterError("second_eigenvalue_sparse: graph must be undirected");
  StructureReport rep = analyze(g);
  if (!rep.connected) throw ParameterError("second_eigenvalue_sparse: graph is not connected");
  const std::size_t n = g.vertex_count();
  const auto adj = g.adjacency_lists();
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() != adj[0].size()) {
      throw ParameterError("second_eigenvalue_sparse: adjacency row sums differ (graph not regular)");
    }
  }

  // Trivial eigenvectors, unit length.
  std::vector<std::vector<double>> trivial;
  trivial.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  if (rep.bipartite) {
    std::vector<int> colour(n, -1);
    colour[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[u]) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
        }
      }
    }
    std::vector<double> sign(n);
    for (std::size_t v = 0; v < n; ++v) sign[v] = (colour[v] ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n));
    trivial.push_back(std::move(sign));
  }
  auto project = [&](std::vector<double>& x) {
    for (const auto& t : trivial) {
      const double c = dot(x, t);
      for (std::size_t i = 0; i < n; ++i) x[i] -= c * t[i];
    }
  };
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (std::size_t w : adj[v]) s += x[w];
      y[v] = s;
    }
    return y;
  };

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = start_entry(i);
  project(x);
  double norm = std::sqrt(dot(x, x));
  SparseEstimate est;
  if (norm == 0.0) return est;  // nothing outside the trivial span
  for (auto& xi : x) xi /= norm;

  std::vector<double> history;
  double residual = 0.0;
  for (int k = 1; k <= max_iterations; ++k) {
    std::vector<double> y = apply(apply(x));
    project(y);
    const double mu = dot(x, y);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    residual = std::sqrt(r2);
    history.push_back(mu);
    const double ynorm = std::sqrt(dot(y, y));
    if (ynorm == 0.0) {
      est.iterations = k;
      return est;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;

    if (history.size() >= 3) {
      const double m0 = history[history.size() - 3];
      const double m1 = history[history.size() - 2];
      const double m2 = history.back();
      const double step = std::fabs(m2 - m1);
      const double denom = m2 - 2.0 * m1 + m0;
      double err = step;
      if (std::fabs(denom) > 1e-300) err = std::max(step, std::fabs((m2 - m1) * (m2 - m1) / denom));
      const double scale = std::max(1.0, std::fabs(m2));
      if (err <= tol * scale) {
        est.value = std::sqrt(std::max(m2, 0.0));
        est.residual = residual;
        est.error_estimate = err / std::max(2.0 * est.value, 1e-300);
        est.iterations = k;
        return est;
      }
    }
  }
  throw ConvergenceError("second_eigenvalue_sparse: no convergence after " +
                             std::to_string(max_iterations) + " iterations",
                         x, residual);
}

bool is_ramanujan(const LabeledMultigraph& g, std::uint64_t l, double tol) {
  StructureReport rep = analyze(g);
  if (!rep.regular_degree || *rep.regular_degree != l + 1) {
    throw ParameterError("is_ramanujan: graph is not (l+1)-regular");
  }
  const double bound = 2.0 * std::sqrt(static_cast<double>(l)) + tol;
  const double top = static_cast<double>(l + 1);
  if (g.vertex_count() > kDenseCap) {
    if (!rep.connected) return false;
    return second_eigenvalue_sparse(g).value <= bound;
  }
  std::vector<double> ev = full_spectrum(g);
  ev.pop_back();  // the top eigenvalue l+1
  if (rep.bipartite && !ev.empty() && std::fabs(ev.front() + top) < 1e-6) ev.erase(ev.begin());
  for (double x : ev) {
    if (std::fabs(x) > bound) return false;
  }
  return true;
}

// ---------------------------------------------------------------- export

namespace {

std::vector<std::pair<std::string, std::string>> sorted_edges(const LabeledMultigraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) {
    std::string a = g.labels()[u], b = g.labels()[v];
    if (!g.directed() && b < a) std::swap(a, b);
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

}  // namespace

std::string export_graph(const LabeledMultigraph& g, Format format) {
  std::vector<std::string> vertices = g.labels();
  std::sort(vertices.begin(), vertices.end());
  const auto edges = sorted_edges(g);
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["directed"] = g.directed();
    j["vertices"] = vertices;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
    return j.dump() + "\n";
  }
  std::ostringstream os;
  const char* arrow = g.directed() ? " -> " : " -- ";
  os << (g.directed() ? "digraph" : "graph") << " G {\n";
  for (const auto& v : vertices) os << "  " << dot_quote(v) << ";\n";
  for (const auto& [a, b] : edges) os << "  " << dot_quote(a) << arrow << dot_quote(b) << ";\n";
  os << "}\n";
  return os.str();
}

LabeledMultigraph parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("directed") || !j.contains("vertices") || !j.contains("edges") ||
      !j["directed"].is_boolean() || !j["vertices"].is_array() || !j["edges"].is_array()) {
    throw ParameterError("graph JSON: expected {\"directed\", \"vertices\", \"edges\"}");
  }
  LabeledMultigraph g(j["directed"].get<bool>());
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParameterError("graph JSON: vertex labels must be strings");
    g.add_vertex(v.get<std::string>());
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw ParameterError("graph JSON: edges must be [u, v] label pairs");
    }
    auto u = g.index_of(e[0].get<std::string>());
    auto v = g.index_of(e[1].get<std::string>());
    if (!u || !v) throw ParameterError("graph JSON: edge names an unknown vertex");
    g.add_edge(*u, *v);
  }
  return g;
}

}  // namespace ramanujan::graph
