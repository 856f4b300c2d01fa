#pragma once

// Labeled multigraphs with structural metrics and adjacency spectra.
//
// Adjacency convention: A(v, v) is the number of loops at v, not twice it.
// Degrees in analyze() count a loop twice for undirected graphs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ramanujan/errors.hpp"

namespace ramanujan::graph {

class LabeledMultigraph {
 public:
  explicit LabeledMultigraph(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }
  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Undirected edges are stored with first <= second (vertex index).
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  // Returns the existing index when the label is already present.
  std::size_t add_vertex(const std::string& label);
  void add_edge(std::size_t u, std::size_t v);
  void add_edge(const std::string& u, const std::string& v);
  std::optional<std::size_t> index_of(const std::string& label) const;

  // Out-neighbours with multiplicity; for undirected graphs both endpoints
  // see each edge and a loop appears once in its vertex's list.
  std::vector<std::vector<std::size_t>> adjacency_lists() const;

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

struct StructureReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::optional<std::uint64_t> regular_degree;
  bool connected = false;  // weakly, for directed graphs
  bool bipartite = false;
  std::optional<std::uint64_t> girth;  // none for forests; 1 with loops, 2 with multi-edges
  std::size_t loop_count = 0;
  std::size_t multi_edge_count = 0;  // surplus parallel copies over all vertex pairs
  bool simple() const { return loop_count == 0 && multi_edge_count == 0; }
};

// Throws ParameterError on an empty graph.
StructureReport analyze(const LabeledMultigraph& g);

using DenseMatrix = std::vector<std::vector<double>>;

DenseMatrix adjacency_matrix(const LabeledMultigraph& g);

// Eigenvalues of a real symmetric matrix, ascending: Householder reduction to
// tridiagonal form followed by implicit QL.
std::vector<double> symmetric_eigenvalues(DenseMatrix a);

inline constexpr std::size_t kDenseCap = 3000;

// Ascending adjacency spectrum of an undirected graph with at most `cap`
// vertices; larger graphs are refused in favour of the sparse path.
std::vector<double> full_spectrum(const LabeledMultigraph& g, std::size_t cap = kDenseCap);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last, double residual)
      : std::runtime_error(what), last_iterate(std::move(last)), residual(residual) {}
  std::vector<double> last_iterate;
  double residual;
};

struct SparseEstimate {
  double value = 0;       // max |lambda| off the trivial eigenvectors
  double residual = 0;    // ||A^2 x - mu x|| for the final unit vector
  double error_estimate = 0;
  int iterations = 0;
};

// Power iteration on A^2 with the all-ones vector (and for bipartite graphs
// the sign vector) projected out. Requires a connected regular graph.
SparseEstimate second_eigenvalue_sparse(const LabeledMultigraph& g, double tol = 1e-10,
                                        int max_iterations = 200000);

// Drops one top eigenvalue l+1 (and one -(l+1) for bipartite graphs) and
// checks |lambda| <= 2 sqrt(l) + tol for the rest. Needs an (l+1)-regular graph.
bool is_ramanujan(const LabeledMultigraph& g, std::uint64_t l, double tol = 1e-9);

enum class Format { dot, json };
std::string export_graph(const LabeledMultigraph& g, Format format);
// Reads the JSON produced by export_graph; throws ParameterError on bad input.
LabeledMultigraph parse_json(const std::string& text);

}  // namespace ramanujan::graph
