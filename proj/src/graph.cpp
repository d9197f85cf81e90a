#include "dgft/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "dgft/error.hpp"

namespace dgft {

Graph::Graph(ComplexMatrix weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  if (!weights_.is_square()) {
    throw Error(Errc::NonSquare, "weight matrix must be square");
  }
  const std::size_t n = weights_.rows();
  if (n == 0) throw Error(Errc::TooSmall, "graph needs at least one node");
  if (!labels_.empty() && labels_.size() != n) {
    throw Error(Errc::DimensionMismatch, "one label per node required");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(weights_(i, j).real()) || !std::isfinite(weights_(i, j).imag()))
        throw Error(Errc::InvalidArgument, "non-finite weight at (" + std::to_string(i) + ", " +
                                               std::to_string(j) + ")");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw Error(Errc::SelfLoopRejected,
                  "self-loop at node " + std::to_string(i));
    }
  }

  undirected_ = true;
  real_nonnegative_ = true;
  real_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w = weights_(i, j);
      if (std::abs(w - weights_(j, i)) > 1e-12) undirected_ = false;
      if (w.imag() != 0.0) real_ = false;
      if (w.imag() != 0.0 || w.real() < 0.0) real_nonnegative_ = false;
    }
  }
}

GraphSignal GraphSignal::real(const std::vector<double>& v) {
  return GraphSignal(ComplexVector(v.begin(), v.end()));
}

GraphSignal GraphSignal::constant(std::size_t n, Complex c) {
  return GraphSignal(ComplexVector(n, c));
}

GraphSignal GraphSignal::indicator(std::size_t n, std::size_t node) {
  ComplexVector v(n);
  v.at(node) = 1.0;
  return GraphSignal(std::move(v));
}

Graph build_graph(std::size_t n, const std::vector<Edge>& edges, BuildOptions opts) {
  if (n == 0) throw Error(Errc::TooSmall, "graph needs at least one node");
  ComplexMatrix w(n, n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw Error(Errc::IndexOutOfRange,
                  "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                      ") outside [0, " + std::to_string(n) + ")");
    }
    if (e.src == e.dst) {
      throw Error(Errc::SelfLoopRejected, "self-loop at node " + std::to_string(e.src));
    }
    if (!seen.emplace(e.src, e.dst).second && !opts.sum_duplicates) {
      throw Error(Errc::DuplicateEdge, "duplicate edge (" + std::to_string(e.src) +
                                           ", " + std::to_string(e.dst) + ")");
    }
    w(e.dst, e.src) += e.weight;
  }
  return Graph(std::move(w));
}

ComplexMatrix in_degree_matrix(const Graph& g) {
  const auto& w = g.weights();
  ComplexMatrix d(g.n(), g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    Complex s = 0.0;
    for (const Complex& x : w.row(i)) s += x;
    d(i, i) = s;
  }
  return d;
}

ComplexVector out_degree_vector(const Graph& g) {
  const auto& w = g.weights();
  ComplexVector d(g.n());
  for (std::size_t j = 0; j < g.n(); ++j)
    for (std::size_t i = 0; i < g.n(); ++i) d[i] += w(j, i);
  return d;
}

DirectedLaplacian directed_laplacian(const Graph& g) {
  // Built entrywise so zero weights give +0.0 rather than -0.0.
  const auto& w = g.weights();
  const ComplexMatrix d = in_degree_matrix(g);
  ComplexMatrix l(g.n(), g.n());
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = 0; j < g.n(); ++j)
      l(i, j) = i == j ? d(i, i) : (w(i, j) == 0.0 ? Complex{} : -w(i, j));
  return DirectedLaplacian{std::move(l)};
}

Graph ring_graph(std::size_t n) {
  if (n < 2) throw Error(Errc::TooSmall, "ring graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) edges.push_back({(k + n - 1) % n, k, 1.0});
  // n == 2 yields the two-cycle; both edges are distinct pairs.
  return build_graph(n, edges);
}

Graph reference_digraph() {
  // 1-based: 5->1 (3), 1->2 (1), 3->2 (2), 4->3 (3), 1->4 (2), 2->4 (4),
  // 5->4 (1), 1->5 (3), 2->5 (3).
  const std::vector<Edge> edges = {
      {4, 0, 3.0}, {0, 1, 1.0}, {2, 1, 2.0}, {3, 2, 3.0}, {0, 3, 2.0},
      {1, 3, 4.0}, {4, 3, 1.0}, {0, 4, 3.0}, {1, 4, 3.0},
  };
  return build_graph(5, edges);
}

double laplacian_row_sum_residual(const DirectedLaplacian& l) {
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < l.n(); ++i) {
    Complex s = 0.0;
    for (const Complex& x : l.matrix.row(i)) s += x;
    worst = std::max(worst, std::abs(s));
    scale = std::max(scale, norm_1(l.matrix.row(i)));
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

void require_same_size(const DirectedLaplacian& l, const GraphSignal& f) {
  if (l.n() != f.n()) {
    throw Error(Errc::DimensionMismatch, "signal has " + std::to_string(f.n()) +
                                             " entries, graph has " +
                                             std::to_string(l.n()) + " nodes");
  }
}

}  // namespace dgft
