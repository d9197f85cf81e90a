#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgft/complex_matrix.hpp"

namespace dgft {

/// Weighted directed graph. weights()(i, j) is the weight of the edge from
/// node j to node i, so row i collects the in-edges of node i.
class Graph {
 public:
  /// Throws NonSquare, TooSmall (empty) or SelfLoopRejected (nonzero diagonal).
  explicit Graph(ComplexMatrix weights, std::vector<std::string> labels = {});

  std::size_t n() const noexcept { return weights_.rows(); }
  const ComplexMatrix& weights() const noexcept { return weights_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// W equals its transpose entrywise within 1e-12.
  bool is_undirected() const noexcept { return undirected_; }
  /// Every weight has zero imaginary part and nonnegative real part.
  bool is_real_nonnegative() const noexcept { return real_nonnegative_; }
  bool is_real() const noexcept { return real_; }

 private:
  ComplexMatrix weights_;
  std::vector<std::string> labels_;
  bool undirected_ = false;
  bool real_nonnegative_ = false;
  bool real_ = false;
};

/// Length-N signal, one complex value per node.
struct GraphSignal {
  ComplexVector values;

  GraphSignal() = default;
  explicit GraphSignal(ComplexVector v) : values(std::move(v)) {}
  static GraphSignal real(const std::vector<double>& v);
  static GraphSignal constant(std::size_t n, Complex c = 1.0);
  static GraphSignal indicator(std::size_t n, std::size_t node);

  std::size_t n() const noexcept { return values.size(); }
};

struct DirectedLaplacian {
  ComplexMatrix matrix;

  std::size_t n() const noexcept { return matrix.rows(); }
};

struct Edge {
  std::size_t src;
  std::size_t dst;
  Complex weight;
};

struct BuildOptions {
  /// When false, a repeated (src, dst) pair throws DuplicateEdge.
  bool sum_duplicates = false;
};

/// Edges use 0-based node indices. Throws IndexOutOfRange, SelfLoopRejected
/// or DuplicateEdge.
Graph build_graph(std::size_t n, const std::vector<Edge>& edges, BuildOptions opts = {});

ComplexMatrix in_degree_matrix(const Graph& g);
ComplexVector out_degree_vector(const Graph& g);
DirectedLaplacian directed_laplacian(const Graph& g);

/// Unit-weight directed cycle: node k receives one edge from node k-1 mod n.
Graph ring_graph(std::size_t n);

/// The five-node weighted digraph used throughout the worked examples.
Graph reference_digraph();

/// Largest row residual |sum_j L_ij| relative to the largest absolute row sum.
double laplacian_row_sum_residual(const DirectedLaplacian& l);

void require_same_size(const DirectedLaplacian& l, const GraphSignal& f);

}  // namespace dgft
