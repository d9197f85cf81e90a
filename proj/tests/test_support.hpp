#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing
// here calls into the decomposition code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dgft/graph.hpp"

namespace dgft::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(0x5eed'0000ULL + seed); }

/// Random digraph with real weights in [0, 1]; each ordered pair is an edge
/// with probability p. Node count drawn from [min_n, max_n].
inline Graph random_digraph(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n,
                            double p = 0.4) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = size(rng);
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < n; ++d)
      if (s != d && unit(rng) < p) edges.push_back({s, d, unit(rng)});
  return build_graph(n, edges);
}

inline Graph random_undirected(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n,
                               double p = 0.4) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = size(rng);
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t d = s + 1; d < n; ++d) {
      if (unit(rng) < p) {
        const double w = unit(rng);
        edges.push_back({s, d, w});
        edges.push_back({d, s, w});
      }
    }
  }
  return build_graph(n, edges);
}

inline GraphSignal random_signal(std::mt19937_64& rng, std::size_t n, bool complex_values = true) {
  std::normal_distribution<double> gauss;
  ComplexVector v(n);
  for (auto& x : v) x = Complex(gauss(rng), complex_values ? gauss(rng) : 0.0);
  return GraphSignal(std::move(v));
}

inline ComplexVector random_taps(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ComplexVector taps(len(rng));
  for (auto& t : taps) t = Complex(unit(rng), unit(rng));
  return taps;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

/// Numerical rank by Gaussian elimination with full pivoting.
inline std::size_t brute_force_rank(ComplexMatrix a, double tol = 1e-9) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t pr = step, pc = step;
    double best = 0.0;
    for (std::size_t r = step; r < rows; ++r)
      for (std::size_t c = step; c < cols; ++c)
        if (std::abs(a(r, c)) > best) best = std::abs(a(r, c)), pr = r, pc = c;
    if (best <= tol) break;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(step, c), a(pr, c));
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, step), a(r, pc));
    for (std::size_t r = step + 1; r < rows; ++r) {
      const Complex m = a(r, step) / a(step, step);
      for (std::size_t c = step; c < cols; ++c) a(r, c) -= m * a(step, c);
    }
    ++rank;
  }
  return rank;
}

inline ComplexMatrix shifted(const ComplexMatrix& a, Complex lambda) {
  ComplexMatrix b = a;
  for (std::size_t i = 0; i < b.rows(); ++i) b(i, i) -= lambda;
  return b;
}

/// Jordan block sizes (descending) of eigenvalue lambda from the rank
/// sequence of (A - lambda I)^k: #blocks of size >= k is r_{k-1} - r_k.
inline std::vector<std::size_t> brute_force_block_sizes(const ComplexMatrix& a, Complex lambda) {
  const std::size_t n = a.rows();
  const ComplexMatrix b = shifted(a, lambda);
  std::vector<std::size_t> ranks{n};
  ComplexMatrix p = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix next(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) next(i, j) += p(i, l) * b(l, j);
    p = next;
    ranks.push_back(brute_force_rank(p));
    if (ranks[k] == ranks[k - 1]) break;
  }
  std::vector<std::size_t> at_least;
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const std::size_t longer = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (std::size_t c = 0; c < at_least[k] - longer; ++c) sizes.push_back(k + 1);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

/// Defective directed graph with a known exact spectrum.
struct DefectiveCase {
  std::string name;
  Graph graph;
  /// Eigenvalues whose Jordan structure the oracle checks.
  std::vector<Complex> exact_eigenvalues;
};

inline std::vector<DefectiveCase> defective_corpus() {
  std::vector<DefectiveCase> out;
  // Directed path 0 -> 1 -> 2: L = [[0,0,0],[-1,1,0],[0,-1,1]].
  out.push_back({"path3", build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), {0.0, 1.0}});
  // Longer path: one Jordan block of size 3 at eigenvalue 1.
  out.push_back({"path4", build_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}), {0.0, 1.0}});
  // Path with weight 2 edges: eigenvalue 2, block size 2.
  out.push_back({"path3_w2", build_graph(3, {{0, 1, 2.0}, {1, 2, 2.0}}), {0.0, 2.0}});
  // Two disjoint paths: eigenvalue 0 twice (diagonal), eigenvalue 1 in two blocks of size 2.
  out.push_back({"two_paths",
                 build_graph(6, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}}),
                 {0.0, 1.0}});
  // Split-weight DAG: node 2 hears nodes 0 and 1 with weights summing to 1.
  out.push_back({"split_dag", build_graph(3, {{0, 1, 1.0}, {0, 2, 0.5}, {1, 2, 0.5}}), {0.0, 1.0}});
  // Directed 3-cycle feeding a 2-node tail: complex spectrum plus a defective eigenvalue 1.
  out.push_back({"cycle_tail",
                 build_graph(5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}}),
                 {0.0, 1.0}});
  // Eight-node DAG with integer weights and repeated in-degrees 3.
  out.push_back({"dag8", build_graph(8, {{0, 1, 3.0}, {1, 2, 3.0}, {2, 3, 1.0}, {1, 3, 2.0},
                                         {0, 4, 2.0}, {4, 5, 2.0}, {5, 6, 1.0}, {6, 7, 1.0}}),
                 {0.0, 1.0, 2.0, 3.0}});
  return out;
}

}  // namespace dgft::testing
