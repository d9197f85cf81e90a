#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dgft/error.hpp"
#include "dgft/linalg.hpp"
#include "test_support.hpp"

using namespace dgft;

namespace {

const ComplexMatrix kChain3 = {{0.0, 0.0, 0.0}, {-1.0, 1.0, 0.0}, {0.0, -1.0, 1.0}};

// Distance between two multisets of eigenvalues by greedy matching.
double spectrum_distance(ComplexVector a, ComplexVector b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

ComplexVector eigen_library_eigenvalues(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return ComplexVector(ev.data(), ev.data() + ev.size());
}

double inverse_residual(const SpectralDecomposition& d) {
  return (d.v * d.v_inv - ComplexMatrix::identity(d.n())).frobenius_norm();
}

}  // namespace

TEST_CASE("complex Schur form") {
  auto rng = testing::rng_for(11);
  for (std::size_t n : {1u, 2u, 3u, 8u, 25u}) {
    const ComplexMatrix a = testing::random_matrix(rng, n);
    const SchurForm s = complex_schur(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(s.t(i, j) == Complex(0.0));
    CHECK((s.z * s.t * s.z.adjoint() - a).frobenius_norm() <= 1e-12 * a.frobenius_norm());
    CHECK((s.z.adjoint() * s.z - ComplexMatrix::identity(n)).frobenius_norm() <= 1e-12 * n);
    CHECK(spectrum_distance(s.t.diagonal_entries(), eigen_library_eigenvalues(a)) <=
          1e-9 * a.frobenius_norm());
  }
  CHECK_THROWS_AS(complex_schur(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("Jacobi SVD and null spaces") {
  auto rng = testing::rng_for(12);
  const ComplexMatrix a = testing::random_matrix(rng, 6);
  const auto svd = jacobi_svd(a);
  CHECK(std::is_sorted(svd.sigma.rbegin(), svd.sigma.rend()));
  ComplexMatrix us = svd.u;
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t i = 0; i < 6; ++i) us(i, k) *= svd.sigma[k];
  CHECK((us * svd.v.adjoint() - a).frobenius_norm() <= 1e-12 * a.frobenius_norm());

  const ComplexMatrix ns = null_space(testing::shifted(kChain3, 1.0), 1e-10);
  REQUIRE(ns.cols() == 1);
  CHECK(norm_2(subtract(kChain3 * ns.column(0), ns.column(0))) <= 1e-12);
}

TEST_CASE("invert") {
  CHECK(invert(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));
  const ComplexMatrix d = ComplexMatrix::diagonal(ComplexVector{2.0, 4.0});
  CHECK(invert(d) == ComplexMatrix::diagonal(ComplexVector{0.5, 0.25}));

  // Fourier matrix printed to three decimals for the reference digraph.
  const ComplexMatrix v = {
      {0.447, 0.680, {-0.232, -0.134}, {-0.232, 0.134}, -0.535},
      {0.447, -0.502, {0.232, 0.312}, {0.232, -0.312}, 0.080},
      {0.447, -0.502, {-0.502, -0.201}, {-0.502, 0.201}, 0.080},
      {0.447, -0.108, {0.618, -0.089}, {0.618, 0.089}, -0.125},
      {0.447, 0.146, 0.309, 0.309, 0.828},
  };
  CHECK((v * invert(v) - ComplexMatrix::identity(5)).frobenius_norm() <= 1e-6);

  CHECK_THROWS_AS(invert(ComplexMatrix(3, 3)), Error);
  try {
    invert(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}});
    FAIL("singular matrix inverted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Singular);
  }

  auto rng = testing::rng_for(13);
  for (std::size_t n : {1u, 5u, 30u}) {
    const ComplexMatrix a = testing::random_matrix(rng, n);
    const ComplexMatrix inv = invert(a);
    const double cond = a.norm_1() * inv.norm_1();
    CHECK((a * inv - ComplexMatrix::identity(n)).frobenius_norm() <=
          1e-8 * std::sqrt(double(n)) * std::max(1.0, cond * 1e-4));
  }
}

TEST_CASE("matrix polynomial") {
  const ComplexMatrix l = [] {
    ComplexMatrix m = {{3, 0, 0, 0, -3}, {-1, 3, -2, 0, 0}, {0, 0, 3, -3, 0},
                       {-2, -4, 0, 7, -1}, {-3, -3, 0, 0, 6}};
    return m;
  }();
  const ComplexVector shift_taps{1.0, -1.0};
  CHECK(matrix_polynomial(l, shift_taps) == ComplexMatrix::identity(5) - l);
  const ComplexVector constant{Complex(2.0, -1.0)};
  CHECK(matrix_polynomial(l, constant) == ComplexMatrix::identity(5) * Complex(2.0, -1.0));
  const ComplexVector square{0.0, 0.0, 1.0};
  CHECK(matrix_polynomial(l, square) == l * l);
  CHECK_THROWS_AS(matrix_polynomial(l, ComplexVector{}), Error);

  auto rng = testing::rng_for(14);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testing::random_matrix(rng, 6);
    const ComplexMatrix s = matrix_polynomial(a, shift_taps);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        const Complex expect = (i == j ? 1.0 : 0.0) - a(i, j);
        CHECK(std::abs(s(i, j) - expect) <= 1e-15 * std::max(1.0, std::abs(expect)));
      }
  }
}

TEST_CASE("eigen_decompose examples") {
  const auto l = directed_laplacian(reference_digraph()).matrix;
  const EigenResult r = eigen_decompose(l);
  REQUIRE_FALSE(r.defective());
  const ComplexVector expected{0.0, 2.354, {6.0, -1.732}, {6.0, 1.732}, 7.646};
  CHECK(spectrum_distance(r.eigenvalues, expected) <= 5e-3);
  for (std::size_t k = 0; k < 5; ++k) {
    const ComplexVector v = r.eigenvectors->column(k);
    ComplexVector lv = l * v;
    for (std::size_t i = 0; i < 5; ++i) lv[i] -= r.eigenvalues[k] * v[i];
    CHECK(norm_2(lv) <= 1e-12 * l.frobenius_norm());
  }

  const EigenResult id = eigen_decompose(ComplexMatrix::identity(4));
  REQUIRE_FALSE(id.defective());
  for (const Complex& e : id.eigenvalues) CHECK(std::abs(e - 1.0) <= 1e-14);
  const ComplexMatrix& v = *id.eigenvectors;
  CHECK((v.adjoint() * v - ComplexMatrix::identity(4)).frobenius_norm() <= 1e-12);

  const EigenResult chain = eigen_decompose(kChain3);
  CHECK(chain.defective());
  CHECK(spectrum_distance(chain.eigenvalues, ComplexVector{0.0, 1.0, 1.0}) <= 1e-12);

  CHECK_THROWS_AS(eigen_decompose(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("jordan_decompose on the reference digraph") {
  const auto l = directed_laplacian(reference_digraph()).matrix;
  const auto d = jordan_decompose(l);
  CHECK(d.is_diagonalizable);
  CHECK(d.reconstruction_residual <= 1e-8);
  const ComplexVector expected{0.0, 2.354, {6.0, -1.732}, {6.0, 1.732}, 7.646};
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(d.j(k, k) - expected[k]) <= 5e-3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) CHECK(d.j(i, j) == Complex(0.0));

  // Zero-frequency harmonic is the normalized constant vector.
  for (std::size_t i = 0; i < 5; ++i) CHECK(d.v(i, 0) == Complex(1.0 / std::sqrt(5.0)));
  CHECK(d.eigenvalues[0] == Complex(0.0));

  // Real columns agree with the printed basis; complex ones up to phase.
  const ComplexVector col1{0.680, -0.502, -0.502, -0.108, 0.146};
  const ComplexVector col4{-0.535, 0.080, 0.080, -0.125, 0.828};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(d.v(i, 1) - col1[i]) <= 1e-3);
    CHECK(std::abs(d.v(i, 4) - col4[i]) <= 1e-3);
  }
  const ComplexVector col2{{-0.232, -0.134}, {0.232, 0.312}, {-0.502, -0.201}, {0.618, -0.089}, 0.309};
  Complex dot = 0.0;
  for (std::size_t i = 0; i < 5; ++i) dot += std::conj(col2[i]) * d.v(i, 2);
  CHECK(std::abs(dot) >= 0.999);
}

TEST_CASE("jordan_decompose on a defective chain") {
  const auto d = jordan_decompose(kChain3);
  CHECK_FALSE(d.is_diagonalizable);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0].size == 1);
  CHECK(d.blocks[1].size == 2);
  const ComplexMatrix expected_j = {{0.0, 0.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 1.0}};
  CHECK((d.j - expected_j).frobenius_norm() <= 1e-12);
  CHECK(d.reconstruction_residual <= 1e-8);
  CHECK(inverse_residual(d) <= 1e-8 * std::sqrt(3.0));
  CHECK(d.is_proper(0));
  CHECK(d.is_proper(1));
  CHECK_FALSE(d.is_proper(2));
  REQUIRE(d.clusters.size() == 2);
  CHECK(d.clusters[1].algebraic == 2);
  CHECK(d.clusters[1].geometric == 1);
}

TEST_CASE("jordan_decompose on diagonal matrices") {
  const ComplexMatrix a = ComplexMatrix::diagonal(ComplexVector{3.0, -1.0, Complex(0.0, 2.0), 0.5});
  const auto d = jordan_decompose(a);
  CHECK(d.is_diagonalizable);
  ComplexVector diag = d.j.diagonal_entries();
  CHECK(spectrum_distance(diag, a.diagonal_entries()) <= 1e-14);
  // Each basis column is a unit coordinate vector.
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexVector col = d.v.column(k);
    CHECK(norm_inf(col) == doctest::Approx(1.0));
    CHECK(norm_1(col) == doctest::Approx(1.0));
  }

  const auto z = jordan_decompose(ComplexMatrix(3, 3));
  CHECK(z.is_diagonalizable);
  CHECK(z.clusters.size() == 1);
  CHECK(z.clusters[0].geometric == 3);
  CHECK(inverse_residual(z) <= 1e-12);

  const auto rep = jordan_decompose(ComplexMatrix::diagonal(ComplexVector{1.0, 1.0}));
  REQUIRE(rep.clusters.size() == 1);
  CHECK(rep.clusters[0].algebraic == 2);
  CHECK(rep.clusters[0].geometric == 2);
}

TEST_CASE("defective corpus matches the rank oracle") {
  for (const auto& c : testing::defective_corpus()) {
    CAPTURE(c.name);
    const ComplexMatrix l = directed_laplacian(c.graph).matrix;
    const auto d = jordan_decompose(l);
    CHECK(d.reconstruction_residual <= 1e-8);
    CHECK(inverse_residual(d) <= 1e-8 * std::sqrt(double(d.n())));
    for (const Complex& lambda : c.exact_eigenvalues) {
      std::vector<std::size_t> sizes;
      for (const auto& b : d.blocks)
        if (std::abs(b.eigenvalue - lambda) <= 1e-6) sizes.push_back(b.size);
      std::sort(sizes.rbegin(), sizes.rend());
      CHECK(sizes == testing::brute_force_block_sizes(l, lambda));
    }
  }
}

TEST_CASE("decomposition properties on random digraphs") {
  auto rng = testing::rng_for(21);
  for (int seed = 0; seed < 100; ++seed) {
    const Graph g = testing::random_digraph(rng, 2, 50, 0.3);
    const ComplexMatrix l = directed_laplacian(g).matrix;
    CAPTURE(seed);
    const auto d = jordan_decompose(l);
    CHECK(d.reconstruction_residual <= 1e-8);
    CHECK(inverse_residual(d) <= 1e-8 * std::sqrt(double(g.n())));

    Complex sum = 0.0;
    for (const Complex& e : d.eigenvalues) sum += e;
    const Complex tr = l.trace();
    CHECK(std::abs(sum - tr) <= 1e-8 * std::abs(tr) + 1e-10);

    // Real input: nonreal eigenvalues pair with their conjugates.
    for (const Complex& e : d.eigenvalues) {
      if (std::abs(e.imag()) <= 1e-8) continue;
      double best = 1e300;
      for (const Complex& f : d.eigenvalues) best = std::min(best, std::abs(f - std::conj(e)));
      CHECK(best <= 1e-8);
    }
    // Spectrum location for nonnegative weights.
    double radius = 0.0;
    for (const Complex& e : d.eigenvalues) radius = std::max(radius, std::abs(e));
    for (const Complex& e : d.eigenvalues) CHECK(e.real() >= -1e-8 * radius);

    if (seed % 10 == 0) {
      CHECK(spectrum_distance(d.eigenvalues, eigen_library_eigenvalues(l)) <= 1e-8 * (1 + radius));
    }
  }
}

TEST_CASE("defective detection agrees with the rank oracle on small matrices") {
  std::vector<ComplexMatrix> corpus;
  for (const auto& c : testing::defective_corpus())
    if (c.graph.n() <= 6) corpus.push_back(directed_laplacian(c.graph).matrix);
  auto rng = testing::rng_for(22);
  for (int k = 0; k < 20; ++k) corpus.push_back(directed_laplacian(testing::random_digraph(rng, 1, 6)).matrix);
  corpus.push_back(ComplexMatrix::identity(3));
  corpus.push_back(directed_laplacian(ring_graph(4)).matrix);

  for (const auto& a : corpus) {
    const auto d = jordan_decompose(a);
    bool oracle_defective = false;
    for (const auto& c : d.clusters) {
      const std::size_t nullity = a.rows() - testing::brute_force_rank(testing::shifted(a, c.value), 1e-7);
      CHECK(nullity == c.geometric);
      if (nullity < c.algebraic) oracle_defective = true;
    }
    CHECK(eigen_decompose(a).defective() == oracle_defective);
  }
}

TEST_CASE("symmetric eigen decomposition") {
  const ComplexMatrix path = {{1.0, -1.0}, {-1.0, 1.0}};
  const auto d = symmetric_eigen_decompose(path);
  CHECK(d.is_unitary_basis);
  CHECK(d.eigenvalues[0] == Complex(0.0));
  CHECK(std::abs(d.eigenvalues[1] - 2.0) <= 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(d.v(0, 0) - r) <= 1e-14);
  CHECK(std::abs(d.v(1, 0) - r) <= 1e-14);
  CHECK(std::abs(std::abs(d.v(0, 1)) - r) <= 1e-14);
  CHECK(std::abs(d.v(0, 1) + d.v(1, 1)) <= 1e-14);

  const auto z = symmetric_eigen_decompose(ComplexMatrix(3, 3));
  for (const Complex& e : z.eigenvalues) CHECK(e == Complex(0.0));
  CHECK((z.v.transpose() * z.v - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-14);

  // Symmetrized 5-ring: 2 - 2 cos(2 pi k / 5).
  ComplexMatrix ring(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    ring(i, i) = 2.0;
    ring(i, (i + 1) % 5) = -1.0;
    ring(i, (i + 4) % 5) = -1.0;
  }
  const auto rd = symmetric_eigen_decompose(ring);
  ComplexVector circulant;
  for (int k = 0; k < 5; ++k) circulant.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * k / 5.0));
  CHECK(spectrum_distance(rd.eigenvalues, circulant) <= 1e-12);
  CHECK((rd.v.transpose() * rd.v - ComplexMatrix::identity(5)).frobenius_norm() <= 1e-10);
  CHECK(rd.reconstruction_residual <= 1e-12);

  CHECK_THROWS_AS(symmetric_eigen_decompose(ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}}), Error);
  CHECK_THROWS_AS(symmetric_eigen_decompose(ComplexMatrix{{0.0, Complex(0, 1)}, {Complex(0, 1), 0.0}}), Error);
}

TEST_CASE("symmetric path on random undirected graphs") {
  auto rng = testing::rng_for(23);
  for (int seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_undirected(rng, 1, 40);
    const ComplexMatrix l = directed_laplacian(g).matrix;
    const auto d = symmetric_eigen_decompose(l);
    const double n = double(g.n());
    for (const Complex& e : d.eigenvalues) CHECK(e.imag() == 0.0);
    CHECK((d.v.transpose() * d.v - ComplexMatrix::identity(g.n())).frobenius_norm() <= 1e-10 * std::sqrt(n));
    CHECK(d.reconstruction_residual <= 1e-10);
    for (const Complex& e : d.eigenvalues) CHECK(e.real() >= -1e-10 * (1 + l.frobenius_norm()));
  }
}

TEST_CASE("magnitude_order tie handling") {
  const ComplexVector v{Complex(6, 1.732), 7.646, 0.0, Complex(6, -1.732), 2.354};
  CHECK(magnitude_order(v) == std::vector<std::size_t>{2, 4, 3, 0, 1});
  const ComplexVector signs{2.0, -2.0, 1.0};
  CHECK(magnitude_order(signs) == std::vector<std::size_t>{2, 1, 0});
}
