#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dgft/complex_matrix.hpp"

namespace dgft {

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

/// A = Z T Z^H with T upper triangular and Z unitary.
struct SchurForm {
  ComplexMatrix t;
  ComplexMatrix z;
};

/// Householder reduction to upper Hessenberg form followed by implicitly
/// shifted single-shift QR sweeps (Wilkinson shift, exceptional shifts every
/// ten stalled sweeps). Throws NonSquare, NoConvergence after 30*N sweeps.
SchurForm complex_schur(const ComplexMatrix& a);

/// Thin SVD A = U diag(sigma) V^H by one-sided Jacobi rotations. sigma is
/// sorted descending; U columns paired with zero sigma are left zero.
struct SingularValueDecomposition {
  ComplexMatrix u;
  std::vector<double> sigma;
  ComplexMatrix v;
};
SingularValueDecomposition jacobi_svd(const ComplexMatrix& a);

/// Orthonormal basis (as columns) of the numerical null space of a, i.e.
/// right singular vectors whose singular value is <= threshold.
ComplexMatrix null_space(const ComplexMatrix& a, double threshold);

/// LU factorization with partial pivoting, P A = L U.
class LuFactorization {
 public:
  /// Throws NonSquare, or Singular when a pivot falls below
  /// 1e-14 * ||a||_F.
  explicit LuFactorization(const ComplexMatrix& a);

  ComplexVector solve(std::span<const Complex> b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;
  ComplexMatrix inverse() const;
  Complex determinant() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

ComplexMatrix invert(const ComplexMatrix& a);

/// h_0 I + h_1 a + ... + h_{M-1} a^{M-1} by Horner's rule. Throws EmptyTaps.
ComplexMatrix matrix_polynomial(const ComplexMatrix& a, std::span<const Complex> taps);

/// Permutation sorting values by modulus (ties within 1e-10 relative broken
/// by real part, then imaginary part). Shared by decompositions and the
/// frequency ordering so the two always agree.
std::vector<std::size_t> magnitude_order(std::span<const Complex> values);

// ---------------------------------------------------------------------------
// Spectral decompositions
// ---------------------------------------------------------------------------

struct DecompositionOptions {
  /// Eigenvalues closer than this are merged. 0 selects
  /// max(1e-8, 1e-6 * ||A||_F / N).
  double cluster_tol = 0.0;
  /// Relative rank threshold for null spaces of (A - lambda I)^k. 0 selects
  /// cluster_tol / ||A||_F.
  double defect_tol = 0.0;
  /// Acceptance bound on ||V J V^-1 - A||_F / ||A||_F.
  double recon_tol = 1e-8;
  /// When a clustering level leaves V ill-conditioned, retry with the
  /// cluster tolerance raised by decades (up to 1e-3 * ||A||_F).
  bool adaptive_clustering = true;
  /// Unit l2 columns, largest entry real positive, constant null vector.
  bool canonical_basis = true;
};

struct JordanBlock {
  Complex eigenvalue;
  std::size_t size;
  /// Column of V holding the proper eigenvector (chain head).
  std::size_t start;
  std::size_t cluster;
};

/// A distinct eigenvalue after clustering.
struct EigenvalueCluster {
  Complex value;
  std::size_t algebraic;
  std::size_t geometric;
};

struct SpectralDecomposition {
  ComplexMatrix v;
  ComplexMatrix j;
  ComplexMatrix v_inv;
  ComplexVector eigenvalues;
  std::vector<JordanBlock> blocks;
  std::vector<EigenvalueCluster> clusters;
  bool is_diagonalizable = true;
  bool is_unitary_basis = false;
  /// ||V||_1 ||V^-1||_1.
  double condition_estimate = 1.0;
  /// Raised when condition_estimate exceeds 1e12; the result is still valid.
  bool ill_conditioned = false;
  double reconstruction_residual = 0.0;
  double cluster_tol = 0.0;

  std::size_t n() const noexcept { return eigenvalues.size(); }
  /// True when column k of V satisfies A v = lambda v.
  bool is_proper(std::size_t k) const;
  std::vector<std::size_t> proper_columns() const;
};

/// Eigenvalues plus, when every eigenvalue is nondefective, an eigenvector
/// matrix. A missing eigenvector matrix is the Defective marker.
struct EigenResult {
  ComplexVector eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;

  bool defective() const noexcept { return !eigenvectors.has_value(); }
};

EigenResult eigen_decompose(const ComplexMatrix& a, const DecompositionOptions& opts = {});

SpectralDecomposition jordan_decompose(const ComplexMatrix& a,
                                       const DecompositionOptions& opts = {});

/// Tridiagonalization plus implicit symmetric QR. V is real orthonormal,
/// v_inv = V^T. Throws NotSymmetric unless a is real and symmetric within
/// 1e-12 entrywise.
SpectralDecomposition symmetric_eigen_decompose(const ComplexMatrix& a,
                                                const DecompositionOptions& opts = {});

/// ||V J V^-1 - A||_F / ||A||_F (absolute when A = 0).
double reconstruction_residual(const SpectralDecomposition& d, const ComplexMatrix& a);

}  // namespace dgft
