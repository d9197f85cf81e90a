#pragma once

#include <cstddef>
#include <vector>

#include "dgft/error.hpp"
#include "dgft/graph.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

/// Polynomial graph filter H = sum_m taps[m] L^m.
class LsiFilter {
 public:
  /// Throws EmptyTaps.
  explicit LsiFilter(ComplexVector taps);

  const ComplexVector& taps() const noexcept { return taps_; }
  std::size_t size() const noexcept { return taps_.size(); }
  /// Taps with trailing zeros removed (at least one tap kept).
  ComplexVector trimmed() const;

  /// h(z).
  Complex evaluate(Complex z) const;
  /// h^{(k)}(z) / k!, exact for a polynomial.
  Complex taylor_coefficient(Complex z, std::size_t k) const;

 private:
  ComplexVector taps_;
};

/// Horner evaluation of h(L) f given only a mat-vec callable; uses exactly
/// taps.size() - 1 products.
template <class MatVec>
ComplexVector horner_apply(MatVec&& matvec, std::span<const Complex> taps,
                           std::span<const Complex> f) {
  if (taps.empty()) throw Error(Errc::EmptyTaps, "filter needs at least one tap");
  ComplexVector y(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) y[i] = taps.back() * f[i];
  for (std::size_t m = taps.size() - 1; m-- > 0;) {
    y = matvec(std::span<const Complex>(y));
    for (std::size_t i = 0; i < f.size(); ++i) y[i] += taps[m] * f[i];
  }
  return y;
}

/// h(L) f by repeated mat-vec products; h(L) is never formed.
GraphSignal apply_vertex_domain(const DirectedLaplacian& l, const LsiFilter& h,
                                const GraphSignal& f);

/// V h(J) V^-1 f, with h applied blockwise to J (Taylor terms on chains).
GraphSignal apply_spectral_domain(const SpectralDecomposition& d, const LsiFilter& h,
                                  const GraphSignal& f);

/// Explicit h(L), for invariance checks.
ComplexMatrix materialize(const DirectedLaplacian& l, const LsiFilter& h);

struct ShiftInvarianceCheck {
  bool invariant;
  /// ||L H - H L||_F.
  double residual;
};

/// invariant iff residual <= tol * ||L||_F * ||H||_F.
ShiftInvarianceCheck is_shift_invariant(const DirectedLaplacian& l, const ComplexMatrix& h,
                                        double tol);

struct LsiPreconditionReport {
  std::vector<EigenvalueCluster> eigenvalues;
  /// Every distinct eigenvalue has geometric multiplicity one, so every
  /// filter commuting with L is a polynomial in L.
  bool polynomials_span_commutant;
};

LsiPreconditionReport check_lsi_preconditions(const SpectralDecomposition& d);

}  // namespace dgft
