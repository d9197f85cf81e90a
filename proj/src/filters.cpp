#include "dgft/filters.hpp"

#include <algorithm>

namespace dgft {

LsiFilter::LsiFilter(ComplexVector taps) : taps_(std::move(taps)) {
  if (taps_.empty()) throw Error(Errc::EmptyTaps, "filter needs at least one tap");
}

ComplexVector LsiFilter::trimmed() const {
  ComplexVector t = taps_;
  while (t.size() > 1 && t.back() == 0.0) t.pop_back();
  return t;
}

Complex LsiFilter::evaluate(Complex z) const { return taylor_coefficient(z, 0); }

Complex LsiFilter::taylor_coefficient(Complex z, std::size_t k) const {
  // sum_{m>=k} taps[m] C(m, k) z^{m-k}, by Horner on the shifted taps.
  if (k >= taps_.size()) return 0.0;
  Complex acc = 0.0;
  for (std::size_t m = taps_.size(); m-- > k;) {
    double binom = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
      binom = binom * static_cast<double>(m - k + i) / static_cast<double>(i);
    acc = acc * z + taps_[m] * binom;
  }
  return acc;
}

GraphSignal apply_vertex_domain(const DirectedLaplacian& l, const LsiFilter& h,
                                const GraphSignal& f) {
  require_same_size(l, f);
  auto matvec = [&](std::span<const Complex> x) { return l.matrix * x; };
  return GraphSignal(horner_apply(matvec, h.taps(), f.values));
}

GraphSignal apply_spectral_domain(const SpectralDecomposition& d, const LsiFilter& h,
                                  const GraphSignal& f) {
  if (d.n() != f.n()) throw Error(Errc::DimensionMismatch, "signal length");
  const ComplexVector coeffs = d.v_inv * f.values;
  ComplexVector out(coeffs.size());
  for (const JordanBlock& b : d.blocks) {
    // h(J_b) is upper triangular Toeplitz with h^{(k)}(lambda)/k! on the
    // k-th superdiagonal.
    ComplexVector taylor(b.size);
    for (std::size_t k = 0; k < b.size; ++k) taylor[k] = h.taylor_coefficient(b.eigenvalue, k);
    for (std::size_t r = 0; r < b.size; ++r) {
      Complex s = 0.0;
      for (std::size_t c = r; c < b.size; ++c) s += taylor[c - r] * coeffs[b.start + c];
      out[b.start + r] = s;
    }
  }
  return GraphSignal(d.v * out);
}

ComplexMatrix materialize(const DirectedLaplacian& l, const LsiFilter& h) {
  return matrix_polynomial(l.matrix, h.taps());
}

ShiftInvarianceCheck is_shift_invariant(const DirectedLaplacian& l, const ComplexMatrix& h,
                                        double tol) {
  if (!h.is_square() || h.rows() != l.n())
    throw Error(Errc::DimensionMismatch, "filter matrix must match the Laplacian");
  const double residual = (l.matrix * h - h * l.matrix).frobenius_norm();
  const double bound = tol * l.matrix.frobenius_norm() * h.frobenius_norm();
  return {residual <= bound, residual};
}

LsiPreconditionReport check_lsi_preconditions(const SpectralDecomposition& d) {
  LsiPreconditionReport r{d.clusters, true};
  r.polynomials_span_commutant =
      std::all_of(d.clusters.begin(), d.clusters.end(),
                  [](const EigenvalueCluster& c) { return c.geometric == 1; });
  return r;
}

}  // namespace dgft
