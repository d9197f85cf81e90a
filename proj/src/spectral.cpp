#include "dgft/spectral.hpp"

#include <cmath>

#include "dgft/error.hpp"

namespace dgft {

std::vector<std::size_t> FrequencyOrdering::rank_of() const {
  std::vector<std::size_t> r(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) r[order[k]] = k;
  return r;
}

FrequencyOrdering order_frequencies(std::span<const Complex> eigenvalues) {
  FrequencyOrdering out;
  out.order = magnitude_order(eigenvalues);
  const std::size_t n = out.order.size();
  out.magnitudes.resize(n);
  std::size_t i = 0;
  while (i < n) {
    const double head = std::abs(eigenvalues[out.order[i]]);
    std::size_t j = i + 1;
    double lo = head;
    while (j < n) {
      const double m = std::abs(eigenvalues[out.order[j]]);
      if (std::abs(m - head) > 1e-10 * (1.0 + head)) break;
      lo = std::min(lo, m);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) out.magnitudes[k] = lo;
    if (j - i > 1) out.tie_groups.push_back({i, j});
    i = j;
  }
  return out;
}

SpectralDecomposition decompose(const DirectedLaplacian& l, bool symmetric,
                                const DecompositionOptions& opts) {
  return symmetric ? symmetric_eigen_decompose(l.matrix, opts)
                   : jordan_decompose(l.matrix, opts);
}

SpectralDecomposition decompose(const Graph& g, const DecompositionOptions& opts) {
  return decompose(directed_laplacian(g), g.is_undirected() && g.is_real(), opts);
}

GraphSignal shift(const DirectedLaplacian& l, const GraphSignal& f) {
  require_same_size(l, f);
  const ComplexVector lf = l.matrix * f.values;
  return GraphSignal(subtract(f.values, lf));
}

double total_variation(const DirectedLaplacian& l, const GraphSignal& f) {
  require_same_size(l, f);
  return norm_1(l.matrix * f.values);
}

double quadratic_form(const DirectedLaplacian& l, const GraphSignal& f) {
  require_same_size(l, f);
  double sq = 0.0;
  for (const Complex& x : l.matrix * f.values) sq += std::norm(x);
  return 0.5 * sq;
}

namespace {
void require_same_size(const SpectralDecomposition& d, std::size_t n) {
  if (d.n() != n) {
    throw Error(Errc::DimensionMismatch, "length " + std::to_string(n) +
                                             " does not match decomposition of size " +
                                             std::to_string(d.n()));
  }
}
}  // namespace

Spectrum gft(const SpectralDecomposition& d, const GraphSignal& f) {
  require_same_size(d, f.n());
  Spectrum s;
  s.coefficients = d.v_inv * f.values;
  s.eigenvalues = d.eigenvalues;
  s.ordering = order_frequencies(d.eigenvalues);
  return s;
}

GraphSignal igft(const SpectralDecomposition& d, std::span<const Complex> coefficients) {
  require_same_size(d, coefficients.size());
  return GraphSignal(d.v * coefficients);
}

GraphSignal igft(const SpectralDecomposition& d, const Spectrum& s) {
  return igft(d, std::span<const Complex>(s.coefficients));
}

}  // namespace dgft
