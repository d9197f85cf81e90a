#pragma once

#include <cstddef>
#include <vector>

#include "dgft/graph.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

/// Half-open range [begin, end) of frequency ranks.
struct RankRange {
  std::size_t begin;
  std::size_t end;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const RankRange&, const RankRange&) = default;
};

/// Spectral indices sorted low to high frequency.
struct FrequencyOrdering {
  /// order[rank] is the spectral index (column of V) at that rank.
  std::vector<std::size_t> order;
  /// |lambda| per rank. Members of a tie group report the group's smallest
  /// modulus so the sequence is non-decreasing.
  std::vector<double> magnitudes;
  /// Runs of two or more ranks whose |lambda| agree within 1e-10 relative;
  /// order inside a run is a convention, not a frequency ranking.
  std::vector<RankRange> tie_groups;

  /// rank_of()[spectral_index] = frequency rank.
  std::vector<std::size_t> rank_of() const;
};

FrequencyOrdering order_frequencies(std::span<const Complex> eigenvalues);

struct Spectrum {
  /// GFT coefficients indexed by spectral index.
  ComplexVector coefficients;
  ComplexVector eigenvalues;
  FrequencyOrdering ordering;

  std::size_t n() const noexcept { return coefficients.size(); }
  Complex at_rank(std::size_t rank) const { return coefficients.at(ordering.order.at(rank)); }
};

/// Picks the symmetric path for undirected real graphs and the Jordan path
/// otherwise.
SpectralDecomposition decompose(const Graph& g, const DecompositionOptions& opts = {});
SpectralDecomposition decompose(const DirectedLaplacian& l, bool symmetric,
                                const DecompositionOptions& opts = {});

/// (I - L) f.
GraphSignal shift(const DirectedLaplacian& l, const GraphSignal& f);

/// ||L f||_1 with the complex modulus.
double total_variation(const DirectedLaplacian& l, const GraphSignal& f);

/// 0.5 ||L f||_2^2.
double quadratic_form(const DirectedLaplacian& l, const GraphSignal& f);

Spectrum gft(const SpectralDecomposition& d, const GraphSignal& f);
GraphSignal igft(const SpectralDecomposition& d, const Spectrum& s);
GraphSignal igft(const SpectralDecomposition& d, std::span<const Complex> coefficients);

}  // namespace dgft
