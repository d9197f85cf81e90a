#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dgft/graph.hpp"
#include "dgft/spectral.hpp"

namespace dgft::io {

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i` style complex literals.
/// Throws ParseError (line 0) on malformed input.
Complex parse_complex(std::string_view text);

/// Edge-list text: `#` comments, a required `nodes N` header, then one
/// `src dst weight` line per edge with 1-based node labels. Graph
/// construction failures are reported as ParseError with the line number.
Graph read_edge_list(std::istream& in, BuildOptions opts = {});
Graph read_edge_list_file(const std::string& path, BuildOptions opts = {});

/// `{"n": N, "values": [...]}` or a bare array; entries are numbers or
/// [re, im] pairs.
GraphSignal parse_signal_json(std::string_view text);
GraphSignal read_signal_file(const std::string& path);
/// Always writes the object form; real values as numbers, else [re, im].
std::string signal_to_json(const GraphSignal& s);

/// `%.17g`, with negative zero printed as 0.
std::string format_real(double x);
/// Real numbers plain, otherwise `a+bi` / `a-bi`.
std::string format_complex(Complex z);

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m);
std::string matrix_to_json(const ComplexMatrix& m);

enum class RowOrder { FrequencyRank, SpectralIndex };

inline constexpr std::string_view kSpectrumCsvHeader =
    "spectral_index,eig_re,eig_im,coeff_re,coeff_im,magnitude,frequency_rank";

void write_spectrum_csv(std::ostream& out, const Spectrum& s, RowOrder order);
std::string spectrum_to_json(const Spectrum& s, RowOrder order);

/// Reads either spectrum format back into coefficients indexed by
/// spectral index. Throws ParseError.
ComplexVector read_spectrum_coefficients(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace dgft::io
