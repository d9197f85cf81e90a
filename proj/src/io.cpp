#include "dgft/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "dgft/error.hpp"
#include "json.hpp"

namespace dgft::io {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

Complex json_to_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw ParseError(0, "signal entries must be numbers or [re, im] pairs");
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  auto fail = [&]() -> Complex {
    throw ParseError(0, "malformed complex value '" + std::string(s) + "'");
  };
  if (s.empty()) return fail();
  if (s.back() != 'i' && s.back() != 'j') {
    double re;
    if (!parse_double(s, re)) return fail();
    return re;
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view t, double& im) {
    if (t.empty() || t == "+") return im = 1.0, true;
    if (t == "-") return im = -1.0, true;
    return parse_double(t, im);
  };
  double re = 0.0, im = 0.0;
  if (split == std::string_view::npos) {
    if (!imag_of(body, im)) return fail();
    return {0.0, im};
  }
  if (!parse_double(body.substr(0, split), re) || !imag_of(body.substr(split), im)) return fail();
  return {re, im};
}

Graph read_edge_list(std::istream& in, BuildOptions opts) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields{std::string(t)};
    std::string a, b, c, extra;
    fields >> a >> b;
    if (!have_header) {
      std::size_t parsed = 0;
      if (a != "nodes" || b.empty() || (fields >> extra) ||
          std::from_chars(b.data(), b.data() + b.size(), parsed).ptr != b.data() + b.size() ||
          parsed == 0) {
        throw ParseError(lineno, "expected header 'nodes N' with N >= 1");
      }
      n = parsed;
      have_header = true;
      continue;
    }
    fields >> c;
    if (c.empty() || (fields >> extra)) throw ParseError(lineno, "expected 'src dst weight'");
    std::size_t src = 0, dst = 0;
    auto parse_label = [&](const std::string& s, std::size_t& out) {
      const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ParseError(lineno, "node label '" + s + "' is not a positive integer");
      if (out < 1 || out > n)
        throw ParseError(lineno, "node label " + s + " outside 1.." + std::to_string(n));
    };
    parse_label(a, src);
    parse_label(b, dst);
    Complex w;
    try {
      w = parse_complex(c);
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
    edges.push_back({src - 1, dst - 1, w});
    edge_lines.push_back(lineno);
  }
  if (!have_header) throw ParseError(lineno, "missing 'nodes N' header");

  // Re-run construction edge by edge only to attribute failures to a line.
  try {
    return build_graph(n, edges, opts);
  } catch (const Error& e) {
    std::vector<Edge> prefix;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      prefix.push_back(edges[k]);
      try {
        build_graph(n, prefix, opts);
      } catch (const Error& inner) {
        throw ParseError(edge_lines[k], std::string(inner.name()) + ": " + inner.what());
      }
    }
    throw ParseError(0, std::string(e.name()) + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_edge_list_file(const std::string& path, BuildOptions opts) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_edge_list(in, opts);
}

GraphSignal parse_signal_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid signal JSON: ") + e.what());
  }
  const json* values = &doc;
  std::optional<std::size_t> declared;
  if (doc.is_object()) {
    if (!doc.contains("values")) throw ParseError(0, "signal object lacks 'values'");
    values = &doc["values"];
    if (doc.contains("n")) {
      if (!doc["n"].is_number_unsigned()) throw ParseError(0, "'n' must be a positive integer");
      declared = doc["n"].get<std::size_t>();
    }
  }
  if (!values->is_array()) throw ParseError(0, "signal values must be an array");
  ComplexVector v;
  for (const auto& e : *values) v.push_back(json_to_complex(e));
  if (declared && *declared != v.size()) {
    throw Error(Errc::DimensionMismatch, "signal declares n = " + std::to_string(*declared) +
                                             " but lists " + std::to_string(v.size()) +
                                             " values");
  }
  return GraphSignal(std::move(v));
}

GraphSignal read_signal_file(const std::string& path) { return parse_signal_json(read_text_file(path)); }

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  const std::string im = format_real(std::abs(z.imag()));
  return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::string signal_to_json(const GraphSignal& s) {
  std::string out = "{\"n\": " + std::to_string(s.n()) + ", \"values\": [";
  for (std::size_t i = 0; i < s.n(); ++i) {
    if (i) out += ", ";
    const Complex z = s.values[i];
    if (z.imag() == 0.0) {
      out += format_real(z.real());
    } else {
      out += "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
    }
  }
  return out + "]}\n";
}

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_complex(m(r, c));
    }
    out << '\n';
  }
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string out = "{\"rows\": " + std::to_string(m.rows()) +
                    ", \"cols\": " + std::to_string(m.cols()) + ", \"data\": [";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      const Complex z = m(r, c);
      out += z.imag() == 0.0 ? format_real(z.real())
                             : "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
    }
    out += "]";
  }
  return out + "]}\n";
}

namespace {
std::vector<std::size_t> row_sequence(const Spectrum& s, RowOrder order) {
  if (order == RowOrder::FrequencyRank) return s.ordering.order;
  std::vector<std::size_t> seq(s.n());
  for (std::size_t k = 0; k < seq.size(); ++k) seq[k] = k;
  return seq;
}
}  // namespace

void write_spectrum_csv(std::ostream& out, const Spectrum& s, RowOrder order) {
  const auto rank = s.ordering.rank_of();
  out << kSpectrumCsvHeader << '\n';
  for (std::size_t idx : row_sequence(s, order)) {
    const Complex e = s.eigenvalues[idx];
    const Complex c = s.coefficients[idx];
    out << idx << ',' << format_real(e.real()) << ',' << format_real(e.imag()) << ','
        << format_real(c.real()) << ',' << format_real(c.imag()) << ','
        << format_real(std::abs(c)) << ',' << rank[idx] << '\n';
  }
}

std::string spectrum_to_json(const Spectrum& s, RowOrder order) {
  const auto rank = s.ordering.rank_of();
  std::string out = "[";
  bool first = true;
  for (std::size_t idx : row_sequence(s, order)) {
    const Complex e = s.eigenvalues[idx];
    const Complex c = s.coefficients[idx];
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += "{\"spectral_index\": " + std::to_string(idx) +
           ", \"eig_re\": " + format_real(e.real()) + ", \"eig_im\": " + format_real(e.imag()) +
           ", \"coeff_re\": " + format_real(c.real()) +
           ", \"coeff_im\": " + format_real(c.imag()) +
           ", \"magnitude\": " + format_real(std::abs(c)) +
           ", \"frequency_rank\": " + std::to_string(rank[idx]) + "}";
  }
  return out + "\n]\n";
}

ComplexVector read_spectrum_coefficients(std::string_view text) {
  const std::string_view t = trim(text);
  std::vector<std::pair<std::size_t, Complex>> rows;
  if (!t.empty() && (t.front() == '[' || t.front() == '{')) {
    json doc;
    try {
      doc = json::parse(t);
    } catch (const json::parse_error& e) {
      throw ParseError(0, std::string("invalid spectrum JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("rows")) doc = doc["rows"];
    if (!doc.is_array()) throw ParseError(0, "spectrum JSON must be an array of rows");
    for (const auto& r : doc) {
      if (!r.is_object() || !r.contains("spectral_index") || !r.contains("coeff_re") ||
          !r.contains("coeff_im"))
        throw ParseError(0, "spectrum row lacks spectral_index/coeff_re/coeff_im");
      rows.emplace_back(r["spectral_index"].get<std::size_t>(),
                        Complex(r["coeff_re"].get<double>(), r["coeff_im"].get<double>()));
    }
  } else {
    std::istringstream in{std::string(t)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view l = trim(line);
      if (l.empty() || l.front() == '#') continue;
      if (!header) {
        if (l != kSpectrumCsvHeader) throw ParseError(lineno, "unexpected spectrum CSV header");
        header = true;
        continue;
      }
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls{std::string(l)};
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() != 7) throw ParseError(lineno, "expected 7 columns");
      std::size_t idx = 0;
      double re = 0, im = 0;
      const auto r = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), idx);
      if (r.ec != std::errc() || !parse_double(cells[3], re) || !parse_double(cells[4], im))
        throw ParseError(lineno, "malformed spectrum row");
      rows.emplace_back(idx, Complex(re, im));
    }
    if (!header) throw ParseError(0, "empty spectrum CSV");
  }
  ComplexVector coeffs(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [idx, c] : rows) {
    if (idx >= rows.size() || seen[idx])
      throw ParseError(0, "spectral indices must be a permutation of 0..N-1");
    seen[idx] = true;
    coeffs[idx] = c;
  }
  return coeffs;
}

}  // namespace dgft::io
