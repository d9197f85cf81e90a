#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dgft/error.hpp"
#include "dgft/filters.hpp"
#include "dgft/io.hpp"
#include "dgft/spectral.hpp"
#include "json.hpp"

namespace dgft::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string graph;
  std::string signal;
  std::string spectrum;
  std::size_t ring_n = 0;
  std::string matrix = "l";
  std::string format = "csv";
  std::string order = "natural";
  std::string domain = "vertex";
  std::string taps;
  std::string basis = "canonical";
  std::string output;
  double tol_cluster = 0.0;
  double tol_defect = 0.0;
  double tol_recon = 1e-8;
  bool sum_duplicates = false;

  DecompositionOptions decomposition() const {
    DecompositionOptions o;
    o.cluster_tol = tol_cluster;
    o.defect_tol = tol_defect;
    o.recon_tol = tol_recon;
    o.canonical_basis = basis == "canonical";
    return o;
  }
};

void write_number(std::string& out, const Json& v) {
  if (v.is_number_integer()) {
    out += v.dump();
  } else {
    const double x = v.get<double>();
    out += std::isfinite(x) ? io::format_real(x) : "null";
  }
}

// nlohmann's dump uses shortest round-trip floats; reports use %.17g so
// they stay byte-identical with the CSV writers.
void dump(std::string& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    if (v.empty()) return void(out += "{}");
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump(out, it.value(), indent + 2);
    }
    out += "\n" + close + "}";
  } else if (v.is_array()) {
    if (v.empty()) return void(out += "[]");
    const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        dump(out, v[k], indent);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ",\n";
      out += pad;
      dump(out, v[k], indent + 2);
    }
    out += "\n" + close + "]";
  } else if (v.is_number()) {
    write_number(out, v);
  } else {
    out += v.dump();
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Graph load_graph(const RunConfig& cfg) {
  if (cfg.graph == "ring") {
    if (cfg.ring_n < 2) throw ParseError(0, "ring generator needs --n >= 2");
    return ring_graph(cfg.ring_n);
  }
  return io::read_edge_list_file(cfg.graph, BuildOptions{cfg.sum_duplicates});
}

ComplexVector parse_taps(const std::string& text) {
  ComplexVector taps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    taps.push_back(io::parse_complex(item));
  }
  if (taps.empty()) throw Error(Errc::EmptyTaps, "no filter taps given");
  return taps;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParseError(0, "cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void cmd_laplacian(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  ComplexMatrix m;
  if (cfg.matrix == "w") {
    m = g.weights();
  } else if (cfg.matrix == "din") {
    m = in_degree_matrix(g);
  } else {
    m = directed_laplacian(g).matrix;
  }
  if (cfg.format == "json") {
    out << io::matrix_to_json(m);
  } else {
    io::write_matrix_csv(out, m);
  }
}

void require_signal_size(const Graph& g, const GraphSignal& f) {
  if (g.n() != f.n()) {
    throw Error(Errc::DimensionMismatch, "signal has " + std::to_string(f.n()) +
                                             " entries, graph has " + std::to_string(g.n()) +
                                             " nodes");
  }
}

void cmd_gft(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const GraphSignal f = io::read_signal_file(cfg.signal);
  require_signal_size(g, f);
  const auto d = decompose(g, cfg.decomposition());
  const Spectrum s = gft(d, f);
  const auto order = cfg.order == "natural" ? io::RowOrder::FrequencyRank : io::RowOrder::SpectralIndex;
  if (cfg.format == "json") {
    out << io::spectrum_to_json(s, order);
  } else {
    io::write_spectrum_csv(out, s, order);
  }
}

void cmd_igft(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const ComplexVector coeffs = io::read_spectrum_coefficients(io::read_text_file(cfg.spectrum));
  if (coeffs.size() != g.n()) {
    throw Error(Errc::DimensionMismatch, "spectrum has " + std::to_string(coeffs.size()) +
                                             " rows, graph has " + std::to_string(g.n()) +
                                             " nodes");
  }
  const auto d = decompose(g, cfg.decomposition());
  out << io::signal_to_json(igft(d, coeffs));
}

void cmd_filter(const RunConfig& cfg, std::ostream& out) {
  const LsiFilter h(parse_taps(cfg.taps));
  const Graph g = load_graph(cfg);
  const GraphSignal f = io::read_signal_file(cfg.signal);
  require_signal_size(g, f);
  GraphSignal y;
  if (cfg.domain == "spectral") {
    y = apply_spectral_domain(decompose(g, cfg.decomposition()), h, f);
  } else {
    y = apply_vertex_domain(directed_laplacian(g), h, f);
  }
  out << io::signal_to_json(y);
}

void cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const DirectedLaplacian l = directed_laplacian(g);
  const bool symmetric = g.is_undirected() && g.is_real();
  const auto d = decompose(l, symmetric, cfg.decomposition());
  const FrequencyOrdering ord = order_frequencies(d.eigenvalues);
  const auto rank = ord.rank_of();

  Json eig = Json::array();
  for (std::size_t k = 0; k < d.n(); ++k) {
    Json e;
    e["spectral_index"] = k;
    e["eigenvalue"] = complex_json(d.eigenvalues[k]);
    e["magnitude"] = std::abs(d.eigenvalues[k]);
    e["frequency_rank"] = rank[k];
    e["proper"] = d.is_proper(k);
    if (d.is_proper(k)) {
      ComplexVector v = d.v.column(k);
      const double n1 = norm_1(v);
      for (auto& x : v) x /= n1;
      e["total_variation"] = total_variation(l, GraphSignal(std::move(v)));
    } else {
      e["total_variation"] = nullptr;
    }
    eig.push_back(std::move(e));
  }

  Json ties = Json::array();
  for (const RankRange& r : ord.tie_groups) {
    Json members = Json::array();
    for (std::size_t k = r.begin; k < r.end; ++k) members.push_back(ord.order[k]);
    ties.push_back(std::move(members));
  }
  Json mult = Json::array();
  for (const auto& c : d.clusters) {
    Json e;
    e["eigenvalue"] = complex_json(c.value);
    e["algebraic"] = c.algebraic;
    e["geometric"] = c.geometric;
    mult.push_back(std::move(e));
  }
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json e;
    e["eigenvalue"] = complex_json(b.eigenvalue);
    e["size"] = b.size;
    e["start"] = b.start;
    blocks.push_back(std::move(e));
  }

  Json report;
  report["n"] = g.n();
  report["undirected"] = g.is_undirected();
  report["real_nonnegative"] = g.is_real_nonnegative();
  report["method"] = symmetric ? "symmetric" : "jordan";
  report["diagonalizable"] = d.is_diagonalizable;
  report["condition_estimate"] = d.condition_estimate;
  report["ill_conditioned"] = d.ill_conditioned;
  report["reconstruction_residual"] = d.reconstruction_residual;
  report["eigenvalues"] = std::move(eig);
  report["frequency_order"] = ord.order;
  report["tie_groups"] = std::move(ties);
  const std::size_t lo = ord.order.front(), hi = ord.order.back();
  report["lowest_frequency"] = {{"spectral_index", lo}, {"eigenvalue", complex_json(d.eigenvalues[lo])}};
  report["highest_frequency"] = {{"spectral_index", hi}, {"eigenvalue", complex_json(d.eigenvalues[hi])}};
  report["multiplicities"] = std::move(mult);
  report["blocks"] = std::move(blocks);
  report["polynomials_span_commutant"] = check_lsi_preconditions(d).polynomials_span_commutant;

  std::string text;
  dump(text, report, 0);
  out << text << '\n';
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return kDimension;
    case Errc::NoConvergence:
    case Errc::Singular:
    case Errc::NotSymmetric:
    case Errc::NonSquare: return kNumeric;
    default: return kParse;
  }
}

void add_graph_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("graph", cfg.graph, "Edge-list file, or 'ring' with --n")->required();
  sub->add_option("--n", cfg.ring_n, "Node count for the ring generator");
  sub->add_flag("--sum-duplicates", cfg.sum_duplicates, "Add repeated edges instead of failing");
}

constexpr const char* kTolClusterEnv = "DGFT_TOL_CLUSTER";

/// Returns the --tol-cluster option, which also reads kTolClusterEnv.
CLI::Option* add_decomposition_options(CLI::App* sub, RunConfig& cfg) {
  auto* cluster = sub->add_option("--tol-cluster", cfg.tol_cluster,
                  "Eigenvalue clustering distance (default max(1e-8, 1e-6*||L||_F/N))")
      ->envname(kTolClusterEnv)
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol-defect", cfg.tol_defect,
                  "Relative rank threshold for Jordan chains (default tol-cluster/||L||_F)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol-recon", cfg.tol_recon, "Accepted ||VJV^-1 - L||_F / ||L||_F")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--basis", cfg.basis, "Eigenvector convention")
      ->check(CLI::IsMember({"canonical", "raw"}))
      ->capture_default_str();
  return cluster;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph Fourier transform on the directed Laplacian", "dgft"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::pair<CLI::App*, CLI::Option*>> cluster_opts;

  auto* lap = app.add_subcommand("laplacian", "Print W, D_in or L");
  add_graph_options(lap, cfg);
  lap->add_option("--matrix", cfg.matrix)->check(CLI::IsMember({"w", "din", "l"}))->capture_default_str();

  auto* fwd = app.add_subcommand("gft", "Forward transform of a signal");
  add_graph_options(fwd, cfg);
  fwd->add_option("signal", cfg.signal, "Signal JSON file")->required();
  fwd->add_option("--order", cfg.order, "Row order")
      ->check(CLI::IsMember({"natural", "spectral-index"}))
      ->capture_default_str();
  cluster_opts.emplace_back(fwd, add_decomposition_options(fwd, cfg));

  auto* inv = app.add_subcommand("igft", "Inverse transform of a spectrum file");
  add_graph_options(inv, cfg);
  inv->add_option("spectrum", cfg.spectrum, "Spectrum CSV or JSON file")->required();
  cluster_opts.emplace_back(inv, add_decomposition_options(inv, cfg));

  auto* flt = app.add_subcommand("filter", "Apply a polynomial graph filter");
  add_graph_options(flt, cfg);
  flt->add_option("signal", cfg.signal, "Signal JSON file")->required();
  flt->add_option("--taps", cfg.taps, "Comma-separated taps h0,h1,...")->required();
  flt->add_option("--domain", cfg.domain)->check(CLI::IsMember({"vertex", "spectral"}))->capture_default_str();
  cluster_opts.emplace_back(flt, add_decomposition_options(flt, cfg));

  auto* ana = app.add_subcommand("analyze", "Spectrum, ordering and multiplicity report");
  add_graph_options(ana, cfg);
  cluster_opts.emplace_back(ana, add_decomposition_options(ana, cfg));

  for (auto* sub : {lap, fwd}) {
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }
  for (auto* sub : {lap, fwd, inv, flt, ana}) sub->add_option("-o,--output", cfg.output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }

  // CLI11 silently drops environment values that fail validation.
  const char* env = std::getenv(kTolClusterEnv);
  for (const auto& [sub, opt] : cluster_opts) {
    if (env && *env && sub->parsed() && opt->count() == 0) {
      err << "error: " << kTolClusterEnv << "='" << env << "' is not a positive number\n";
      return kParse;
    }
  }

  try {
    Output sink(cfg.output, out);
    if (lap->parsed()) cmd_laplacian(cfg, sink.get());
    if (fwd->parsed()) cmd_gft(cfg, sink.get());
    if (inv->parsed()) cmd_igft(cfg, sink.get());
    if (flt->parsed()) cmd_filter(cfg, sink.get());
    if (ana->parsed()) cmd_analyze(cfg, sink.get());
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}

}  // namespace dgft::cli
