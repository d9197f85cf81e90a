#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "dgft/error.hpp"
#include "dgft/filters.hpp"
#include "dgft/graph.hpp"
#include "dgft/io.hpp"
#include "dgft/linalg.hpp"
#include "dgft/spectral.hpp"

namespace py = pybind11;
using namespace dgft;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw Error(Errc::InvalidArgument, "expected a 2-D array");
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
  return m;
}

ComplexVector to_vector(const CArray& a) {
  if (a.ndim() != 1) throw Error(Errc::InvalidArgument, "expected a 1-D array");
  return ComplexVector(a.data(), a.data() + a.size());
}

CArray from_matrix(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

CArray from_vector(const ComplexVector& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

DecompositionOptions options(double tol_cluster, double tol_defect, double tol_recon, bool canonical) {
  DecompositionOptions o;
  o.cluster_tol = tol_cluster;
  o.defect_tol = tol_defect;
  o.recon_tol = tol_recon;
  o.canonical_basis = canonical;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph Fourier transform on the directed Laplacian.";

  static py::exception<Error> error(m, "DgftError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (code name, message)
      PyErr_SetObject(error.ptr(), py::make_tuple(e.name(), e.what()).ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](const CArray& w) { return Graph(to_matrix(w)); }), py::arg("weights"),
           "Graph from an N x N weight matrix; weights[i, j] is the edge j -> i.")
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("weights", [](const Graph& g) { return from_matrix(g.weights()); })
      .def_property_readonly("is_undirected", &Graph::is_undirected)
      .def_property_readonly("is_real_nonnegative", &Graph::is_real_nonnegative)
      .def("__repr__", [](const Graph& g) { return "<dgft.Graph n=" + std::to_string(g.n()) + ">"; });

  m.def(
      "build_graph",
      [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Complex>>& edges,
         bool sum_duplicates) {
        std::vector<Edge> es;
        for (const auto& [s, d, w] : edges) es.push_back({s, d, w});
        return build_graph(n, es, BuildOptions{sum_duplicates});
      },
      py::arg("n"), py::arg("edges"), py::arg("sum_duplicates") = false,
      "Graph from 0-based (src, dst, weight) triples.");
  m.def("ring_graph", &ring_graph, py::arg("n"));
  m.def("reference_digraph", &reference_digraph);
  m.def(
      "read_edge_list", [](const std::string& path, bool sum_duplicates) {
        return io::read_edge_list_file(path, BuildOptions{sum_duplicates});
      },
      py::arg("path"), py::arg("sum_duplicates") = false);

  m.def("in_degree_matrix", [](const Graph& g) { return from_matrix(in_degree_matrix(g)); });
  m.def("laplacian", [](const Graph& g) { return from_matrix(directed_laplacian(g).matrix); });

  py::class_<JordanBlock>(m, "JordanBlock")
      .def_readonly("eigenvalue", &JordanBlock::eigenvalue)
      .def_readonly("size", &JordanBlock::size)
      .def_readonly("start", &JordanBlock::start);

  py::class_<EigenvalueCluster>(m, "EigenvalueCluster")
      .def_readonly("value", &EigenvalueCluster::value)
      .def_readonly("algebraic", &EigenvalueCluster::algebraic)
      .def_readonly("geometric", &EigenvalueCluster::geometric);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_property_readonly("v", [](const SpectralDecomposition& d) { return from_matrix(d.v); })
      .def_property_readonly("j", [](const SpectralDecomposition& d) { return from_matrix(d.j); })
      .def_property_readonly("v_inv", [](const SpectralDecomposition& d) { return from_matrix(d.v_inv); })
      .def_property_readonly("eigenvalues",
                             [](const SpectralDecomposition& d) { return from_vector(d.eigenvalues); })
      .def_readonly("blocks", &SpectralDecomposition::blocks)
      .def_readonly("clusters", &SpectralDecomposition::clusters)
      .def_readonly("is_diagonalizable", &SpectralDecomposition::is_diagonalizable)
      .def_readonly("is_unitary_basis", &SpectralDecomposition::is_unitary_basis)
      .def_readonly("condition_estimate", &SpectralDecomposition::condition_estimate)
      .def_readonly("ill_conditioned", &SpectralDecomposition::ill_conditioned)
      .def_readonly("reconstruction_residual", &SpectralDecomposition::reconstruction_residual)
      .def("proper_columns", &SpectralDecomposition::proper_columns);

  m.def(
      "decompose",
      [](const Graph& g, double tol_cluster, double tol_defect, double tol_recon, bool canonical) {
        return decompose(g, options(tol_cluster, tol_defect, tol_recon, canonical));
      },
      py::arg("graph"), py::arg("tol_cluster") = 0.0, py::arg("tol_defect") = 0.0,
      py::arg("tol_recon") = 1e-8, py::arg("canonical_basis") = true,
      "Symmetric path for undirected real graphs, Jordan path otherwise. Zero tolerances pick defaults.");
  m.def(
      "jordan_decompose",
      [](const CArray& a, double tol_cluster, double tol_defect, double tol_recon, bool canonical) {
        return jordan_decompose(to_matrix(a), options(tol_cluster, tol_defect, tol_recon, canonical));
      },
      py::arg("a"), py::arg("tol_cluster") = 0.0, py::arg("tol_defect") = 0.0, py::arg("tol_recon") = 1e-8,
      py::arg("canonical_basis") = true);
  m.def(
      "eigen_decompose",
      [](const CArray& a) -> py::tuple {
        const EigenResult r = eigen_decompose(to_matrix(a));
        py::object vecs = r.eigenvectors ? py::object(from_matrix(*r.eigenvectors)) : py::none();
        return py::make_tuple(from_vector(r.eigenvalues), vecs);
      },
      py::arg("a"), "(eigenvalues, eigenvectors); eigenvectors is None when the matrix is defective.");
  m.def("invert", [](const CArray& a) { return from_matrix(invert(to_matrix(a))); });

  m.def(
      "order_frequencies",
      [](const CArray& eigenvalues) {
        const FrequencyOrdering o = order_frequencies(to_vector(eigenvalues));
        std::vector<std::pair<std::size_t, std::size_t>> ties;
        for (const RankRange& r : o.tie_groups) ties.emplace_back(r.begin, r.end);
        return py::make_tuple(o.order, o.magnitudes, ties);
      },
      py::arg("eigenvalues"), "(order, magnitudes, tie_groups as half-open rank ranges).");

  m.def(
      "shift",
      [](const Graph& g, const CArray& f) {
        return from_vector(shift(directed_laplacian(g), GraphSignal(to_vector(f))).values);
      },
      py::arg("graph"), py::arg("f"));
  m.def(
      "total_variation",
      [](const Graph& g, const CArray& f) {
        return total_variation(directed_laplacian(g), GraphSignal(to_vector(f)));
      },
      py::arg("graph"), py::arg("f"));
  m.def(
      "quadratic_form",
      [](const Graph& g, const CArray& f) {
        return quadratic_form(directed_laplacian(g), GraphSignal(to_vector(f)));
      },
      py::arg("graph"), py::arg("f"));
  m.def(
      "gft",
      [](const SpectralDecomposition& d, const CArray& f) {
        return from_vector(gft(d, GraphSignal(to_vector(f))).coefficients);
      },
      py::arg("decomposition"), py::arg("f"));
  m.def(
      "igft",
      [](const SpectralDecomposition& d, const CArray& coefficients) {
        return from_vector(igft(d, to_vector(coefficients)).values);
      },
      py::arg("decomposition"), py::arg("coefficients"));

  m.def(
      "apply_filter",
      [](const Graph& g, const CArray& taps, const CArray& f, const std::string& domain) {
        const LsiFilter h(to_vector(taps));
        const GraphSignal s(to_vector(f));
        if (domain == "vertex") return from_vector(apply_vertex_domain(directed_laplacian(g), h, s).values);
        if (domain == "spectral") return from_vector(apply_spectral_domain(decompose(g), h, s).values);
        throw Error(Errc::InvalidArgument, "domain must be 'vertex' or 'spectral'");
      },
      py::arg("graph"), py::arg("taps"), py::arg("f"), py::arg("domain") = "vertex");
  m.def(
      "filter_matrix",
      [](const Graph& g, const CArray& taps) {
        return from_matrix(materialize(directed_laplacian(g), LsiFilter(to_vector(taps))));
      },
      py::arg("graph"), py::arg("taps"));
  m.def(
      "is_shift_invariant",
      [](const Graph& g, const CArray& h, double tol) {
        const auto r = is_shift_invariant(directed_laplacian(g), to_matrix(h), tol);
        return py::make_tuple(r.invariant, r.residual);
      },
      py::arg("graph"), py::arg("h"), py::arg("tol") = 1e-10);
  m.def(
      "polynomials_span_commutant",
      [](const SpectralDecomposition& d) { return check_lsi_preconditions(d).polynomials_span_commutant; },
      py::arg("decomposition"));
}
