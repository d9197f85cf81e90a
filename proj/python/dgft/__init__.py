"""Graph Fourier transform on the directed Laplacian L = D_in - W.

Arrays are complex128 numpy arrays; weights[i, j] is the edge from node j
to node i. Library failures raise DgftError with args (code, message).
"""

from ._core import (
    DgftError,
    EigenvalueCluster,
    Graph,
    JordanBlock,
    SpectralDecomposition,
    apply_filter,
    build_graph,
    decompose,
    eigen_decompose,
    filter_matrix,
    gft,
    igft,
    in_degree_matrix,
    invert,
    is_shift_invariant,
    jordan_decompose,
    laplacian,
    order_frequencies,
    polynomials_span_commutant,
    quadratic_form,
    read_edge_list,
    reference_digraph,
    ring_graph,
    shift,
    total_variation,
)

__all__ = [
    "DgftError",
    "EigenvalueCluster",
    "Graph",
    "JordanBlock",
    "SpectralDecomposition",
    "apply_filter",
    "build_graph",
    "decompose",
    "eigen_decompose",
    "filter_matrix",
    "gft",
    "igft",
    "in_degree_matrix",
    "invert",
    "is_shift_invariant",
    "jordan_decompose",
    "laplacian",
    "order_frequencies",
    "polynomials_span_commutant",
    "quadratic_form",
    "read_edge_list",
    "reference_digraph",
    "ring_graph",
    "shift",
    "total_variation",
]

__version__ = "0.1.0"
