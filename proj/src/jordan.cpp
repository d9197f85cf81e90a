#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "dgft/error.hpp"
#include "dgft/linalg.hpp"

namespace dgft {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Cluster {
  Complex value;
  std::vector<std::size_t> members;
};

double default_cluster_tol(const ComplexMatrix& a) {
  const double n = static_cast<double>(std::max<std::size_t>(a.rows(), 1));
  return std::max(1e-8, 1e-6 * a.frobenius_norm() / n);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

// Single-linkage clusters, each represented by its mean, returned in
// frequency order.
std::vector<Cluster> cluster_eigenvalues(const ComplexVector& eig, double tol) {
  const std::size_t n = eig.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eig[i] - eig[j]) <= tol) parent[find_root(parent, i)] = find_root(parent, j);

  std::vector<Cluster> clusters;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find_root(parent, i);
    if (slot[r] == n) {
      slot[r] = clusters.size();
      clusters.push_back({});
    }
    clusters[slot[r]].members.push_back(i);
  }
  ComplexVector reps;
  for (auto& c : clusters) {
    Complex s = 0.0;
    for (std::size_t i : c.members) s += eig[i];
    c.value = s / static_cast<double>(c.members.size());
    reps.push_back(c.value);
  }
  std::vector<Cluster> ordered;
  for (std::size_t k : magnitude_order(reps)) ordered.push_back(std::move(clusters[k]));
  return ordered;
}

// Solves (T - t_kk I) x = 0 with x_k = 1 by back substitution.
ComplexVector triangular_eigenvector(const ComplexMatrix& t, std::size_t k, double smin) {
  const std::size_t n = t.rows();
  ComplexVector x(n);
  x[k] = 1.0;
  const Complex lambda = t(k, k);
  for (std::size_t i = k; i-- > 0;) {
    Complex s = 0.0;
    for (std::size_t j = i + 1; j <= k; ++j) s += t(i, j) * x[j];
    Complex d = t(i, i) - lambda;
    if (std::abs(d) < smin) d = smin;
    x[i] = -s / d;
    // Rescale when growth threatens overflow.
    const double big = norm_inf(std::span<const Complex>(x.data() + i, k - i + 1));
    if (big > 1e100) {
      for (std::size_t j = i; j <= k; ++j) x[j] /= big;
    }
  }
  return x;
}

// Unit l2 norm, then the largest-magnitude entry (lowest index on ties)
// becomes real and positive. Returns the applied factor.
Complex canonical_factor(std::span<const Complex> v) {
  const double nrm = norm_2(v);
  if (nrm == 0.0) return 1.0;
  std::size_t p = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      p = i;
    }
  }
  return std::conj(v[p]) / (std::abs(v[p]) * nrm);
}

void scale_in_place(ComplexVector& v, Complex s) {
  for (auto& x : v) x *= s;
}

// Makes the largest entry exactly real after scaling.
void clean_pivot(ComplexVector& v) {
  std::size_t p = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      p = i;
    }
  }
  if (!v.empty()) v[p] = Complex(v[p].real(), 0.0);
}

ComplexMatrix columns_to_matrix(const std::vector<ComplexVector>& cols, std::size_t n) {
  ComplexMatrix m(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

// Orthonormal basis of the range of m (columns with singular value above
// the relative threshold).
std::vector<ComplexVector> range_basis(const ComplexMatrix& m) {
  std::vector<ComplexVector> out;
  if (m.cols() == 0) return out;
  const auto svd = jacobi_svd(m);
  const double top = svd.sigma.empty() ? 0.0 : svd.sigma.front();
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    if (svd.sigma[k] <= 1e-10 * top || svd.sigma[k] == 0.0) break;
    out.push_back(svd.u.column(k));
  }
  return out;
}

struct Chain {
  // Head first: vectors[0] is the proper eigenvector.
  std::vector<ComplexVector> vectors;
};

// Generalized eigenvector chains from null spaces of (A - lambda I)^k.
std::optional<std::vector<Chain>> build_chains(const ComplexMatrix& a, Complex lambda,
                                               std::size_t multiplicity, double defect_tol) {
  const std::size_t n = a.rows();
  ComplexMatrix b = a;
  for (std::size_t i = 0; i < n; ++i) b(i, i) -= lambda;
  const double bnorm = b.frobenius_norm();

  std::vector<ComplexMatrix> kernels{ComplexMatrix(n, 0)};
  std::vector<std::size_t> dims{0};
  ComplexMatrix power = ComplexMatrix::identity(n);
  double threshold = defect_tol;
  std::size_t depth = 0;
  for (std::size_t k = 1; k <= multiplicity; ++k) {
    power = power * b;
    threshold *= bnorm;
    ComplexMatrix kernel = null_space(power, threshold);
    const std::size_t d = kernel.cols();
    if (d > multiplicity || d < dims.back()) return std::nullopt;
    // A power without new kernel directions means the kernel stopped short
    // of the algebraic multiplicity.
    if (d == dims.back()) return std::nullopt;
    kernels.push_back(std::move(kernel));
    dims.push_back(d);
    if (d == multiplicity) {
      depth = k;
      break;
    }
  }
  if (depth == 0) return std::nullopt;

  struct Top {
    ComplexVector x;
    std::size_t length;
  };
  std::vector<Top> tops;
  auto level_vector = [&](const Top& t, std::size_t level) {
    ComplexVector x = t.x;
    for (std::size_t s = level; s < t.length; ++s) x = b * x;
    return x;
  };

  for (std::size_t k = depth; k >= 1; --k) {
    const std::size_t above = k == depth ? 0 : dims[k + 1] - dims[k];
    const std::size_t at = dims[k] - dims[k - 1];
    if (at < above) return std::nullopt;
    const std::size_t fresh = at - above;
    if (fresh > 0) {
      std::vector<ComplexVector> span_cols;
      for (std::size_t c = 0; c < kernels[k - 1].cols(); ++c)
        span_cols.push_back(kernels[k - 1].column(c));
      for (const Top& t : tops) span_cols.push_back(level_vector(t, k));
      const auto basis = range_basis(columns_to_matrix(span_cols, n));

      // Component of the level-k kernel orthogonal to what is already spanned.
      ComplexMatrix residual = kernels[k];
      for (const auto& u : basis) {
        for (std::size_t c = 0; c < residual.cols(); ++c) {
          Complex dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(u[i]) * residual(i, c);
          for (std::size_t i = 0; i < n; ++i) residual(i, c) -= dot * u[i];
        }
      }
      const auto svd = jacobi_svd(residual);
      if (svd.sigma.size() < fresh || svd.sigma[fresh - 1] < 1e-6) return std::nullopt;
      for (std::size_t s = 0; s < fresh; ++s) {
        ComplexVector x = kernels[k] * svd.v.column(s);
        tops.push_back({std::move(x), k});
      }
    }
  }

  std::vector<Chain> chains;
  for (const Top& t : tops) {
    Chain c;
    c.vectors.resize(t.length);
    c.vectors[t.length - 1] = t.x;
    for (std::size_t s = t.length - 1; s-- > 0;) c.vectors[s] = b * c.vectors[s + 1];
    chains.push_back(std::move(c));
  }
  std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
    return x.vectors.size() > y.vectors.size();
  });
  return chains;
}

struct Attempt {
  SpectralDecomposition d;
  double inverse_residual = std::numeric_limits<double>::infinity();
  bool ok = false;
};

Attempt assemble(const ComplexMatrix& a, const SchurForm& schur, double cluster_tol,
                 double defect_tol, const DecompositionOptions& opts) {
  const std::size_t n = a.rows();
  const double anorm = a.frobenius_norm();
  const auto clusters = cluster_eigenvalues(schur.t.diagonal_entries(), cluster_tol);
  const double smin = std::max(kEps * std::max(schur.t.frobenius_norm(), 1.0),
                               std::numeric_limits<double>::min());

  Attempt at;
  SpectralDecomposition& d = at.d;
  d.cluster_tol = cluster_tol;
  std::vector<ComplexVector> columns;
  std::vector<std::size_t> block_sizes;
  std::vector<Complex> block_values;
  std::vector<std::size_t> block_cluster;

  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    const Cluster& cl = clusters[ci];
    const std::size_t m = cl.members.size();
    Complex value = cl.value;
    std::vector<Chain> chains;

    if (m == 1) {
      chains.push_back({{schur.z * triangular_eigenvector(schur.t, cl.members[0], smin)}});
    } else if (auto built = build_chains(a, value, m, defect_tol)) {
      chains = std::move(*built);
    } else {
      // Unresolvable cluster: fall back to per-eigenvalue vectors and let
      // the residual check decide.
      for (std::size_t idx : cl.members)
        chains.push_back({{schur.z * triangular_eigenvector(schur.t, idx, smin)}});
    }

    const bool all_simple = std::all_of(chains.begin(), chains.end(),
                                        [](const Chain& c) { return c.vectors.size() == 1; });

    if (opts.canonical_basis && std::abs(value) <= cluster_tol && all_simple) {
      ComplexVector ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
      const double res = norm_2(a * ones);
      if (res <= std::max(opts.recon_tol * anorm, std::numeric_limits<double>::min())) {
        std::vector<ComplexVector> rest;
        if (chains.size() > 1) {
          ComplexMatrix others(n, chains.size());
          for (std::size_t c = 0; c < chains.size(); ++c) {
            ComplexVector v = chains[c].vectors[0];
            scale_in_place(v, 1.0 / norm_2(v));
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(ones[i]) * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * ones[i];
            others.set_column(c, v);
          }
          const auto svd = jacobi_svd(others);
          for (std::size_t s = 0; s + 1 < chains.size(); ++s) rest.push_back(svd.u.column(s));
        }
        chains.clear();
        chains.push_back({{ones}});
        for (auto& v : rest) chains.push_back({{std::move(v)}});
        value = 0.0;
      }
    }

    EigenvalueCluster info{value, m, chains.size()};
    d.clusters.push_back(info);
    for (auto& chain : chains) {
      Complex factor = 1.0;
      if (opts.canonical_basis) {
        factor = canonical_factor(chain.vectors[0]);
      } else {
        factor = 1.0 / norm_2(chain.vectors[0]);
      }
      for (auto& v : chain.vectors) scale_in_place(v, factor);
      if (opts.canonical_basis) clean_pivot(chain.vectors[0]);
      block_sizes.push_back(chain.vectors.size());
      block_values.push_back(value);
      block_cluster.push_back(ci);
      for (auto& v : chain.vectors) columns.push_back(std::move(v));
    }
  }

  d.v = columns_to_matrix(columns, n);
  d.j = ComplexMatrix(n, n);
  d.eigenvalues.assign(n, 0.0);
  std::size_t start = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    d.blocks.push_back({block_values[b], block_sizes[b], start, block_cluster[b]});
    for (std::size_t s = 0; s < block_sizes[b]; ++s) {
      d.j(start + s, start + s) = block_values[b];
      d.eigenvalues[start + s] = block_values[b];
      if (s + 1 < block_sizes[b]) d.j(start + s, start + s + 1) = 1.0;
    }
    start += block_sizes[b];
  }
  d.is_diagonalizable = std::all_of(d.blocks.begin(), d.blocks.end(),
                                    [](const JordanBlock& b) { return b.size == 1; });

  try {
    d.v_inv = invert(d.v);
  } catch (const Error&) {
    return at;
  }
  d.condition_estimate = d.v.norm_1() * d.v_inv.norm_1();
  d.ill_conditioned = d.condition_estimate > 1e12;
  d.reconstruction_residual = reconstruction_residual(d, a);
  at.inverse_residual = (d.v * d.v_inv - ComplexMatrix::identity(n)).frobenius_norm();
  at.ok = d.reconstruction_residual <= opts.recon_tol &&
          at.inverse_residual <= 1e-8 * std::sqrt(static_cast<double>(n));
  return at;
}

}  // namespace

std::vector<std::size_t> magnitude_order(std::span<const Complex> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(values[x]) < std::abs(values[y]);
  });
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-10 * (1.0 + std::abs(x)); };

  // Refine runs of equal modulus by real part, then imaginary part.
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && close(std::abs(values[idx[i]]), std::abs(values[idx[j]]))) ++j;
    std::stable_sort(idx.begin() + i, idx.begin() + j, [&](std::size_t x, std::size_t y) {
      return values[x].real() < values[y].real();
    });
    std::size_t r = i;
    while (r < j) {
      std::size_t s = r + 1;
      while (s < j && close(values[idx[r]].real(), values[idx[s]].real())) ++s;
      std::stable_sort(idx.begin() + r, idx.begin() + s, [&](std::size_t x, std::size_t y) {
        return values[x].imag() < values[y].imag();
      });
      r = s;
    }
    i = j;
  }
  return idx;
}

bool SpectralDecomposition::is_proper(std::size_t k) const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [k](const JordanBlock& b) { return b.start == k; });
}

std::vector<std::size_t> SpectralDecomposition::proper_columns() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.start);
  return out;
}

double reconstruction_residual(const SpectralDecomposition& d, const ComplexMatrix& a) {
  const double err = (d.v * d.j * d.v_inv - a).frobenius_norm();
  const double scale = a.frobenius_norm();
  return scale == 0.0 ? err : err / scale;
}

SpectralDecomposition jordan_decompose(const ComplexMatrix& a, const DecompositionOptions& opts) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "decomposition needs a square matrix");
  if (a.rows() == 0) throw Error(Errc::TooSmall, "empty matrix");
  if (opts.cluster_tol < 0.0 || opts.defect_tol < 0.0 || opts.recon_tol <= 0.0)
    throw Error(Errc::InvalidArgument, "tolerances must be positive");

  const SchurForm schur = complex_schur(a);
  const double anorm = a.frobenius_norm();
  const double base_tol = opts.cluster_tol > 0.0 ? opts.cluster_tol : default_cluster_tol(a);
  double defect_tol = opts.defect_tol;
  if (defect_tol == 0.0) defect_tol = anorm > 0.0 ? base_tol / anorm : base_tol;

  const double ceiling = std::max(base_tol, 1e-3 * anorm);
  std::optional<Attempt> best;
  for (double tol = base_tol;; tol *= 10.0) {
    Attempt at = assemble(a, schur, tol, defect_tol, opts);
    if (at.ok) return std::move(at.d);
    if (!at.d.v_inv.empty() &&
        (!best || at.d.reconstruction_residual < best->d.reconstruction_residual)) {
      best = std::move(at);
    }
    if (!opts.adaptive_clustering || tol * 10.0 > ceiling) break;
  }
  if (!best) throw Error(Errc::Singular, "no clustering level produced an invertible basis");
  if (!(best->d.reconstruction_residual <= opts.recon_tol)) {
    throw Error(Errc::NoConvergence, "best reconstruction residual " +
                                         std::to_string(best->d.reconstruction_residual) +
                                         " exceeds the tolerance");
  }
  best->d.ill_conditioned = true;
  return std::move(best->d);
}

EigenResult eigen_decompose(const ComplexMatrix& a, const DecompositionOptions& opts) {
  SpectralDecomposition d = jordan_decompose(a, opts);
  EigenResult out{d.eigenvalues, std::nullopt};
  if (d.is_diagonalizable) out.eigenvectors = std::move(d.v);
  return out;
}

}  // namespace dgft
