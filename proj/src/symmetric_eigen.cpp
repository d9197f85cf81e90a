#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dgft/error.hpp"
#include "dgft/linalg.hpp"

namespace dgft {
namespace {

// Dense real square matrix for the symmetric path.
struct RealMatrix {
  std::size_t n;
  std::vector<double> a;
  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
};

// Householder tridiagonalization. On return d holds the diagonal, e the
// subdiagonal in e[1..n-1], and v the accumulated orthogonal transform.
void tridiagonalize(RealMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.n;
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL/QR with Wilkinson-style shifts on the tridiagonal matrix.
void tridiagonal_qr(RealMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.n;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_iter = 30 * std::max<std::size_t>(n, 1);
  std::size_t iterations = 0;
  double f = 0.0, tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;
    if (m == n) m = n - 1;
    if (m > l) {
      do {
        if (++iterations > max_iter)
          throw Error(Errc::NoConvergence, "symmetric QR did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0, s = 0.0, s2 = 0.0;
        const double el1 = e[l + 1];
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

SpectralDecomposition symmetric_eigen_decompose(const ComplexMatrix& a,
                                                const DecompositionOptions& opts) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "decomposition needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) throw Error(Errc::TooSmall, "empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).imag() != 0.0 || std::abs(a(i, j) - a(j, i)) > 1e-12)
        throw Error(Errc::NotSymmetric, "matrix is not real symmetric");
    }
  }

  RealMatrix v{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = 0.5 * (a(i, j).real() + a(j, i).real());
  std::vector<double> d(n), e(n);
  tridiagonalize(v, d, e);
  tridiagonal_qr(v, d, e);

  const ComplexVector values(d.begin(), d.end());
  const auto order = magnitude_order(values);
  const double anorm = a.frobenius_norm();
  const double cluster_tol =
      opts.cluster_tol > 0.0 ? opts.cluster_tol
                             : std::max(1e-8, 1e-6 * anorm / static_cast<double>(n));

  // Columns in frequency order as real vectors.
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  std::vector<double> lambda(n);
  for (std::size_t k = 0; k < n; ++k) {
    lambda[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) cols[k][i] = v(i, order[k]);
  }

  // Replace the null-space basis by one led by the constant vector.
  if (opts.canonical_basis) {
    std::vector<std::size_t> zero;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(lambda[k]) <= cluster_tol) zero.push_back(k);
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * u;
      res = std::hypot(res, std::abs(s));
    }
    if (!zero.empty() && res <= std::max(opts.recon_tol * anorm, 1e-300)) {
      // Modified Gram-Schmidt over [1/sqrt(n), zero-space columns], keeping
      // the len(zero) - 1 strongest remainders.
      std::vector<std::vector<double>> basis{std::vector<double>(n, u)};
      std::vector<std::vector<double>> pool;
      for (std::size_t k : zero) pool.push_back(cols[k]);
      while (basis.size() < zero.size()) {
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t p = 0; p < pool.size(); ++p) {
          auto w = pool[p];
          for (const auto& q : basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[i] * w[i];
            for (std::size_t i = 0; i < n; ++i) w[i] -= dot * q[i];
          }
          double nrm = 0.0;
          for (double x : w) nrm = std::hypot(nrm, x);
          if (nrm > best) {
            best = nrm;
            pick = p;
            pool[p] = w;
          }
        }
        auto w = pool[pick];
        for (const auto& q : basis) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += q[i] * w[i];
          for (std::size_t i = 0; i < n; ++i) w[i] -= dot * q[i];
        }
        double nrm = 0.0;
        for (double x : w) nrm = std::hypot(nrm, x);
        for (double& x : w) x /= nrm;
        basis.push_back(std::move(w));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      for (std::size_t t = 0; t < zero.size(); ++t) {
        cols[zero[t]] = basis[t];
        lambda[zero[t]] = 0.0;
      }
    }
    for (auto& c : cols) {
      std::size_t p = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(c[i]) > std::abs(c[p]) * (1.0 + 1e-12)) p = i;
      if (c[p] < 0)
        for (double& x : c) x = -x;
    }
  }

  SpectralDecomposition out;
  out.v = ComplexMatrix(n, n);
  out.j = ComplexMatrix(n, n);
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = cols[k][i];
    out.j(k, k) = lambda[k];
    out.eigenvalues[k] = lambda[k];
  }
  out.v_inv = out.v.transpose();
  out.is_unitary_basis = true;
  out.is_diagonalizable = true;
  out.cluster_tol = cluster_tol;

  // Cluster metadata: consecutive eigenvalues in frequency order.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t ci = out.clusters.size();
    for (std::size_t c = 0; c < out.clusters.size(); ++c) {
      if (std::abs(out.clusters[c].value - out.eigenvalues[k]) <= cluster_tol) {
        ci = c;
        break;
      }
    }
    if (ci == out.clusters.size()) out.clusters.push_back({out.eigenvalues[k], 0, 0});
    ++out.clusters[ci].algebraic;
    ++out.clusters[ci].geometric;
    out.blocks.push_back({out.eigenvalues[k], 1, k, ci});
  }
  out.condition_estimate = out.v.norm_1() * out.v_inv.norm_1();
  out.reconstruction_residual = reconstruction_residual(out, a);
  if (!(out.reconstruction_residual <= opts.recon_tol))
    throw Error(Errc::NoConvergence, "reconstruction residual exceeds the tolerance");
  return out;
}

}  // namespace dgft
