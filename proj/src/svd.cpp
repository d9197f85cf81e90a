#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dgft/error.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

SingularValueDecomposition jacobi_svd(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix u = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 80;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(u(i, p));
          beta += std::norm(u(i, q));
          gamma += std::conj(u(i, p)) * u(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;

        // Rotate column q's phase so the pair's inner product is real, then
        // apply the real Jacobi rotation that orthogonalizes the pair.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (ComplexMatrix* mat : {&u, &v}) {
          for (std::size_t i = 0; i < mat->rows(); ++i) {
            const Complex xp = (*mat)(i, p);
            const Complex xq = (*mat)(i, q) * phase;
            (*mat)(i, p) = c * xp - s * xq;
            (*mat)(i, q) = s * xp + c * xq;
          }
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm_2(u.column(j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SingularValueDecomposition out{ComplexMatrix(m, n), std::vector<double>(n),
                                 ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sigma[j] > 0.0)
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = u(i, j) / sigma[j];
  }
  return out;
}

ComplexMatrix null_space(const ComplexMatrix& a, double threshold) {
  const auto svd = jacobi_svd(a);
  const std::size_t n = a.cols();
  std::size_t rank = 0;
  while (rank < n && svd.sigma[rank] > threshold) ++rank;
  ComplexMatrix basis(n, n - rank);
  for (std::size_t k = rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k - rank) = svd.v(i, k);
  return basis;
}

}  // namespace dgft
