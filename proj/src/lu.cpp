#include <cmath>
#include <numeric>

#include "dgft/error.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

LuFactorization::LuFactorization(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "LU needs a square matrix");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), 0);
  const double threshold = 1e-14 * a.frobenius_norm();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best <= threshold || best == 0.0) {
      throw Error(Errc::Singular, "matrix is numerically singular at column " +
                                      std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = lu_(i, k) / pivot;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

ComplexVector LuFactorization::solve(std::span<const Complex> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw Error(Errc::DimensionMismatch, "right-hand side length");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& b) const {
  if (b.rows() != lu_.rows()) throw Error(Errc::DimensionMismatch, "right-hand side rows");
  ComplexMatrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) x.set_column(c, solve(b.column(c)));
  return x;
}

ComplexMatrix LuFactorization::inverse() const {
  return solve(ComplexMatrix::identity(lu_.rows()));
}

Complex LuFactorization::determinant() const {
  Complex d = static_cast<double>(sign_);
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

ComplexMatrix invert(const ComplexMatrix& a) { return LuFactorization(a).inverse(); }

ComplexMatrix matrix_polynomial(const ComplexMatrix& a, std::span<const Complex> taps) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "matrix polynomial needs a square matrix");
  if (taps.empty()) throw Error(Errc::EmptyTaps, "filter needs at least one tap");
  const std::size_t n = a.rows();
  ComplexMatrix p = ComplexMatrix::identity(n) * taps.back();
  for (std::size_t m = taps.size() - 1; m-- > 0;) {
    p = p * a;
    for (std::size_t i = 0; i < n; ++i) p(i, i) += taps[m];
  }
  return p;
}

}  // namespace dgft
