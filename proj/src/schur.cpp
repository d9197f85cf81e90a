#include <algorithm>
#include <cmath>
#include <limits>

#include "dgft/error.hpp"
#include "dgft/linalg.hpp"

namespace dgft {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Householder reduction; returns H and accumulates Q such that A = Q H Q^H.
void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  ComplexVector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha_norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha_norm = std::hypot(alpha_norm, std::abs(h(i, k)));
    if (alpha_norm == 0.0) continue;

    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * alpha_norm;

    std::fill(v.begin(), v.end(), Complex{});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    const double vnorm = norm_2(v);
    if (vnorm == 0.0) continue;
    for (auto& x : v) x /= vnorm;

    // H <- (I - 2 v v^H) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H (I - 2 v v^H), Q <- Q (I - 2 v v^H)
    for (ComplexMatrix* m : {&h, &q}) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) s += (*m)(i, j) * v[j];
        s *= 2.0;
        for (std::size_t j = k + 1; j < n; ++j) (*m)(i, j) -= s * std::conj(v[j]);
      }
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  Complex s;
};

// G = [c s; -conj(s) c] maps (x, y) to (r, 0).
Givens make_givens(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double r = std::hypot(ax, std::abs(y));
  if (r == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, std::conj(y) / std::abs(y)};
  return {ax / r, (x / ax) * std::conj(y) / r};
}

void rotate_rows(ComplexMatrix& m, std::size_t k, const Givens& g, std::size_t from,
                 std::size_t to) {
  for (std::size_t j = from; j < to; ++j) {
    const Complex a = m(k, j), b = m(k + 1, j);
    m(k, j) = g.c * a + g.s * b;
    m(k + 1, j) = -std::conj(g.s) * a + g.c * b;
  }
}

// M <- M G^H on columns k, k+1.
void rotate_cols(ComplexMatrix& m, std::size_t k, const Givens& g, std::size_t to) {
  for (std::size_t i = 0; i < to; ++i) {
    const Complex a = m(i, k), b = m(i, k + 1);
    m(i, k) = a * g.c + b * std::conj(g.s);
    m(i, k + 1) = -a * g.s + b * g.c;
  }
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1), d = h(hi, hi);
  const Complex p = 0.5 * (a - d);
  const Complex disc = std::sqrt(p * p + b * c);
  const Complex plus = p + disc, minus = p - disc;
  const Complex denom = std::abs(plus) >= std::abs(minus) ? plus : minus;
  if (denom == 0.0) return d;
  return d - b * c / denom;
}

}  // namespace

SchurForm complex_schur(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "Schur form needs a square matrix");
  const std::size_t n = a.rows();
  SchurForm out{a, ComplexMatrix::identity(n)};
  ComplexMatrix& h = out.t;
  ComplexMatrix& z = out.z;
  if (n <= 1) return out;

  reduce_to_hessenberg(h, z);

  const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  const std::size_t max_sweeps = 30 * std::max<std::size_t>(n, 1);
  std::size_t sweeps = 0;
  std::size_t stalled = 0;
  std::size_t hi = n - 1;

  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      double scale = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
      if (scale == 0.0) scale = hnorm;
      const double sub = abs1(h(lo, lo - 1));
      if (sub <= 1e-14 * scale || sub <= kEps * kEps * hnorm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      stalled = 0;
      continue;
    }
    if (sweeps >= max_sweeps) {
      throw Error(Errc::NoConvergence,
                  "QR iteration exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    ++sweeps;
    ++stalled;

    Complex shift;
    if (stalled % 20 == 0) {
      shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
    } else if (stalled % 10 == 0) {
      shift = h(lo, lo) + 0.75 * std::abs(h(lo + 1, lo).real());
    } else {
      shift = wilkinson_shift(h, hi);
    }

    Complex x = h(lo, lo) - shift;
    Complex y = h(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(x, y);
      rotate_rows(h, k, g, k == lo ? lo : k - 1, n);
      if (k > lo) h(k + 1, k - 1) = 0.0;
      // Rows above the window are part of the full Schur factor, so the
      // column update always starts at row 0.
      rotate_cols(h, k, g, std::min(k + 3, hi + 1));
      rotate_cols(z, k, g, n);
      if (k + 1 < hi) {
        x = h(k + 1, k);
        y = h(k + 2, k);
      }
    }
  }

  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
  return out;
}

}  // namespace dgft
