#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/extension.hpp"
#include "whitney/integrate.hpp"
#include "whitney/piecewise.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// The natural spline of order 2m: the minimizer of the L^m_2 seminorm
/// among all interpolants of f.
struct SplineSolution {
  PiecewisePolynomial F;
  double seminorm_sq = 0.0;       // integral of (F^(m))^2
  double system_condition = 1.0;  // largest / smallest LDL^T pivot after diagonal scaling
  double residual = 0.0;          // relative residual of the normal equations
};

/// Pivot ratio beyond which the energy matrix counts as numerically
/// singular (nodes too close for the requested order).
inline constexpr double kSplineMaxPivotRatio = 1e60;

namespace detail {

/// The energy solve runs in 100-digit arithmetic. For m >= 3 the energy of
/// a short gap is a stiff spring between the two end jets, and eliminating
/// it next to a long gap cancels about (long/short)^{2m-3} of the soft
/// stiffness; gaps spread over six decades already exhaust double precision.
using SplineScalar = boost::multiprecision::cpp_bin_float_100;

/// Polynomial with prescribed derivatives jet[j] = P^(j)(c), j < jet.size().
inline Polynomial from_jet(double c, const std::vector<double>& jet) {
  std::vector<double> coeffs(jet.size());
  double fact = 1.0;
  for (std::size_t j = 0; j < jet.size(); ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    coeffs[j] = jet[j] / fact;
  }
  return Polynomial(std::move(coeffs), c);
}

/// Piecewise polynomial gluing the m-jets jets[i] at the points xs by
/// two-point Hermite polynomials; outer pieces are the end Taylor polynomials.
inline PiecewisePolynomial hermite_glue(const std::vector<double>& xs, const std::vector<std::vector<double>>& jets,
                                        int m, int smoothness) {
  std::vector<Polynomial> pieces;
  pieces.reserve(xs.size() + 1);
  pieces.push_back(from_jet(xs.front(), jets.front()));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    pieces.push_back(hermite_two_point(xs[i], from_jet(xs[i], jets[i]), xs[i + 1], from_jet(xs[i + 1], jets[i + 1]), m));
  pieces.push_back(from_jet(xs.back(), jets.back()));
  return PiecewisePolynomial(xs, std::move(pieces), smoothness);
}

/// Gram matrix of the m-th derivatives of the 2m Hermite basis functions on
/// [0, 1]; index r = e*m + j is the basis function with unit j-th derivative
/// at end e. Computed from the monomial coefficients of the basis, which
/// solve the confluent Vandermonde system (harmless at this precision).
template <class T>
std::vector<T> reference_gram(int m) {
  const int k = 2 * m;
  auto falling = [](int c, int j) {
    T r = 1;
    for (int i = 0; i < j; ++i) r *= c - i;
    return r;
  };
  // [A | I] -> [I | A^{-1}]; row e*m+j is the j-th derivative at t = e.
  std::vector<std::vector<T>> a(k, std::vector<T>(2 * k, T(0)));
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j < m; ++j) {
      const int row = e * m + j;
      for (int c = j; c < k; ++c) a[row][c] = (e == 1 || c == j) ? falling(c, j) : T(0);
      a[row][k + row] = 1;
    }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    const T inv = T(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (int r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const T factor = a[r][col];
      for (int c = 0; c < 2 * k; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  // Basis r has monomial coefficients a[c][k + r], c = 0..k-1.
  std::vector<T> g(static_cast<std::size_t>(k * k), T(0));
  for (int r = 0; r < k; ++r)
    for (int s = r; s < k; ++s) {
      T sum = 0;
      for (int c = m; c < k; ++c)
        for (int d = m; d < k; ++d)
          sum += a[c][k + r] * a[d][k + s] * falling(c, m) * falling(d, m) / T(c + d - 2 * m + 1);
      g[r * k + s] = g[s * k + r] = sum;
    }
  return g;
}

/// Coefficients in powers of (x - a) of the degree 2m-1 polynomial with
/// Taylor coefficients ta at a and tb at b = a + h (confluent Newton form).
template <class T>
std::vector<T> hermite_coefficients(const T& h, const std::vector<T>& ta, const std::vector<T>& tb) {
  const std::size_t m = ta.size(), n = 2 * m;
  std::vector<T> z(n), col(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = i < m ? T(0) : h;
    col[i] = i < m ? ta[0] : tb[0];
  }
  std::vector<T> top{col[0]};
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i)
      col[i] = (z[i] == z[i + j]) ? (i < m ? ta[j] : tb[j]) : (col[i + 1] - col[i]) / (z[i + j] - z[i]);
    top.push_back(col[0]);
  }
  std::vector<T> c{top[n - 1]};
  for (std::size_t j = n - 1; j-- > 0;) {
    // c <- c * (t - z_j) + top[j]
    c.push_back(T(0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - z[j] * c[k];
    c[0] = -z[j] * c[0] + top[j];
  }
  return c;
}

/// Symmetric band matrix (half-bandwidth bw) with an in-place LDL^T.
template <class T>
class BandLdlt {
 public:
  BandLdlt(std::size_t n, std::size_t bw) : n_(n), bw_(bw), a_(n * (bw + 1), T(0)) {}

  /// Entry (i, j) with |i - j| <= bw; only i <= j is stored.
  T& at(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return a_[i * (bw_ + 1) + (j - i)];
  }
  std::size_t size() const { return n_; }

  /// Factors in place; returns the pivots D.
  std::vector<T> factor() {
    std::vector<T> d(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T dii = at(i, i);
      const std::size_t lo = i > bw_ ? i - bw_ : 0;
      for (std::size_t k = lo; k < i; ++k) dii -= at(k, i) * at(k, i) * d[k];
      d[i] = dii;
      for (std::size_t j = i + 1; j <= std::min(n_ - 1, i + bw_); ++j) {
        T lji = at(i, j);
        const std::size_t lo2 = j > bw_ ? j - bw_ : 0;
        for (std::size_t k = std::max(lo, lo2); k < i; ++k) lji -= at(k, j) * at(k, i) * d[k];
        at(i, j) = lji / dii;
      }
    }
    return d;
  }

  /// Solves with the factors (after factor()).
  std::vector<T> solve(std::vector<T> b, const std::vector<T>& d) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = (i > bw_ ? i - bw_ : 0); k < i; ++k) b[i] -= at(k, i) * b[k];
    for (std::size_t i = 0; i < n_; ++i) b[i] /= d[i];
    for (std::size_t i = n_; i-- > 0;)
      for (std::size_t j = i + 1; j <= std::min(n_ - 1, i + bw_); ++j) b[i] -= at(i, j) * b[j];
    return b;
  }

 private:
  std::size_t n_, bw_;
  std::vector<T> a_;
};

}  // namespace detail

/// Natural spline for p = 2.
///
/// Each bounded piece of the spline is the two-point Hermite polynomial of
/// its end m-jets and each unbounded piece is a degree m-1 Taylor
/// polynomial, so the spline is determined by the unknown derivatives
/// F^(j)(x_i), 1 <= j <= m-1. The energy is a quadratic form in those
/// unknowns, banded with half-bandwidth 2m-3, assembled from one reference
/// Gram matrix scaled by powers of the gap length. Its minimizer solves the
/// normal equations, factored by a band LDL^T after symmetric diagonal
/// scaling. The minimizer is automatically C^{2m-2}.
inline SplineSolution natural_spline_p2(const SampledFunction& f, int m) {
  using T = detail::SplineScalar;
  if (m < 1) throw InvalidArgument("order m must be positive");
  const std::size_t n = f.size();
  if (n < static_cast<std::size_t>(m) + 1)
    throw InsufficientData("need at least " + std::to_string(m + 1) + " points, have " + std::to_string(n));
  const std::size_t mm = static_cast<std::size_t>(m);
  const std::size_t per = mm - 1;  // unknowns per point
  const std::size_t unknowns = n * per;

  std::vector<std::vector<double>> jets(n, std::vector<double>(mm, 0.0));
  for (std::size_t i = 0; i < n; ++i) jets[i][0] = f.value(i);

  SplineSolution out{detail::hermite_glue(f.points(), jets, m, 2 * m - 2), 0.0, 1.0, 0.0};
  if (unknowns > 0) {
    const std::vector<T> gref = detail::reference_gram<T>(m);
    const std::size_t k = 2 * mm;
    detail::BandLdlt<T> A(unknowns, 2 * per - 1);
    std::vector<T> rhs(unknowns, T(0));
    auto slot = [&](std::size_t point, std::size_t j) { return point * per + (j - 1); };
    for (std::size_t gap = 0; gap + 1 < n; ++gap) {
      const T h = T(f.point(gap + 1)) - T(f.point(gap));
      std::vector<T> scale(k);
      for (std::size_t r = 0; r < k; ++r) scale[r] = pow(h, static_cast<int>(r % mm));
      const T w = pow(h, 1 - 2 * m);
      for (std::size_t r = 0; r < k; ++r) {
        const std::size_t pr = gap + r / mm, jr = r % mm;
        if (jr == 0) continue;
        for (std::size_t s = 0; s < k; ++s) {
          const std::size_t ps = gap + s / mm, js = s % mm;
          const T a = w * scale[r] * scale[s] * gref[r * k + s];
          if (js == 0)
            rhs[slot(pr, jr)] -= a * T(f.value(ps));
          else if (slot(pr, jr) <= slot(ps, js))
            A.at(slot(pr, jr), slot(ps, js)) += a;
        }
      }
    }
    std::vector<T> d(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) {
      const T diag = A.at(i, i);
      if (!(diag > 0)) throw NumericalFailure("natural spline: degenerate energy matrix");
      d[i] = 1 / sqrt(diag);
    }
    detail::BandLdlt<T> S(unknowns, 2 * per - 1);
    std::vector<T> b(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) {
      b[i] = d[i] * rhs[i];
      for (std::size_t j = i; j <= std::min(unknowns - 1, i + 2 * per - 1); ++j) S.at(i, j) = d[i] * A.at(i, j) * d[j];
    }
    detail::BandLdlt<T> F = S;
    const std::vector<T> piv = F.factor();
    T pmax = 0, pmin = piv[0];
    for (const T& v : piv) {
      pmax = std::max(pmax, T(abs(v)));
      pmin = std::min(pmin, v);
    }
    if (!(pmin > 0)) throw NumericalFailure("natural spline: energy matrix is not positive definite");
    out.system_condition = static_cast<double>(pmax / pmin);
    if (!(out.system_condition < kSplineMaxPivotRatio))
      throw NumericalFailure("natural spline: system too ill-conditioned (pivot ratio " +
                             std::to_string(out.system_condition) + ")");
    const std::vector<T> y = F.solve(b, piv);
    T rnorm = 0, bnorm = 0;
    for (std::size_t i = 0; i < unknowns; ++i) {
      T r = b[i];
      for (std::size_t j = (i > 2 * per - 1 ? i - (2 * per - 1) : 0); j <= std::min(unknowns - 1, i + 2 * per - 1); ++j)
        r -= S.at(i, j) * y[j];
      rnorm += r * r;
      bnorm += b[i] * b[i];
    }
    out.residual = bnorm > 0 ? static_cast<double>(sqrt(rnorm / bnorm)) : 0.0;
    // Taylor coefficients F^(j)(x_i) / j! in full precision; the gap
    // polynomials are formed before rounding so that rounding touches only
    // the final coefficients and the C^{2m-2} joins survive it.
    std::vector<std::vector<T>> taylor(n, std::vector<T>(mm));
    for (std::size_t i = 0; i < n; ++i) {
      T fact = 1;
      taylor[i][0] = T(f.value(i));
      for (std::size_t j = 1; j < mm; ++j) {
        fact *= static_cast<int>(j);
        taylor[i][j] = d[slot(i, j)] * y[slot(i, j)] / fact;
      }
    }
    auto rounded = [](const std::vector<T>& c) {
      std::vector<double> r(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) r[i] = static_cast<double>(c[i]);
      return r;
    };
    std::vector<Polynomial> pieces;
    pieces.reserve(n + 1);
    pieces.emplace_back(rounded(taylor.front()), f.point(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const T h = T(f.point(i + 1)) - T(f.point(i));
      pieces.emplace_back(rounded(detail::hermite_coefficients(h, taylor[i], taylor[i + 1])), f.point(i));
    }
    pieces.emplace_back(rounded(taylor.back()), f.point(n - 1));
    out.F = PiecewisePolynomial(f.points(), std::move(pieces), 2 * m - 2);
  }
  const double s = seminorm_lmp(out.F, m, 2.0);
  out.seminorm_sq = s * s;
  return out;
}

/// Necessary-optimality probe: perturbs sol.F by random C^{m-1} bumps that
/// vanish on E (so F + eps D still interpolates) and returns the largest
/// relative energy decrease (E(F) - E(F + eps D)) / E(F) seen over
/// `trials` directions and both signs. A minimizer gives a value <= 0 up to
/// rounding; strict convexity makes it negative.
///
/// A bump is a Hermite spline on E refined by the gap midpoints: zero
/// values on E, random derivatives there and random jets at midpoints, and
/// zero outside the data span.
inline double optimality_check(const SplineSolution& sol, const SampledFunction& f, int m, int trials,
                               std::uint64_t seed = 0x5eed) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  const std::size_t n = f.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> xs;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(f.point(i));
    if (i + 1 < n) xs.push_back(0.5 * (f.point(i) + f.point(i + 1)));
  }
  const double energy = sol.seminorm_sq;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<double>> jets(xs.size(), std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (std::size_t q = 0; q < xs.size(); ++q) {
      if (q == 0 || q + 1 == xs.size()) continue;  // zero jets at the ends keep the outer pieces zero
      const double local = std::min(xs[q] - xs[q - 1], xs[q + 1] - xs[q]);
      const bool on_e = q % 2 == 0;
      for (int j = on_e ? 1 : 0; j < m; ++j) jets[q][j] = gauss(rng) * std::pow(local, -j);
    }
    const PiecewisePolynomial D = detail::hermite_glue(xs, jets, m, m - 1);
    const double ed = std::pow(seminorm_lmp(D, m, 2.0), 2.0);
    if (ed == 0.0) continue;
    const double eps = energy > 0.0 ? 1e-3 * std::sqrt(energy / ed) : 1.0;
    for (double sign : {1.0, -1.0}) {
      const double e = std::pow(seminorm_lmp(sol.F + D.scaled(sign * eps), m, 2.0), 2.0);
      const double rel = energy > 0.0 ? (energy - e) / energy : -e;
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace whitney
