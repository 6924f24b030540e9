#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "whitney/config.hpp"
#include "whitney/error.hpp"
#include "whitney/piecewise.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisects a bracketed sign change of p on [lo, hi] down to adjacent doubles.
inline double bisect_root(const Polynomial& p, double lo, double hi) {
  int s_lo = sign_of(p(lo));
  for (int it = 0; it < 2100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int s_mid = sign_of(p(mid));
    if (s_mid == 0) return mid;
    if (s_mid == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline bool is_integer_exponent(double p) { return p == std::floor(p) && p <= 64.0; }

}  // namespace detail

/// Points in the open interval (a, b) where p changes sign, ascending.
///
/// The roots of p' cut [a, b] into segments on which p is monotone; each
/// segment holds at most one sign change, found by bisection. Roots of even
/// multiplicity are not sign changes and are never reported, which is all the
/// |P|^p integration needs. Exact zeros at segment ends are kept as split
/// points.
inline std::vector<double> sign_changes(const Polynomial& p, double a, double b) {
  std::vector<double> out;
  if (!(a < b) || p.degree() <= 0) return out;
  std::vector<double> cuts{a};
  for (double c : sign_changes(p.derivative(1), a, b)) cuts.push_back(c);
  cuts.push_back(b);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double vlo = p(lo), vhi = p(hi);
    if (i > 0 && vlo == 0.0) out.push_back(lo);
    if (detail::sign_of(vlo) * detail::sign_of(vhi) < 0) out.push_back(detail::bisect_root(p, lo, hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Integral of |p|^exponent over [a, b] by adaptive Gauss-Kronrod on the
/// whole interval, without any root splitting. This is the independent
/// reference route for lp_piece_integral.
inline double lp_piece_integral_adaptive(const Polynomial& p, double a, double b, double exponent,
                                         double rel_tol = 1e-12) {
  if (!(exponent >= 1.0)) throw InvalidArgument("L_p exponent must be >= 1");
  if (a > b) throw InvalidArgument("integration interval reversed");
  if (a == b || p.is_zero()) return 0.0;
  auto f = [&](double t) { return std::pow(std::abs(p(t)), exponent); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 30, rel_tol);
}

/// Integral of |p(t)|^exponent over [a, b].
///
/// [a, b] is split at the sign changes of p. For integer exponents each
/// sign-constant piece is integrated exactly: p is re-expanded about the
/// piece midpoint, raised to the power, and its antiderivative evaluated at
/// +-h/2. Other exponents use Gauss-Kronrod quadrature per piece after a
/// change of variable that removes the |t - t0|^p behaviour at the split
/// points.
inline double lp_piece_integral(const Polynomial& p, double a, double b, double exponent,
                                const Tolerances& tol = Tolerances{}) {
  if (!(exponent >= 1.0)) throw InvalidArgument("L_p exponent must be >= 1");
  if (a > b) throw InvalidArgument("integration interval reversed");
  if (a == b || p.is_zero()) return 0.0;

  std::vector<double> cuts{a};
  for (double r : sign_changes(p, a, b)) cuts.push_back(r);
  cuts.push_back(b);

  const bool integer = detail::is_integer_exponent(exponent);
  const int ip = static_cast<int>(exponent);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(lo < hi)) continue;
    if (integer) {
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      const Polynomial local = p.recentered(mid);
      int s = detail::sign_of(local(mid));
      if (s == 0) s = detail::sign_of(p(lo + 0.25 * (hi - lo)));
      if (s == 0) s = detail::sign_of(p(lo + 0.75 * (hi - lo)));
      if (s == 0) continue;
      const Polynomial power = local.pow(ip);
      // Odd powers cancel over the symmetric interval [-half, half].
      double piece = 0.0;
      const auto& c = power.coeffs();
      for (std::size_t k = 0; k < c.size(); k += 2)
        piece += c[k] * 2.0 * std::pow(half, static_cast<double>(k + 1)) / static_cast<double>(k + 1);
      if (s < 0 && (ip % 2 == 1)) piece = -piece;
      total += piece;
    } else {
      // Roots sit only at panel ends, where |p|^q behaves like |t - t0|^q.
      // The quintic smoothstep t = lo + w (10u^3 - 15u^4 + 6u^5) flattens
      // both ends to order u^{3q+2}, after which Gauss-Kronrod converges
      // almost at once.
      // Offsets from lo are formed exactly enough; absolute abscissae far
      // from the origin would quantize t and feed noise to the error estimate.
      const double w = hi - lo;
      const std::vector<double> c = p.recentered(lo).coeffs();
      auto f = [&](double u) {
        const double u2 = u * u;
        const double s = w * u2 * u * (10.0 - 15.0 * u + 6.0 * u2);
        const double jac = w * 30.0 * u2 * (1.0 - u) * (1.0 - u);
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
        return std::pow(std::abs(v), exponent) * jac;
      };
      total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, tol.quadrature_rel);
    }
  }
  return total;
}

/// max |p| over [a, b], from the endpoints and the sign changes of p'.
inline double sup_abs_on_interval(const Polynomial& p, double a, double b) {
  if (a > b) throw InvalidArgument("interval reversed");
  if (p.is_zero()) return 0.0;
  double best = std::max(std::abs(p(a)), std::abs(p(b)));
  for (double c : sign_changes(p.derivative(1), a, b)) best = std::max(best, std::abs(p(c)));
  return best;
}

/// Homogeneous Sobolev seminorm ||F^(m)||_{L_p(R)} of a piecewise polynomial.
///
/// Pass p = +infinity for the sup norm. Returns +infinity when an unbounded
/// piece has degree >= m, since F^(m) is then not integrable (or unbounded).
inline double seminorm_lmp(const PiecewisePolynomial& F, int m, double p, const Tolerances& tol = Tolerances{}) {
  if (m < 1) throw InvalidArgument("seminorm order m must be positive");
  if (!(p >= 1.0)) throw InvalidArgument("seminorm exponent must be >= 1");
  const std::size_t last = F.num_pieces() - 1;
  if (F.piece(0).degree() >= m || F.piece(last).degree() >= m) return std::numeric_limits<double>::infinity();

  const bool sup = std::isinf(p);
  double acc = 0.0;
  for (std::size_t k = 1; k < last; ++k) {
    const Polynomial dm = F.piece(k).derivative(m);
    if (dm.is_zero()) continue;
    if (sup) {
      acc = std::max(acc, sup_abs_on_interval(dm, F.piece_lo(k), F.piece_hi(k)));
    } else {
      acc += lp_piece_integral(dm, F.piece_lo(k), F.piece_hi(k), p, tol);
    }
  }
  return sup ? acc : std::pow(acc, 1.0 / p);
}

}  // namespace whitney
