#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "whitney/config.hpp"
#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/extension.hpp"
#include "whitney/integrate.hpp"

namespace whitney {

namespace detail {

inline void require_points(const SampledFunction& f, int m) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  if (f.size() < static_cast<std::size_t>(m) + 1)
    throw InsufficientData("need at least " + std::to_string(m + 1) + " points, have " + std::to_string(f.size()));
}

inline void require_exponent(double p) {
  if (!(p > 1.0)) throw InvalidArgument("exponent p must exceed 1");
}

/// Calls fn(indices) for every ascending k-subset of {0..n-1}, in
/// lexicographic order.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// (x_{last} - x_{first}) |Delta^m f| for the points selected by idx.
inline double window_term(const SampledFunction& f, std::span<const std::size_t> idx, double p) {
  const double width = f.point(idx.back()) - f.point(idx.front());
  return width * std::pow(std::abs(divided_difference(f, idx)), p);
}

}  // namespace detail

/// de Boor's functional T_{m,p}: the window sum over consecutive points,
/// (sum_i (x_{i+m} - x_i) |Delta^m f[x_i..x_{i+m}]|^p)^{1/p}.
/// For p = inf this is the largest window |Delta^m f|.
inline double deboor_functional(const SampledFunction& f, int m, double p) {
  detail::require_points(f, m);
  detail::require_exponent(p);
  if (std::isinf(p)) return n_infty_functional(f, m);
  const std::vector<double> d = window_divided_differences(f, m);
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += (f.point(i + m) - f.point(i)) * std::pow(std::abs(d[i]), p);
  return std::pow(sum, 1.0 / p);
}

enum class VariationalMode { full_sequence, exact_dp, brute_force };

inline constexpr std::size_t kBruteForceMaxPoints = 14;
inline constexpr int kExactDpMaxOrder = 3;
inline constexpr std::size_t kExactDpMaxPoints = 40;

/// N_{m,p}(f:E): the supremum of the window sum over all increasing
/// subsequences of E.
///
/// full_sequence evaluates only E itself (de Boor's value, a lower bound).
/// exact_dp is exact: a window couples m+1 consecutive chosen points, so a
/// dynamic program whose state is the last m chosen points adds one window
/// per transition, O(n^{m+1}). brute_force enumerates every subsequence.
/// p = inf gives the largest window |Delta^m f| in every mode.
inline double variational_functional(const SampledFunction& f, int m, double p, VariationalMode mode) {
  detail::require_points(f, m);
  detail::require_exponent(p);
  const std::size_t n = f.size();
  if (mode == VariationalMode::brute_force && n > kBruteForceMaxPoints)
    throw InvalidArgument("brute_force mode supports at most " + std::to_string(kBruteForceMaxPoints) + " points");
  if (mode == VariationalMode::exact_dp && (m > kExactDpMaxOrder || n > kExactDpMaxPoints))
    throw InvalidArgument("exact_dp mode supports m <= 3 and at most 40 points");
  if (std::isinf(p)) return n_infty_functional(f, m);
  if (mode == VariationalMode::full_sequence) return deboor_functional(f, m, p);

  const std::size_t mm = static_cast<std::size_t>(m);
  if (mode == VariationalMode::brute_force) {
    double best = 0.0;
    std::vector<std::size_t> chosen;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      chosen.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) chosen.push_back(i);
      if (chosen.size() < mm + 1) continue;
      double sum = 0.0;
      for (std::size_t i = 0; i + mm < chosen.size(); ++i)
        sum += detail::window_term(f, std::span<const std::size_t>(chosen.data() + i, mm + 1), p);
      best = std::max(best, sum);
    }
    return std::pow(best, 1.0 / p);
  }

  // exact_dp: value[state] = best window sum of a subsequence ending with the
  // m indices of `state`. States are flattened m-tuples over [0, n).
  std::size_t states = 1;
  for (std::size_t i = 0; i < mm; ++i) states *= n;
  std::vector<double> value(states, 0.0);
  auto flat = [&](std::span<const std::size_t> idx) {
    std::size_t r = 0;
    for (std::size_t i : idx) r = r * n + i;
    return r;
  };
  double best = 0.0;
  std::vector<std::size_t> window(mm + 1);
  // Visiting states in order of their last index makes every predecessor final.
  for (std::size_t last = mm - 1; last < n; ++last) {
    detail::for_each_combination(last, mm - 1, [&](std::span<const std::size_t> prefix) {
      for (std::size_t i = 0; i + 1 < mm; ++i) window[i] = prefix[i];
      window[mm - 1] = last;
      const double v = value[flat(std::span<const std::size_t>(window.data(), mm))];
      best = std::max(best, v);
      for (std::size_t next = last + 1; next < n; ++next) {
        window[mm] = next;
        const double cand = v + detail::window_term(f, window, p);
        const std::size_t to = flat(std::span<const std::size_t>(window.data() + 1, mm));
        if (cand > value[to]) value[to] = cand;
      }
    });
  }
  return std::pow(best, 1.0 / p);
}

/// The most exact mode available for n points and order m: the dynamic
/// program, then enumeration, then the full sequence (a lower bound).
inline VariationalMode best_variational_mode(std::size_t n, int m) {
  if (m <= kExactDpMaxOrder && n <= kExactDpMaxPoints) return VariationalMode::exact_dp;
  if (n <= kBruteForceMaxPoints) return VariationalMode::brute_force;
  return VariationalMode::full_sequence;
}

inline const char* to_string(VariationalMode mode) {
  switch (mode) {
    case VariationalMode::full_sequence: return "full_sequence";
    case VariationalMode::exact_dp: return "exact_dp";
    case VariationalMode::brute_force: return "brute_force";
  }
  return "unknown";
}

/// (f)#(x): sup over x_0 < ... < x_m in E of
/// |Delta^{m-1}f[x_0..x_{m-1}] - Delta^{m-1}f[x_1..x_m]| / (|x-x_0| + |x-x_m|),
/// by enumeration of all C(n, m+1) subsets.
inline double sharp_maximal_point(const SampledFunction& f, int m, double x) {
  detail::require_points(f, m);
  const std::size_t mm = static_cast<std::size_t>(m);
  double best = 0.0;
  std::vector<double> xs(mm + 1), vs(mm + 1);
  detail::for_each_combination(f.size(), mm + 1, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i <= mm; ++i) {
      xs[i] = f.point(idx[i]);
      vs[i] = f.value(idx[i]);
    }
    const double lo = newton_coefficients(std::span<const double>(xs.data(), mm),
                                          std::span<const double>(vs.data(), mm)).back();
    const double hi = newton_coefficients(std::span<const double>(xs.data() + 1, mm),
                                          std::span<const double>(vs.data() + 1, mm)).back();
    const double den = std::abs(x - xs.front()) + std::abs(x - xs.back());
    best = std::max(best, std::abs(lo - hi) / den);
  });
  return best;
}

/// sup over (m+1)-subsets S of |Delta^m f[S]| diam S / diam({x} u S), the
/// companion quantity that lies between (f)#(x) and 2 (f)#(x).
inline double sharp_maximal_alternative(const SampledFunction& f, int m, double x) {
  detail::require_points(f, m);
  double best = 0.0;
  detail::for_each_combination(f.size(), static_cast<std::size_t>(m) + 1, [&](std::span<const std::size_t> idx) {
    const double a = f.point(idx.front()), b = f.point(idx.back());
    const double diam_with_x = std::max(b, x) - std::min(a, x);
    best = std::max(best, std::abs(divided_difference(f, idx)) * (b - a) / diam_with_x);
  });
  return best;
}

/// Fast evaluator for (f)#. For a fixed outer pair (x_i, x_j) the
/// denominator does not depend on the interior points, so the numerator
/// maximum M_ij = max |Delta^m f[S]| (x_j - x_i) is tabulated once and each
/// evaluation costs one pass over the pairs.
class SharpMaximal {
 public:
  SharpMaximal(const SampledFunction& f, int m) : points_(f.points()), lo_(f.point(0)), hi_(f.point(f.size() - 1)) {
    detail::require_points(f, m);
    const std::size_t n = f.size();
    std::vector<double> table(n * n, 0.0);
    detail::for_each_combination(n, static_cast<std::size_t>(m) + 1, [&](std::span<const std::size_t> idx) {
      const double w = f.point(idx.back()) - f.point(idx.front());
      double& slot = table[idx.front() * n + idx.back()];
      slot = std::max(slot, std::abs(divided_difference(f, idx)) * w);
    });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (table[i * n + j] > 0.0) pairs_.push_back({f.point(i), f.point(j), table[i * n + j]});
    for (const auto& q : pairs_) max_numerator_ = std::max(max_numerator_, q.numerator);
  }

  double operator()(double x) const {
    double best = 0.0;
    for (const auto& q : pairs_) best = std::max(best, q.numerator / (std::abs(x - q.a) + std::abs(x - q.b)));
    return best;
  }

  double alternative(double x) const {
    double best = 0.0;
    for (const auto& q : pairs_) best = std::max(best, q.numerator / (std::max(q.b, x) - std::min(q.a, x)));
    return best;
  }

  double max_numerator() const { return max_numerator_; }

  // Each term peaks at numerator / (b - a) on [a, b].
  double sup() const {
    double best = 0.0;
    for (const auto& q : pairs_) best = std::max(best, q.numerator / (q.b - q.a));
    return best;
  }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Integral of ((f)#)^p over R, exactly up to rounding.
  ///
  /// On any interval free of data points each term is M / (D + s t) in the
  /// offset t, with slope s in {-2, 0, 2}. Two such terms cross at most
  /// once, so the upper envelope is traced by jumping from the current
  /// maximal term to the first term that overtakes it, and each envelope
  /// piece is integrated in closed form, including the two unbounded tails.
  double integral_pow(double p) const {
    if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("sharp maximal L_p norm needs 1 < p < inf");
    if (pairs_.empty()) return 0.0;
    double total = 0.0;
    std::vector<Term> terms(pairs_.size());
    // Left tail, mirrored: t = lo - x >= 0.
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      terms[i] = {pairs_[i].numerator, (pairs_[i].a - lo_) + (pairs_[i].b - lo_), 2.0};
    total += envelope_integral(terms, std::numeric_limits<double>::infinity(), p);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
      const double x0 = points_[k];
      for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const Pair& q = pairs_[i];
        const double slope = x0 < q.a ? -2.0 : (x0 < q.b ? 0.0 : 2.0);
        terms[i] = {q.numerator, std::abs(x0 - q.a) + std::abs(x0 - q.b), slope};
      }
      total += envelope_integral(terms, points_[k + 1] - x0, p);
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      terms[i] = {pairs_[i].numerator, (hi_ - pairs_[i].a) + (hi_ - pairs_[i].b), 2.0};
    total += envelope_integral(terms, std::numeric_limits<double>::infinity(), p);
    return total;
  }

 private:
  struct Pair {
    double a, b, numerator;
  };
  // M / (D + s t) for offsets t >= 0.
  struct Term {
    double M, D, s;
  };

  // Is u above v just to the right of t? Values within a relative 1e-12
  // count as tied, which is what a computed crossing time delivers, and
  // ties go to the term that grows faster.
  static bool above(const Term& u, const Term& v, double t) {
    const double du = u.D + u.s * t, dv = v.D + v.s * t;
    const double vu = u.M / du, vv = v.M / dv;
    constexpr double kTie = 1e-12;
    if (vu > vv * (1.0 + kTie)) return true;
    if (vu < vv * (1.0 - kTie)) return false;
    return -u.s / du > -v.s / dv;
  }

  // Integral of (M / (D + s t))^p over [t0, t1], t1 may be infinite.
  static double piece_integral(const Term& u, double t0, double t1, double p) {
    if (u.s == 0.0) return std::pow(u.M / u.D, p) * (t1 - t0);
    const double d0 = u.D + u.s * t0;
    if (std::isinf(t1)) return std::pow(u.M, p) * std::pow(d0, 1.0 - p) / (2.0 * (p - 1.0));
    const double d1 = u.D + u.s * t1;
    const double dlo = std::min(d0, d1);
    const double growth = 2.0 * (t1 - t0) / dlo;  // (dhi - dlo) / dlo
    return std::pow(u.M, p) * std::pow(dlo, 1.0 - p) / (2.0 * (p - 1.0)) *
           -std::expm1((1.0 - p) * std::log1p(growth));
  }

  static double envelope_integral(const std::vector<Term>& terms, double length, double p) {
    // Starting from the overtaking term keeps a crossing that rounding
    // hides at t from handing the lead back to the old term.
    auto leader = [&](std::size_t c, double t) {
      for (std::size_t j = 0; j < terms.size(); ++j)
        if (above(terms[j], terms[c], t)) c = j;
      return c;
    };
    double t = 0.0, total = 0.0;
    std::size_t c = leader(0, 0.0);
    for (std::size_t guard = 0; guard <= 2 * terms.size() + 2; ++guard) {
      // First t' > t where some term overtakes c: the sign of
      // M_j (D_c + s_c t) - M_c (D_j + s_j t) turns positive.
      double next = length;
      std::size_t overtaker = c;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        const Term& u = terms[j];
        const Term& v = terms[c];
        const double sigma = u.M * v.s - v.M * u.s;
        if (!(sigma > 0.0)) continue;
        const double cross = (v.M * u.D - u.M * v.D) / sigma;
        if (cross > t && cross < next) {
          next = cross;
          overtaker = j;
        }
      }
      total += piece_integral(terms[c], t, next, p);
      if (!(next < length)) return total;
      t = next;
      c = leader(overtaker, t);
    }
    throw NumericalFailure("sharp maximal envelope did not terminate");
  }

  std::vector<double> points_;
  std::vector<Pair> pairs_;
  double max_numerator_ = 0.0;
  double lo_, hi_;
};

/// ||(f)#||_{L_p(R)} by the exact envelope integral of SharpMaximal.
inline double sharp_maximal_lp_norm(const SampledFunction& f, int m, double p) {
  detail::require_points(f, m);
  if (!(p > 1.0)) throw InvalidArgument("sharp maximal L_p norm needs p > 1 (tail is not integrable otherwise)");
  if (std::isinf(p)) throw InvalidArgument("sharp maximal L_p norm needs finite p");
  return std::pow(SharpMaximal(f, m).integral_pow(p), 1.0 / p);
}

/// ||(f)#||_{L_p(R)} by quadrature, an independent route to the same number.
///
/// Adaptive Gauss-Kronrod over [min E - R, max E + R] with R = 10 span(E),
/// split at the data points. Beyond that, (f)#(x) is squeezed between
/// M/(2|x| - 2 min E) and M/(2|x| - 2 max E) (M the largest tabulated
/// numerator); tails are integrated panel by panel with doubling widths
/// until the analytic upper bound on what remains is below tail_rel of the
/// running total, and the mean of the two analytic bounds closes the tail.
inline double sharp_maximal_lp_norm_quadrature(const SampledFunction& f, int m, double p,
                                               const Tolerances& tol = Tolerances{}) {
  detail::require_points(f, m);
  if (!(p > 1.0)) throw InvalidArgument("sharp maximal L_p norm needs p > 1 (tail is not integrable otherwise)");
  if (std::isinf(p)) throw InvalidArgument("sharp maximal L_p norm needs finite p");
  const SharpMaximal sharp(f, m);
  const double big_m = sharp.max_numerator();
  if (big_m == 0.0) return 0.0;

  auto integrand = [&](double x) { return std::pow(sharp(x), p); };
  auto panel = [&](double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 25, tol.quadrature_rel);
  };
  const double lo = sharp.lo(), hi = sharp.hi();
  const double span = hi - lo;
  const double pad = 10.0 * span;

  double total = 0.0;
  const auto& pts = f.points();
  total += panel(lo - pad, lo);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += panel(pts[i], pts[i + 1]);
  total += panel(hi, hi + pad);

  // Integral of (M / (2t - d))^p over t >= L (right tail, 2L > d).
  auto tail = [&](double L, double d) { return std::pow(big_m, p) * std::pow(2.0 * L - d, 1.0 - p) / (2.0 * (p - 1.0)); };

  double right = hi + pad, left = lo - pad;
  for (int it = 0; it < 200; ++it) {
    const double upper = tail(right, 2.0 * hi);
    if (upper < tol.tail_rel * total) {
      total += 0.5 * (upper + tail(right, 2.0 * lo));
      break;
    }
    const double next = hi + 2.0 * (right - hi);
    total += panel(right, next);
    right = next;
  }
  for (int it = 0; it < 200; ++it) {
    // Mirror image: distance from the left tail to the set.
    const double upper = tail(-left, -2.0 * lo);
    if (upper < tol.tail_rel * total) {
      total += 0.5 * (upper + tail(-left, -2.0 * hi));
      break;
    }
    const double next = lo - 2.0 * (lo - left);
    total += panel(next, left);
    left = next;
  }
  return std::pow(total, 1.0 / p);
}

/// Finiteness and Favard/de Boor constants for a given m.
struct ConstantsTable {
  int m = 1;
  double theta = 0.0;                   // theta_m = (pi/2)^{m+1} / sum_j ((-1)^j/(2j+1))^{m+1}
  double c_mm = 0.0;                    // de Boor's upper bound for K(m)
  double gamma_lower = 0.0;             // (pi/2)^{m-1}
  double gamma_upper = 0.0;             // (m-1) 9^m
  bool bounds_apply = false;            // the two gamma bounds are stated for m > 2
  double euler_spline_norm = 0.0;       // theta_m 2^m: optimal extension norm of (-1)^i on Z
  std::optional<double> theta_exact;    // 1, 2 for m = 1, 2
  std::optional<double> gamma_sharp_exact;
  std::optional<double> k_exact;        // K(1) = theta_1 = 1, K(2) = 2
};

/// sum over j in Z of ((-1)^j / (2j+1))^s. Pairing j with -j-1 gives
/// 2 ((-1)^j/(2j+1))^s. For even s the pairs are 2/(2j+1)^s and sum to
/// 2 (1 - 2^{-s}) zeta(s). For odd s the series alternates and is summed
/// up to the first pair below series_rel of the leading pair.
inline double theta_series(int s, const Tolerances& tol = Tolerances{}) {
  if (s < 2) throw InvalidArgument("theta series needs exponent >= 2");
  if (s % 2 == 0) return 2.0 * (1.0 - std::pow(2.0, -s)) * boost::math::zeta(static_cast<double>(s));
  // Find the cut first, then add the pairs from the smallest up.
  auto pair = [s](long j) { return 2.0 * ((j % 2 == 0) ? 1.0 : -1.0) / std::pow(2.0 * j + 1.0, s); };
  const double lead = pair(0);
  long cut = 1;
  while (std::abs(pair(cut)) >= tol.series_rel * lead) ++cut;
  // Alternating tail: half the first omitted pair is the best single estimate.
  double sum = 0.5 * pair(cut);
  for (long j = cut - 1; j >= 0; --j) sum += pair(j);
  return sum;
}

inline ConstantsTable constants_table(int m, const Tolerances& tol = Tolerances{}) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  ConstantsTable t;
  t.m = m;
  t.theta = std::pow(kPi / 2.0, m + 1) / theta_series(m + 1, tol);
  double c = std::pow(2.0, m - 2) / m;
  for (int i = 1; i <= m; ++i)
    c += detail::binomial(m, i) * detail::binomial(m - 1, i - 1) * std::pow(4.0, m - i);
  t.c_mm = c;
  t.gamma_lower = std::pow(kPi / 2.0, m - 1);
  t.gamma_upper = (m - 1) * std::pow(9.0, m);
  t.bounds_apply = m > 2;
  t.euler_spline_norm = t.theta * std::pow(2.0, m);
  if (m == 1) {
    t.theta_exact = 1.0;
    t.gamma_sharp_exact = 1.0;
    t.k_exact = 1.0;
  } else if (m == 2) {
    t.theta_exact = 2.0;
    t.gamma_sharp_exact = 2.0;
    t.k_exact = 2.0;
  }
  return t;
}

struct LinftyBracket {
  double lower;  // m! N_{m,inf}(f:E)
  double upper;  // ||Ext(f)||_{L^m_inf}
};

/// lower <= ||f||_{L^m_inf|E} <= upper: the window bound from below and the
/// Whitney extension's seminorm from above.
inline LinftyBracket linfty_trace_bracket(const SampledFunction& f, int m) {
  detail::require_points(f, m);
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  const ExtensionResult ext = whitney_extend(f, m);
  return {fact * n_infty_functional(f, m), seminorm_lmp(ext.F, m, std::numeric_limits<double>::infinity())};
}

}  // namespace whitney
