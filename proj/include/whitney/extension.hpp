#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "whitney/config.hpp"
#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/integrate.hpp"
#include "whitney/jets.hpp"
#include "whitney/piecewise.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// The unique polynomial of degree <= 2m-1 whose m-jet at a matches Pa and
/// whose m-jet at b matches Pb, expanded about a.
///
/// Built in Newton form on the confluent nodes (a x m, b x m): a run of j+1
/// equal nodes has divided difference P^(j)/j!. Working in the local
/// variable t = x - a keeps narrow gaps well conditioned, and the first m
/// Newton terms reproduce the Taylor coefficients of Pa at a exactly.
inline Polynomial hermite_two_point(double a, const Polynomial& Pa, double b, const Polynomial& Pb, int m) {
  if (m < 1) throw InvalidArgument("hermite_two_point: m must be positive");
  if (!(a < b)) throw InvalidArgument("hermite_two_point: need a < b");
  const std::size_t n = 2 * static_cast<std::size_t>(m);
  const double h = b - a;
  std::vector<double> z(n);
  for (int i = 0; i < m; ++i) {
    z[i] = 0.0;
    z[m + i] = h;
  }
  // jet[j] = P^(j)(node) / j!
  std::vector<double> ja(m), jb(m);
  const Polynomial ta = Pa.recentered(a);
  const Polynomial tb = Pb.recentered(b);
  for (int j = 0; j < m; ++j) {
    ja[j] = ta.coeff(j);
    jb[j] = tb.coeff(j);
  }
  // col[i] holds Delta^j over nodes z_i..z_{i+j}.
  std::vector<double> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i < static_cast<std::size_t>(m) ? ja[0] : jb[0];
  std::vector<double> top{col[0]};
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i) {
      if (z[i] == z[i + j]) {
        col[i] = (z[i] == 0.0) ? ja[j] : jb[j];
      } else {
        col[i] = (col[i + 1] - col[i]) / (z[i + j] - z[i]);
      }
    }
    top.push_back(col[0]);
  }
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = a + z[i];
  // Expand about a: nodes are a (exactly) and b, so the local offsets are 0 and h.
  Polynomial q(std::vector<double>{top.back()}, a);
  for (std::size_t j = n - 1; j-- > 0;) {
    q.multiply_by_linear(nodes[j]);
    q = q + Polynomial::constant(top[j], a);
  }
  return q;
}

/// Output of the Whitney extension operator.
struct ExtensionResult {
  PiecewisePolynomial F;
  WhitneyField field;
  int m;
  std::map<double, double> seminorms;  // requested p -> ||F||_{L^m_p}
};

/// Glues a Whitney (m-1)-field into a C^{m-1} piecewise polynomial: the
/// field polynomial of the end point on each unbounded gap and the two-point
/// Hermite polynomial on each bounded gap.
inline PiecewisePolynomial extend_field(const WhitneyField& field) {
  const std::size_t n = field.size();
  const int m = field.m();
  std::vector<Polynomial> pieces;
  pieces.reserve(n + 1);
  pieces.push_back(field.poly(0));
  for (std::size_t i = 0; i + 1 < n; ++i)
    pieces.push_back(hermite_two_point(field.point(i), field.poly(i), field.point(i + 1), field.poly(i + 1), m));
  pieces.push_back(field.poly(n - 1));
  return PiecewisePolynomial(field.base().points(), std::move(pieces), m - 1);
}

/// F = Ext_E(f : L^m_p). Step 1 grows the knot sets S_x, step 2 builds the
/// Lagrange field P_x = L_{S_x}[f], step 3 glues the gap polynomials. Every
/// step is linear in f. Seminorms are evaluated for each p in `seminorm_ps`
/// (p = inf allowed).
inline ExtensionResult whitney_extend(const SampledFunction& f, int m, std::span<const double> seminorm_ps = {},
                                      const Tolerances& tol = Tolerances{}) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  if (f.size() < static_cast<std::size_t>(m))
    throw InsufficientData("need at least " + std::to_string(m) + " points, have " + std::to_string(f.size()));
  WhitneyField field = build_whitney_field(f, m);
  PiecewisePolynomial F = extend_field(field);
  ExtensionResult out{std::move(F), std::move(field), m, {}};
  for (double p : seminorm_ps) out.seminorms[p] = seminorm_lmp(out.F, m, p, tol);
  return out;
}

struct GapBound {
  double lhs;  // max over [a, b] of |H^(m)|
  double rhs;  // smaller of the two normalized jet-difference sums
};

/// Both sides of the gap estimate |H^(m)| <= C(m) min{...} so callers can
/// track the empirical constant lhs / rhs.
inline GapBound gap_derivative_bound_check(double a, const Polynomial& Pa, double b, const Polynomial& Pb, int m) {
  const Polynomial H = hermite_two_point(a, Pa, b, Pb, m);
  const double h = b - a;
  double at_b = 0.0, at_a = 0.0;
  for (int i = 0; i < m; ++i) {
    const double scale = std::pow(h, m - i);
    at_b += std::abs(Pb.derivative_at(b, i) - Pa.derivative_at(b, i)) / scale;
    at_a += std::abs(Pb.derivative_at(a, i) - Pa.derivative_at(a, i)) / scale;
  }
  return {sup_abs_on_interval(H.derivative(m), a, b), std::min(at_a, at_b)};
}

struct ClosedInterval {
  double lo;
  double hi;
};

/// sum over the family of |G(u) - G(v)|^p / (v - u)^{p-1}. The intervals
/// must be nondegenerate and pairwise disjoint (closed, so no shared ends).
inline double riesz_family_functional(const PiecewisePolynomial& G, std::span<const ClosedInterval> intervals,
                                      double p) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("riesz functional needs 1 < p < inf");
  std::vector<ClosedInterval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].lo < sorted[i].hi)) throw InvalidArgument("degenerate interval in family");
    if (i > 0 && !(sorted[i - 1].hi < sorted[i].lo)) throw InvalidArgument("overlapping intervals in family");
  }
  double sum = 0.0;
  for (const auto& I : sorted)
    sum += std::pow(std::abs(G(I.lo) - G(I.hi)), p) / std::pow(I.hi - I.lo, p - 1.0);
  return sum;
}

struct RieszFamily {
  double value = 0.0;
  std::vector<ClosedInterval> intervals;
};

/// Candidate endpoints for families aligned with the breakpoints of G:
/// the breakpoints themselves plus `refine` equally spaced interior points
/// on every bounded piece.
inline std::vector<double> riesz_candidates(const PiecewisePolynomial& G, int refine) {
  std::vector<double> c;
  const auto& b = G.breakpoints();
  for (std::size_t i = 0; i < b.size(); ++i) {
    c.push_back(b[i]);
    if (i + 1 < b.size())
      for (int r = 1; r <= refine; ++r) c.push_back(b[i] + (b[i + 1] - b[i]) * r / (refine + 1));
  }
  return c;
}

/// The family of disjoint closed intervals with endpoints in `candidates`
/// that maximizes riesz_family_functional. Exact over that grid: best[j] is
/// the best family inside [c_0, c_j]; closing an interval [c_i, c_j] leaves
/// [c_0, c_{i-1}] for the rest.
inline RieszFamily maximize_riesz_family(const PiecewisePolynomial& G, std::vector<double> candidates, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("riesz functional needs 1 < p < inf");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const std::size_t k = candidates.size();
  if (k < 2) return {};
  std::vector<double> g(k);
  for (std::size_t i = 0; i < k; ++i) g[i] = G(candidates[i]);
  std::vector<double> best(k, 0.0);
  std::vector<std::ptrdiff_t> start(k, -1);  // -1: c_j not the right end of an interval
  for (std::size_t j = 1; j < k; ++j) {
    best[j] = best[j - 1];
    for (std::size_t i = 0; i < j; ++i) {
      const double term =
          std::pow(std::abs(g[j] - g[i]), p) / std::pow(candidates[j] - candidates[i], p - 1.0);
      const double cand = (i > 0 ? best[i - 1] : 0.0) + term;
      if (cand > best[j]) {
        best[j] = cand;
        start[j] = static_cast<std::ptrdiff_t>(i);
      }
    }
  }
  RieszFamily out;
  out.value = best[k - 1];
  for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k) - 1; j > 0;) {
    if (start[j] < 0) {
      --j;
      continue;
    }
    const std::ptrdiff_t i = start[j];
    out.intervals.push_back({candidates[i], candidates[j]});
    j = i - 1;
  }
  std::reverse(out.intervals.begin(), out.intervals.end());
  return out;
}

}  // namespace whitney
