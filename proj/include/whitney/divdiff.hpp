#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "whitney/config.hpp"
#include "whitney/error.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// A function f on a finite set E = {x_0 < ... < x_{n-1}} (n >= 1).
///
/// Construction rejects unsorted input, repeated abscissae, and gaps below
/// min_gap_rel * span; every functional in the library divides by gap powers.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> points, std::vector<double> values, const Tolerances& tol = Tolerances{})
      : points_(std::move(points)), values_(std::move(values)) {
    if (points_.empty()) throw InsufficientData("sampled function needs at least one point");
    if (points_.size() != values_.size())
      throw InvalidArgument("points and values differ in length (" + std::to_string(points_.size()) + " vs " +
                            std::to_string(values_.size()) + ")");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i]) || !std::isfinite(values_[i]))
        throw InvalidArgument("non-finite sample at index " + std::to_string(i));
    }
    const double span = points_.back() - points_.front();
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const double gap = points_[i] - points_[i - 1];
      if (gap == 0.0) throw DuplicatePoints("duplicate abscissa " + std::to_string(points_[i]));
      if (gap < 0.0) throw InvalidArgument("abscissae must be strictly increasing (index " + std::to_string(i) + ")");
      if (gap < tol.min_gap_rel * span)
        throw DuplicatePoints("abscissae " + std::to_string(points_[i - 1]) + " and " + std::to_string(points_[i]) +
                              " are numerically indistinguishable");
    }
  }

  /// Sorts (point, value) pairs first; duplicates are still rejected.
  static SampledFunction from_unsorted(std::vector<double> points, std::vector<double> values,
                                       const Tolerances& tol = Tolerances{}) {
    if (points.size() != values.size()) throw InvalidArgument("points and values differ in length");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    std::vector<double> p, v;
    p.reserve(order.size());
    v.reserve(order.size());
    for (std::size_t i : order) {
      p.push_back(points[i]);
      v.push_back(values[i]);
    }
    return SampledFunction(std::move(p), std::move(v), tol);
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  double point(std::size_t i) const { return points_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double span() const { return points_.back() - points_.front(); }

  /// Same abscissae, values transformed by g.
  template <class Fn>
  SampledFunction with_values(Fn&& g) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(points_[i], values_[i]);
    return SampledFunction(points_, std::move(v));
  }

 private:
  std::vector<double> points_;
  std::vector<double> values_;
};

/// Newton coefficients Delta^j f[z_0..z_j], j = 0..k, for nodes in the given
/// order (the top row of the divided-difference table).
inline std::vector<double> newton_coefficients(std::span<const double> nodes, std::span<const double> values) {
  if (nodes.size() != values.size()) throw InvalidArgument("nodes and values differ in length");
  if (nodes.empty()) throw InsufficientData("divided difference needs at least one node");
  const std::size_t n = nodes.size();
  std::vector<double> col(values.begin(), values.end());
  std::vector<double> top{col[0]};
  top.reserve(n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i) {
      const double den = nodes[i + j] - nodes[i];
      if (den == 0.0) throw DuplicatePoints("repeated node in divided difference");
      col[i] = (col[i + 1] - col[i]) / den;
    }
    top.push_back(col[0]);
  }
  return top;
}

/// Delta^k f over k+1 pairwise distinct points, via the recursive quotient
/// rule on the sorted nodes.
inline double divided_difference(std::span<const double> points, std::span<const double> values) {
  if (points.size() != values.size()) throw InvalidArgument("points and values differ in length");
  if (points.empty()) throw InsufficientData("divided difference needs at least one point");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> x, v;
  x.reserve(order.size());
  v.reserve(order.size());
  for (std::size_t i : order) {
    if (!x.empty() && points[i] == x.back()) throw DuplicatePoints("repeated point in divided difference");
    x.push_back(points[i]);
    v.push_back(values[i]);
  }
  return newton_coefficients(x, v).back();
}

/// Delta^k f over the points of f selected by ascending indices.
inline double divided_difference(const SampledFunction& f, std::span<const std::size_t> indices) {
  std::vector<double> x, v;
  x.reserve(indices.size());
  v.reserve(indices.size());
  for (std::size_t i : indices) {
    x.push_back(f.point(i));
    v.push_back(f.value(i));
  }
  return newton_coefficients(x, v).back();
}

/// Newton form expanded in powers of (x - center).
inline Polynomial newton_to_polynomial(std::span<const double> nodes, std::span<const double> coeffs,
                                       double center) {
  if (coeffs.empty()) return Polynomial({}, center);
  Polynomial q(std::vector<double>{coeffs.back()}, center);
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
    q.multiply_by_linear(nodes[j]);
    q = q + Polynomial::constant(coeffs[j], center);
  }
  return Polynomial(q.coeffs(), center);
}

/// Lagrange interpolant L_S[f] of degree <= k through k+1 distinct points,
/// expanded about `center`.
inline Polynomial lagrange(std::span<const double> points, std::span<const double> values, double center) {
  if (points.size() != values.size()) throw InvalidArgument("points and values differ in length");
  if (points.empty()) throw InsufficientData("interpolation needs at least one point");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> x, v;
  for (std::size_t i : order) {
    if (!x.empty() && points[i] == x.back()) throw DuplicatePoints("repeated interpolation node");
    x.push_back(points[i]);
    v.push_back(values[i]);
  }
  return newton_to_polynomial(x, newton_coefficients(x, v), center);
}

/// Lagrange interpolant expanded about the smallest node.
inline Polynomial lagrange(std::span<const double> points, std::span<const double> values) {
  if (points.empty()) throw InsufficientData("interpolation needs at least one point");
  return lagrange(points, values, *std::min_element(points.begin(), points.end()));
}

/// Delta^m f[x_i..x_{i+m}] for every consecutive window, i = 0..n-m-1.
inline std::vector<double> window_divided_differences(const SampledFunction& f, int m) {
  if (m < 0) throw InvalidArgument("divided-difference order must be nonnegative");
  const std::size_t n = f.size();
  if (n < static_cast<std::size_t>(m) + 1)
    throw InsufficientData("need at least " + std::to_string(m + 1) + " points, have " + std::to_string(n));
  std::vector<double> col = f.values();
  for (int j = 1; j <= m; ++j)
    for (std::size_t i = 0; i + j < n; ++i) col[i] = (col[i + 1] - col[i]) / (f.point(i + j) - f.point(i));
  col.resize(n - m);
  return col;
}

/// N_{m,inf}(f:E): the largest |Delta^m f| over consecutive (m+1)-windows,
/// which equals the largest over all (m+1)-subsets of E.
inline double n_infty_functional(const SampledFunction& f, int m) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  double best = 0.0;
  for (double d : window_divided_differences(f, m)) best = std::max(best, std::abs(d));
  return best;
}

}  // namespace whitney
