#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/knots.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// A Whitney (m-1)-field on E: one polynomial P_x of degree <= m-1 per point,
/// each expanded about its own point x.
class WhitneyField {
 public:
  WhitneyField(SampledFunction base, int m, std::vector<Polynomial> polys)
      : base_(std::move(base)), m_(m), polys_(std::move(polys)) {
    if (m_ < 1) throw InvalidArgument("field order m must be positive");
    if (polys_.size() != base_.size()) throw InvalidArgument("one polynomial per point of E is required");
    for (const auto& p : polys_)
      if (p.degree() > m_ - 1) throw InvalidArgument("field polynomial exceeds degree m-1");
  }

  const SampledFunction& base() const { return base_; }
  int m() const { return m_; }
  std::size_t size() const { return polys_.size(); }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const Polynomial& poly(std::size_t i) const { return polys_[i]; }
  double point(std::size_t i) const { return base_.point(i); }

 private:
  SampledFunction base_;
  int m_;
  std::vector<Polynomial> polys_;
};

/// P_x = L_{S_x}[f] on the knot sets S_x = Y_{m-1}(x). Linear in f.
inline WhitneyField build_whitney_field(const SampledFunction& f, int m) {
  const std::vector<KnotSet> knots = s_sets(f, m);
  std::vector<Polynomial> polys;
  polys.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    // Newton nodes in order of addition: the anchor comes first, so the
    // constant term about the anchor is exactly f(x).
    std::vector<double> x, v;
    for (std::size_t idx : knots[i].order_of_addition) {
      x.push_back(f.point(idx));
      v.push_back(f.value(idx));
    }
    polys.push_back(newton_to_polynomial(x, newton_coefficients(x, v), f.point(i)));
  }
  return WhitneyField(f, m, std::move(polys));
}

enum class JetMode { full_sequence, exact_sup };

/// sum_{i<m} |P_u^(i)(u) - P_v^(i)(u)|^p / (v-u)^{(m-i)p-1} for points u < v
/// of E given by index.
inline double jet_pair_term(const WhitneyField& field, std::size_t iu, std::size_t iv, double p) {
  const double u = field.point(iu), v = field.point(iv);
  const double h = v - u;
  const int m = field.m();
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double d = field.poly(iu).derivative_at(u, i) - field.poly(iv).derivative_at(u, i);
    if (d == 0.0) continue;
    sum += std::pow(std::abs(d), p) / std::pow(h, (m - i) * p - 1.0);
  }
  return sum;
}

/// The jet functional N_{m,p,E}(field).
///
/// full_sequence sums the pair terms over consecutive points of E.
/// exact_sup maximizes the sum over all increasing subsequences; a
/// subsequence's value only couples consecutive chosen points, so a longest
/// path over the pair DAG (O(n^2) pair terms) gives the exact supremum.
inline double jet_functional(const WhitneyField& field, double p, JetMode mode) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("jet functional needs 1 < p < inf");
  const std::size_t n = field.size();
  if (n < 2) throw InsufficientData("jet functional needs at least two points");
  if (mode == JetMode::full_sequence) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += jet_pair_term(field, i, i + 1, p);
    return std::pow(sum, 1.0 / p);
  }
  std::vector<double> best(n, 0.0);
  double overall = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) best[j] = std::max(best[j], best[i] + jet_pair_term(field, i, j, p));
    overall = std::max(overall, best[j]);
  }
  return std::pow(overall, 1.0 / p);
}

/// sup over a1 != a2 in E of |P_a1(x) - P_a2(x)| / (|x-a1|^m + |x-a2|^m),
/// by enumeration of all pairs.
inline double jet_sharp_maximal(const WhitneyField& field, double x) {
  const std::size_t n = field.size();
  if (n < 2) throw InsufficientData("jet sharp maximal function needs at least two points");
  const int m = field.m();
  std::vector<double> val(n), dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    val[i] = field.poly(i)(x);
    dist[i] = std::pow(std::abs(x - field.point(i)), m);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double den = dist[i] + dist[j];
      if (den == 0.0) continue;
      best = std::max(best, std::abs(val[i] - val[j]) / den);
    }
  return best;
}

}  // namespace whitney
