#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "whitney/error.hpp"

namespace whitney {

/// Dense real polynomial P(x) = sum_k coeffs[k] * (x - center)^k.
///
/// The expansion center defaults to 0, giving the ordinary monomial form.
/// Jets and gap pieces keep the center at a nearby data point; evaluating a
/// polynomial far from its center is where cancellation happens, so every
/// operation preserves the center unless asked to re-expand.
///
/// The zero polynomial has no coefficients. Normalization only strips
/// trailing coefficients that are exactly zero.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<double> coeffs, double center = 0.0)
      : coeffs_(std::move(coeffs)), center_(center) {
    normalize();
  }

  Polynomial(std::initializer_list<double> coeffs)
      : coeffs_(coeffs) {
    normalize();
  }

  static Polynomial constant(double value, double center = 0.0) {
    return Polynomial(std::vector<double>{value}, center);
  }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double center() const { return center_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of (x - center)^k; 0 beyond the degree.
  double coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
  }

  double max_abs_coeff() const {
    double r = 0.0;
    for (double c : coeffs_) r = std::max(r, std::abs(c));
    return r;
  }

  /// Horner evaluation.
  double operator()(double x) const {
    const double t = x - center_;
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
    return r;
  }

  /// P^{(order)}(x) without materializing the derivative.
  double derivative_at(double x, int order) const {
    const int n = static_cast<int>(coeffs_.size());
    if (order >= n) return 0.0;
    const double t = x - center_;
    double r = 0.0;
    for (int k = n - 1; k >= order; --k) r = r * t + coeffs_[k] * falling(k, order);
    return r;
  }

  /// Magnitude sum_k |c_k| k!/(k-order)! |x-center|^{k-order}: the size of
  /// the terms that derivative_at adds up. Used to turn absolute mismatches
  /// into relative ones.
  double derivative_scale(double x, int order) const {
    const int n = static_cast<int>(coeffs_.size());
    const double t = std::abs(x - center_);
    double r = 0.0;
    for (int k = n - 1; k >= order; --k) r = r * t + std::abs(coeffs_[k]) * falling(k, order);
    return r;
  }

  Polynomial derivative(int order = 1) const {
    if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
    const int n = static_cast<int>(coeffs_.size());
    if (order >= n) return Polynomial({}, center_);
    std::vector<double> d(n - order);
    for (int k = order; k < n; ++k) d[k - order] = coeffs_[k] * falling(k, order);
    return Polynomial(std::move(d), center_);
  }

  /// Antiderivative vanishing at the center.
  Polynomial antiderivative() const {
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a), center_);
  }

  /// The same polynomial expanded about a new center (Taylor shift).
  Polynomial recentered(double new_center) const {
    if (new_center == center_ || coeffs_.size() <= 1) return Polynomial(coeffs_, new_center);
    const double delta = new_center - center_;
    std::vector<double> a = coeffs_;
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n - 1; ++i)
      for (int k = n - 2; k >= i; --k) a[k] += delta * a[k + 1];
    return Polynomial(std::move(a), new_center);
  }

  /// Drops powers above max_degree (in the current center).
  Polynomial truncated(int max_degree) const {
    if (max_degree < 0) return Polynomial({}, center_);
    if (max_degree >= degree()) return *this;
    return Polynomial(std::vector<double>(coeffs_.begin(), coeffs_.begin() + max_degree + 1), center_);
  }

  /// Truncated Taylor polynomial T^{order}_{x0}[P], expanded about x0.
  Polynomial taylor_jet(double x0, int order) const {
    if (order < 0) throw InvalidArgument("jet order must be nonnegative");
    return recentered(x0).truncated(order);
  }

  Polynomial pow(int exponent) const {
    if (exponent < 0) throw InvalidArgument("negative polynomial power");
    Polynomial result = Polynomial::constant(1.0, center_);
    Polynomial base = *this;
    while (exponent > 0) {
      if (exponent & 1) result = result * base;
      exponent >>= 1;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  Polynomial operator-() const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v = -v;
    return Polynomial(std::move(c), center_);
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const Polynomial bb = b.center_ == a.center_ ? b : b.recentered(a.center_);
    std::vector<double> c(std::max(a.coeffs_.size(), bb.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < bb.coeffs_.size(); ++k) c[k] += bb.coeffs_[k];
    return Polynomial(std::move(c), a.center_);
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c = p.coeffs_;
    for (double& v : c) v *= s;
    return Polynomial(std::move(c), p.center_);
  }
  friend Polynomial operator*(const Polynomial& p, double s) { return s * p; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial({}, a.center_);
    const Polynomial bb = b.center_ == a.center_ ? b : b.recentered(a.center_);
    std::vector<double> c(a.coeffs_.size() + bb.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < bb.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * bb.coeffs_[j];
    return Polynomial(std::move(c), a.center_);
  }

  /// Multiplies by (x - root) in place, keeping the center.
  void multiply_by_linear(double root) {
    if (coeffs_.empty()) return;
    const double delta = root - center_;
    coeffs_.push_back(0.0);
    for (std::size_t k = coeffs_.size() - 1; k > 0; --k) coeffs_[k] = coeffs_[k - 1] - delta * coeffs_[k];
    coeffs_[0] = -delta * coeffs_[0];
    normalize();
  }

  /// Exact coefficient and center equality.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.center_ == b.center_ && a.coeffs_ == b.coeffs_;
  }

  /// k!/(k-order)!
  static double falling(int k, int order) {
    double r = 1.0;
    for (int i = 0; i < order; ++i) r *= static_cast<double>(k - i);
    return r;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::vector<double> coeffs_;
  double center_ = 0.0;
};

inline double eval(const Polynomial& p, double x) { return p(x); }

inline Polynomial derivative(const Polynomial& p, int order) { return p.derivative(order); }

inline Polynomial taylor_jet(const Polynomial& p, double x0, int order) { return p.taylor_jet(x0, order); }

}  // namespace whitney
