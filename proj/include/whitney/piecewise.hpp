#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "whitney/error.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// Piecewise polynomial on the whole real line.
///
/// With breakpoints b_0 < ... < b_{N-1} (N >= 1) there are N+1 pieces:
/// piece 0 lives on (-inf, b_0], piece k on [b_{k-1}, b_k] for 1 <= k < N,
/// and piece N on [b_{N-1}, +inf). At a breakpoint the right-hand piece is
/// used for evaluation. `declared_smoothness` is the order c >= -1 up to which
/// adjacent pieces are expected to agree; it is recorded, not enforced, and
/// continuity_defect() measures how well it holds.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                      int declared_smoothness)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), smoothness_(declared_smoothness) {
    if (breaks_.empty()) throw InvalidArgument("piecewise polynomial needs at least one breakpoint");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!std::isfinite(breaks_[i])) throw InvalidArgument("non-finite breakpoint");
      if (i > 0 && !(breaks_[i - 1] < breaks_[i]))
        throw InvalidArgument("breakpoints must be strictly increasing");
    }
    if (pieces_.size() != breaks_.size() + 1)
      throw InvalidArgument("expected " + std::to_string(breaks_.size() + 1) + " pieces, got " +
                            std::to_string(pieces_.size()));
    if (smoothness_ < -1) throw InvalidArgument("declared smoothness must be >= -1");
  }

  /// A single global polynomial, split at one nominal breakpoint.
  static PiecewisePolynomial global(const Polynomial& p, double breakpoint = 0.0) {
    return PiecewisePolynomial({breakpoint}, {p, p}, std::numeric_limits<int>::max() / 2);
  }

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const Polynomial& piece(std::size_t k) const { return pieces_.at(k); }
  std::size_t num_pieces() const { return pieces_.size(); }
  int declared_smoothness() const { return smoothness_; }

  bool is_bounded_piece(std::size_t k) const { return k > 0 && k < breaks_.size(); }
  double piece_lo(std::size_t k) const {
    return k == 0 ? -std::numeric_limits<double>::infinity() : breaks_[k - 1];
  }
  double piece_hi(std::size_t k) const {
    return k >= breaks_.size() ? std::numeric_limits<double>::infinity() : breaks_[k];
  }

  std::size_t piece_index(double x) const {
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
  }

  double operator()(double x) const { return pieces_[piece_index(x)](x); }

  double derivative_at(double x, int order) const { return pieces_[piece_index(x)].derivative_at(x, order); }

  PiecewisePolynomial derivative(int order) const {
    std::vector<Polynomial> d;
    d.reserve(pieces_.size());
    for (const auto& p : pieces_) d.push_back(p.derivative(order));
    return PiecewisePolynomial(breaks_, std::move(d), std::max(-1, smoothness_ - order));
  }

  /// Largest relative mismatch of derivatives 0..order between the two pieces
  /// meeting at any breakpoint. The mismatch at b for derivative k is
  /// |L^(k)(b) - R^(k)(b)| divided by the evaluation scale (sum of absolute
  /// term magnitudes) of both pieces, taken at b and at the far end of a
  /// bounded piece. A derivative that should vanish at b is thus judged
  /// against its size nearby, and the measure is insensitive to units.
  double continuity_defect(int order) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const Polynomial& left = pieces_[i];
      const Polynomial& right = pieces_[i + 1];
      const double b = breaks_[i];
      const int top = std::min(order, std::max(left.degree(), right.degree()));
      for (int k = 0; k <= top; ++k) {
        const double diff = std::abs(left.derivative_at(b, k) - right.derivative_at(b, k));
        double scale = std::max(left.derivative_scale(b, k), right.derivative_scale(b, k));
        if (is_bounded_piece(i)) scale = std::max(scale, left.derivative_scale(breaks_[i - 1], k));
        if (is_bounded_piece(i + 1)) scale = std::max(scale, right.derivative_scale(breaks_[i + 1], k));
        if (diff == 0.0) continue;
        worst = std::max(worst, scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity());
      }
    }
    return worst;
  }

  bool satisfies_declared_smoothness(double rel_tol) const {
    return smoothness_ < 0 || continuity_defect(smoothness_) <= rel_tol;
  }

  PiecewisePolynomial scaled(double s) const {
    std::vector<Polynomial> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(s * q);
    return PiecewisePolynomial(breaks_, std::move(p), smoothness_);
  }

  /// Sum over the merged breakpoint set. Bounded merged pieces are centered at
  /// their left endpoint, unbounded ones at the adjacent breakpoint.
  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    std::vector<double> merged;
    merged.reserve(a.breaks_.size() + b.breaks_.size());
    std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::vector<Polynomial> pieces;
    pieces.reserve(merged.size() + 1);
    for (std::size_t k = 0; k <= merged.size(); ++k) {
      double probe, center;
      if (k == 0) {
        center = merged.front();
        probe = center - (1.0 + std::abs(center));
      } else if (k == merged.size()) {
        center = merged.back();
        probe = center + (1.0 + std::abs(center));
      } else {
        center = merged[k - 1];
        probe = 0.5 * (merged[k - 1] + merged[k]);
      }
      const Polynomial& pa = a.pieces_[a.piece_index(probe)];
      const Polynomial& pb = b.pieces_[b.piece_index(probe)];
      pieces.push_back(pa.recentered(center) + pb.recentered(center));
    }
    return PiecewisePolynomial(std::move(merged), std::move(pieces), std::min(a.smoothness_, b.smoothness_));
  }

 private:
  std::vector<double> breaks_;
  std::vector<Polynomial> pieces_;
  int smoothness_ = -1;
};

}  // namespace whitney
