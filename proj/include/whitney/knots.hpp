#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"

namespace whitney {

/// Interpolation knots grown around an anchor point of E.
///
/// The knots are always a block of consecutive points of E, i.e.
/// [min members, max members] contains no other point of E.
struct KnotSet {
  double anchor = 0.0;
  std::vector<double> members;                 // ascending
  std::vector<std::size_t> order_of_addition;  // indices into E: y_0, y_1, ...
  std::size_t first = 0;                       // index of min member in E
  std::size_t last = 0;                        // index of max member in E

  std::size_t size() const { return members.size(); }
  double diameter() const { return members.back() - members.front(); }
  friend bool operator==(const KnotSet& a, const KnotSet& b) { return a.members == b.members; }
};

/// The point of E \ A nearest to A; ties go to the smaller point.
/// E and A are ascending, A is a nonempty proper subset of E.
inline double nearest_outside(std::span<const double> E, std::span<const double> A) {
  if (A.empty()) throw InvalidArgument("nearest_outside: A must be nonempty");
  if (A.size() >= E.size()) throw InvalidArgument("nearest_outside: A must be a proper subset of E");
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_dist = std::numeric_limits<double>::infinity();
  for (double e : E) {
    auto it = std::lower_bound(A.begin(), A.end(), e);
    if (it != A.end() && *it == e) continue;
    double d = std::numeric_limits<double>::infinity();
    if (it != A.end()) d = std::min(d, *it - e);
    if (it != A.begin()) d = std::min(d, e - *(it - 1));
    if (d < best_dist) {
      best_dist = d;
      best = e;
    }
  }
  if (std::isnan(best)) throw InvalidArgument("nearest_outside: A must be a proper subset of E");
  return best;
}

/// Y_k(x): start from {x} and repeatedly add the point of E nearest to the
/// current set, k times or until E is exhausted.
///
/// Every point of a finite set is isolated, so the limit-point stopping rules
/// of the general procedure never fire here and are not implemented. Because
/// the set stays a consecutive block, the nearest outside point is always one
/// of the two neighbours of the block; on a tie the left neighbour wins, the
/// same convention as nearest_outside().
inline KnotSet knot_set(std::span<const double> E, double x, int k) {
  if (k < 0) throw InvalidArgument("knot_set: k must be nonnegative");
  auto it = std::lower_bound(E.begin(), E.end(), x);
  if (it == E.end() || *it != x) throw InvalidArgument("knot_set: anchor is not a point of E");
  const std::size_t anchor = static_cast<std::size_t>(it - E.begin());
  KnotSet out;
  out.anchor = x;
  out.first = out.last = anchor;
  out.order_of_addition.push_back(anchor);
  for (int j = 0; j < k; ++j) {
    const bool has_left = out.first > 0;
    const bool has_right = out.last + 1 < E.size();
    if (!has_left && !has_right) break;
    bool take_left;
    if (!has_right) {
      take_left = true;
    } else if (!has_left) {
      take_left = false;
    } else {
      take_left = (E[out.first] - E[out.first - 1]) <= (E[out.last + 1] - E[out.last]);
    }
    if (take_left) {
      out.order_of_addition.push_back(--out.first);
    } else {
      out.order_of_addition.push_back(++out.last);
    }
  }
  out.members.assign(E.begin() + static_cast<std::ptrdiff_t>(out.first),
                     E.begin() + static_cast<std::ptrdiff_t>(out.last) + 1);
  return out;
}

/// S_x = Y_{m-1}(x) for every x in E; each has exactly m members.
inline std::vector<KnotSet> s_sets(const SampledFunction& f, int m) {
  if (m < 1) throw InvalidArgument("order m must be positive");
  if (f.size() < static_cast<std::size_t>(m))
    throw InsufficientData("need at least " + std::to_string(m) + " points, have " + std::to_string(f.size()));
  std::vector<KnotSet> out;
  out.reserve(f.size());
  for (double x : f.points()) out.push_back(knot_set(f.points(), x, m - 1));
  return out;
}

}  // namespace whitney
