#pragma once

namespace whitney {

/// Numerical tolerances shared by every module. Functions that need one take
/// a `const Tolerances&` defaulting to `Tolerances{}`; the CLI can load
/// overrides from a JSON file.
struct Tolerances {
  double continuity_rel = 1e-9;       // C^c agreement at breakpoints
  double quadrature_rel = 1e-10;      // adaptive quadrature target
  double root = 1e-12;                // root isolation / coefficient threshold
  double min_gap_rel = 1e-12;         // minimal gap relative to span
  double tail_rel = 1e-6;             // sharp-maximal tail cut-off
  double series_rel = 1e-15;          // theta_m alternating series cut-off
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace whitney
