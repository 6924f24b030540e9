#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whitney/config.hpp"
#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/extension.hpp"
#include "whitney/functionals.hpp"
#include "whitney/integrate.hpp"
#include "whitney/jets.hpp"
#include "whitney/spline.hpp"

namespace whitney {

/// Every functional of one (E, f, m, p) instance, side by side.
/// Quantities that are undefined for the requested p, or were not asked
/// for, stay empty.
struct TraceReport {
  int m = 1;
  double p = 2.0;
  std::size_t n = 0;

  double N_mp = 0.0;                        // best available mode
  VariationalMode N_mode = VariationalMode::full_sequence;
  double N_full_sequence = 0.0;             // de Boor's value
  bool N_modes_differ = false;              // exact and full-sequence values differ by > 1e-9 relative
  double T_mp = 0.0;
  std::optional<double> sharp_lp;           // ||(f)#||_{L_p}; sup of (f)# at p = inf
  std::optional<double> jet_value;          // exact_sup jet functional
  std::optional<double> whitney_seminorm;
  std::optional<double> oracle_seminorm;    // p = 2 only
  std::optional<LinftyBracket> linfty_bracket;  // p = inf only

  std::vector<std::pair<std::string, double>> ratios;
  Tolerances tolerances;
  ConstantsTable constants;
};

struct ReportOptions {
  bool build_extension = true;
  bool run_oracle = false;
  // (m+1)-subset count above which the sharp maximal function is skipped.
  double sharp_subset_limit = 2e7;
  Tolerances tolerances{};
};

inline constexpr double kModeDifferenceRel = 1e-9;

namespace detail {

inline double subset_count(std::size_t n, int k) {
  if (static_cast<std::size_t>(k) > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
  return c;
}

inline std::optional<double> safe_ratio(std::optional<double> a, std::optional<double> b) {
  if (!a || !b || *b == 0.0) return std::nullopt;
  return *a / *b;
}

}  // namespace detail

/// Largest value of (f)#, reached on the hull of the pair that attains it.
inline double sharp_maximal_sup(const SampledFunction& f, int m) { return SharpMaximal(f, m).sup(); }

inline TraceReport build_trace_report(const SampledFunction& f, int m, double p,
                                      const ReportOptions& opt = ReportOptions{}) {
  detail::require_points(f, m);
  detail::require_exponent(p);
  const bool inf = std::isinf(p);
  const Tolerances& tol = opt.tolerances;

  TraceReport r;
  r.m = m;
  r.p = p;
  r.n = f.size();
  r.tolerances = tol;
  r.constants = constants_table(m, tol);

  r.N_mode = best_variational_mode(f.size(), m);
  r.N_mp = variational_functional(f, m, p, r.N_mode);
  r.N_full_sequence = variational_functional(f, m, p, VariationalMode::full_sequence);
  r.N_modes_differ = std::abs(r.N_mp - r.N_full_sequence) > kModeDifferenceRel * std::max(r.N_mp, 1e-300);
  r.T_mp = deboor_functional(f, m, p);

  if (detail::subset_count(f.size(), m + 1) <= opt.sharp_subset_limit)
    r.sharp_lp = inf ? sharp_maximal_sup(f, m) : sharp_maximal_lp_norm(f, m, p);

  if (!inf) r.jet_value = jet_functional(build_whitney_field(f, m), p, JetMode::exact_sup);

  if (opt.build_extension) {
    const ExtensionResult ext = whitney_extend(f, m);
    r.whitney_seminorm = seminorm_lmp(ext.F, m, p, tol);
  }
  if (inf) r.linfty_bracket = linfty_trace_bracket(f, m);
  if (opt.run_oracle && p == 2.0) r.oracle_seminorm = std::sqrt(natural_spline_p2(f, m).seminorm_sq);

  auto add = [&](const char* name, std::optional<double> v) {
    if (v) r.ratios.emplace_back(name, *v);
  };
  add("T_over_N", detail::safe_ratio(r.T_mp, r.N_mp));
  add("N_over_whitney", detail::safe_ratio(r.N_mp, r.whitney_seminorm));
  add("whitney_over_N", detail::safe_ratio(r.whitney_seminorm, r.N_mp));
  add("sharp_over_N", detail::safe_ratio(r.sharp_lp, r.N_mp));
  add("jet_over_N", detail::safe_ratio(r.jet_value, r.N_mp));
  add("whitney_over_oracle", detail::safe_ratio(r.whitney_seminorm, r.oracle_seminorm));
  add("N_over_oracle", detail::safe_ratio(r.N_mp, r.oracle_seminorm));
  return r;
}

}  // namespace whitney
