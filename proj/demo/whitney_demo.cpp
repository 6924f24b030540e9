// Walks one data set through the library: knot sets, the extension F,
// every trace functional and the p = 2 spline oracle.

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "whitney/whitney.hpp"

int main() {
  using namespace whitney;

  // Alternating data on the integers: the extremal data of Favard's problem.
  std::vector<double> x, v;
  for (int i = 0; i <= 7; ++i) {
    x.push_back(i);
    v.push_back(i % 2 == 0 ? 1.0 : -1.0);
  }
  // One isolated far point so the knot sets are not all windows.
  x.push_back(20.0);
  v.push_back(0.5);
  const SampledFunction f(x, v);
  const int m = 2;

  std::printf("E has %zu points, m = %d\n\nknot sets S_x:\n", f.size(), m);
  const auto sets = s_sets(f, m);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::printf("  x = %-5g S_x = {", f.point(i));
    for (std::size_t k = 0; k < sets[i].members.size(); ++k)
      std::printf("%s%g", k ? ", " : "", sets[i].members[k]);
    std::printf("}\n");
  }

  const double ps[] = {2.0};
  const ExtensionResult ext = whitney_extend(f, m, ps);
  std::printf("\nF is C^%d: continuity defect %.3g\n", m - 1, ext.F.continuity_defect(m - 1));
  std::printf("F(x) on a few points between the data:\n");
  for (double t : {-1.0, 0.5, 3.5, 7.5, 12.0, 21.0}) std::printf("  F(%g) = % .6f   F'(%g) = % .6f\n", t, ext.F(t), t, ext.F.derivative_at(t, 1));

  for (double p : {2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    ReportOptions opt;
    opt.run_oracle = true;
    const TraceReport r = build_trace_report(f, m, p, opt);
    std::printf("\np = %g\n", p);
    std::printf("  N_{m,p} (%-9s)    %.10g\n", to_string(r.N_mode), r.N_mp);
    std::printf("  de Boor T            %.10g\n", r.T_mp);
    if (r.sharp_lp) std::printf("  sharp maximal        %.10g\n", *r.sharp_lp);
    if (r.jet_value) std::printf("  jet functional       %.10g\n", *r.jet_value);
    std::printf("  ||F||                %.10g\n", *r.whitney_seminorm);
    if (r.oracle_seminorm) std::printf("  natural spline       %.10g\n", *r.oracle_seminorm);
    if (r.linfty_bracket)
      std::printf("  L^m_inf trace norm in [%.10g, %.10g]\n", r.linfty_bracket->lower, r.linfty_bracket->upper);
  }

  std::printf("\nalternating windows: m! |Delta^m f| = %g (2^m = %g)\n",
              2.0 * std::abs(window_divided_differences(f, m).front()), std::pow(2.0, m));
  const ConstantsTable c = constants_table(m);
  std::printf("theta_%d = %.17g, C_%d%d = %g, optimal norm for the alternating data on Z: %g\n", m, c.theta, m, m,
              c.c_mm, c.euler_spline_norm);
  return 0;
}
