// Randomized invariants across the modules, one fixed seed per property.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "cli_io.hpp"
#include "whitney/whitney.hpp"
#include "whitney/testing/oracles.hpp"
#include "whitney/testing/random.hpp"

namespace {

using namespace whitney;
namespace wt = whitney::testing;
using V = std::vector<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

// well separated nodes: gaps in [0.1, 3], |x| <= 10
const wt::InstanceShape kSeparated{0.1, 3.0, 5.0, 5.0};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

TEST(DivDiffProperties, PermutationSymmetry) {
  wt::Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 6;
    V x = wt::random_points(rng, k, kSeparated), v = wt::random_values(rng, k, kSeparated);
    const double base = divided_difference(x, v);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    V px, pv;
    for (std::size_t i : perm) {
      px.push_back(x[i]);
      pv.push_back(v[i]);
    }
    EXPECT_LE(std::abs(divided_difference(px, pv) - base), 1e-10 * std::max(std::abs(base), 1e-3));
  }
}

TEST(DivDiffProperties, RecursiveMatchesOmegaOnSeparatedNodes) {
  wt::Rng rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const V x = wt::random_points(rng, k, kSeparated), v = wt::random_values(rng, k, kSeparated);
    EXPECT_LE(rel(divided_difference(x, v), wt::divided_difference_omega(x, v)), 1e-9);
  }
}

TEST(DivDiffProperties, Linearity) {
  wt::Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const V x = wt::random_points(rng, k, kSeparated);
    const V f = wt::random_values(rng, k, kSeparated), g = wt::random_values(rng, k, kSeparated);
    const double a = wt::uniform(rng, -3, 3), b = wt::uniform(rng, -3, 3);
    V h(k);
    for (std::size_t i = 0; i < k; ++i) h[i] = a * f[i] + b * g[i];
    const double lhs = divided_difference(x, h);
    const double df = divided_difference(x, f), dg = divided_difference(x, g);
    EXPECT_LE(std::abs(lhs - (a * df + b * dg)), 1e-10 * (std::abs(a * df) + std::abs(b * dg)));
  }
}

TEST(DivDiffProperties, MonomialOfDegreeKGivesOne) {
  wt::Rng rng(104);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 6;
    V x = wt::random_points(rng, static_cast<std::size_t>(k) + 1, {0.5, 1.5, 1.0, 1.0});
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    V v;
    for (double& t : x) {
      t -= mean;
      v.push_back(std::pow(t, k));
    }
    EXPECT_NEAR(divided_difference(x, v), 1.0, 1e-12) << "k = " << k;
  }
}

TEST(DivDiffProperties, WindowsAttainTheSubsetMaximum) {
  wt::Rng rng(105);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + trial % 4;
    const std::size_t n = static_cast<std::size_t>(m) + 1 + trial % (12 - m);
    const SampledFunction f = wt::random_instance(rng, n);
    double all = 0.0;
    std::vector<std::size_t> idx;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<int>(__builtin_popcount(mask)) != m + 1) continue;
      idx.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      all = std::max(all, std::abs(divided_difference(f, idx)));
    }
    EXPECT_LE(rel(n_infty_functional(f, m), all), 1e-12);
  }
}

TEST(KnotProperties, MembershipSizeAndConsecutiveness) {
  wt::Rng rng(111);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 6;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + trial % 10);
    const auto S = s_sets(f, m);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_EQ(S[i].size(), std::min<std::size_t>(m, f.size()));
      EXPECT_TRUE(std::binary_search(S[i].members.begin(), S[i].members.end(), f.point(i)));
      const V block(f.points().begin() + static_cast<std::ptrdiff_t>(S[i].first),
                    f.points().begin() + static_cast<std::ptrdiff_t>(S[i].last) + 1);
      EXPECT_EQ(S[i].members, block);
    }
  }
}

TEST(KnotProperties, MonotoneEndpointsAndDiameterBound) {
  wt::Rng rng(112);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 6;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 1 + trial % 10);
    const auto S = s_sets(f, m);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        EXPECT_LE(S[i].members.front(), S[j].members.front());
        EXPECT_LE(S[i].members.back(), S[j].members.back());
        if (!(S[i] == S[j])) {
          EXPECT_LE(S[i].diameter() + S[j].diameter(), 2.0 * m * (f.point(j) - f.point(i)));
        }
      }
  }
}

TEST(KnotProperties, IntegerGridWithTies) {
  V x, v;
  for (int i = 0; i < 12; ++i) {
    x.push_back(i);
    v.push_back(0.0);
  }
  const SampledFunction f(x, v);
  for (int m = 1; m <= 6; ++m) {
    const auto S = s_sets(f, m);
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j) {
        EXPECT_LE(S[i].first, S[j].first);
        if (!(S[i] == S[j])) {
          EXPECT_LE(S[i].diameter() + S[j].diameter(), 2.0 * m * (x[j] - x[i]));
        }
      }
  }
}

TEST(JetProperties, FieldIsLinear) {
  wt::Rng rng(121);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 5;
    const std::size_t n = static_cast<std::size_t>(m) + 3;
    const V x = wt::random_points(rng, n, kSeparated);
    const V f = wt::random_values(rng, n), g = wt::random_values(rng, n);
    const double a = wt::uniform(rng, -2, 2), b = wt::uniform(rng, -2, 2);
    V h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = a * f[i] + b * g[i];
    const auto Wf = build_whitney_field(SampledFunction(x, f), m);
    const auto Wg = build_whitney_field(SampledFunction(x, g), m);
    const auto Wh = build_whitney_field(SampledFunction(x, h), m);
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) {
        const double cf = Wf.poly(i).coeff(k), cg = Wg.poly(i).coeff(k);
        EXPECT_NEAR(Wh.poly(i).coeff(k), a * cf + b * cg, 1e-10 * (std::abs(a * cf) + std::abs(b * cg) + 1e-12));
      }
  }
}

TEST(JetProperties, NecessityWithConstantE) {
  wt::Rng rng(122);
  const double e = std::exp(1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 4;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 6);
    const ExtensionResult ext = whitney_extend(f, m);
    for (double p : {1.5, 2.0, 3.0}) {
      const double jet = jet_functional(ext.field, p, JetMode::exact_sup);
      EXPECT_LE(jet, e * seminorm_lmp(ext.F, m, p) * (1 + 1e-8)) << "m = " << m << " p = " << p;
    }
  }
}

TEST(ExtensionProperties, GluingAndInterpolation) {
  wt::Rng rng(131);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 5;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 1 + trial % 9);
    const ExtensionResult ext = whitney_extend(f, m);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Polynomial& left = ext.F.piece(i);
      const Polynomial& right = ext.F.piece(i + 1);
      const double x = f.point(i);
      for (int k = 0; k < m; ++k) {
        const double a = left.derivative_at(x, k), b = right.derivative_at(x, k);
        const double scale = std::max(left.derivative_scale(x, k), right.derivative_scale(x, k));
        EXPECT_LE(std::abs(a - b), 1e-8 * std::max(scale, 1e-300)) << "m = " << m << " k = " << k;
      }
      EXPECT_LE(std::abs(ext.F(x) - f.value(i)), 1e-9 * std::max(left.derivative_scale(x, 0), 1e-300));
    }
  }
}

TEST(ExtensionProperties, NecessityFactorTwo) {
  wt::Rng rng(132);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 8);
    const ExtensionResult ext = whitney_extend(f, m);
    for (double p : {1.5, 2.0, 3.0}) {
      const double N = variational_functional(f, m, p, best_variational_mode(f.size(), m));
      EXPECT_LE(N, 2.0 * seminorm_lmp(ext.F, m, p) * (1 + 1e-8));
    }
  }
}

TEST(ExtensionProperties, OperatorLinearityOnPieces) {
  wt::Rng rng(133);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 4;
    const std::size_t n = static_cast<std::size_t>(m) + 3;
    const V x = wt::random_points(rng, n, kSeparated);
    const V f = wt::random_values(rng, n), g = wt::random_values(rng, n);
    const double a = wt::uniform(rng, -2, 2), b = wt::uniform(rng, -2, 2);
    V h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = a * f[i] + b * g[i];
    const auto Ff = whitney_extend(SampledFunction(x, f), m).F;
    const auto Fg = whitney_extend(SampledFunction(x, g), m).F;
    const auto Fh = whitney_extend(SampledFunction(x, h), m).F;
    // every derivative of every piece, at points inside the piece
    for (std::size_t k = 0; k < Fh.num_pieces(); ++k) {
      const double lo = k == 0 ? x.front() - 1 : x[k - 1];
      const double hi = k == n ? x.back() + 1 : x[k];
      const double h = hi - lo;
      for (double t : {lo, 0.5 * (lo + hi), hi})
        for (int j = 0; j <= 2 * m - 1; ++j) {
          const double df = Ff.piece(k).derivative_at(t, j), dg = Fg.piece(k).derivative_at(t, j);
          // rounding in any order i reaches the j-th derivative as h^{i-j}
          double scale = 0.0;
          for (int i = 0; i <= 2 * m - 1; ++i)
            scale += (std::abs(a) * Ff.piece(k).derivative_scale(t, i) + std::abs(b) * Fg.piece(k).derivative_scale(t, i)) *
                     std::pow(h, i - j);
          EXPECT_LE(std::abs(Fh.piece(k).derivative_at(t, j) - (a * df + b * dg)), 1e-9 * scale);
        }
    }
  }
}

TEST(FunctionalProperties, SharpSandwichAtRandomPoints) {
  wt::Rng rng(141);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 5);
    const SharpMaximal s(f, m);
    const double lo = f.point(0) - f.span(), hi = f.point(f.size() - 1) + f.span();
    for (int k = 0; k < 100; ++k) {
      const double x = wt::uniform(rng, lo, hi);
      const double a = s(x), b = s.alternative(x);
      EXPECT_GE(b, a * (1 - 1e-9));
      EXPECT_LE(b, 2 * a * (1 + 1e-9));
    }
  }
}

struct AllFunctionals {
  double N, T, sharp, jet, whitney;
};

AllFunctionals evaluate(const SampledFunction& f, int m, double p) {
  return {variational_functional(f, m, p, best_variational_mode(f.size(), m)), deboor_functional(f, m, p),
          sharp_maximal_lp_norm(f, m, p), jet_functional(build_whitney_field(f, m), p, JetMode::exact_sup),
          seminorm_lmp(whitney_extend(f, m).F, m, p)};
}

TEST(FunctionalProperties, ScalingCovariance) {
  wt::Rng rng(142);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 4, kSeparated);
    const double alpha = wt::uniform(rng, -5, 5);
    const double p = trial % 2 ? 2.0 : 2.5;
    const AllFunctionals a = evaluate(f, m, p);
    const AllFunctionals b = evaluate(f.with_values([&](double, double v) { return alpha * v; }), m, p);
    const double s = std::abs(alpha);
    EXPECT_LE(rel(b.N, s * a.N), 1e-10);
    EXPECT_LE(rel(b.T, s * a.T), 1e-10);
    EXPECT_LE(rel(b.sharp, s * a.sharp), 1e-10);
    EXPECT_LE(rel(b.jet, s * a.jet), 1e-10);
    EXPECT_LE(rel(b.whitney, s * a.whitney), 1e-10);
  }
}

TEST(FunctionalProperties, TranslationInvariance) {
  wt::Rng rng(143);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 4, kSeparated);
    const double h = wt::uniform(rng, -20, 20);
    V x = f.points();
    for (double& t : x) t += h;
    const double p = trial % 2 ? 2.0 : 3.0;
    const AllFunctionals a = evaluate(f, m, p);
    const AllFunctionals b = evaluate(SampledFunction(x, f.values()), m, p);
    EXPECT_LE(rel(b.N, a.N), 1e-9);
    EXPECT_LE(rel(b.T, a.T), 1e-9);
    EXPECT_LE(rel(b.sharp, a.sharp), 1e-9);
    EXPECT_LE(rel(b.jet, a.jet), 1e-9);
    EXPECT_LE(rel(b.whitney, a.whitney), 1e-9);
  }
}

TEST(FunctionalProperties, DilationLaw) {
  wt::Rng rng(144);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 5);
    const double lambda = trial % 2 ? 0.37 : 8.5;
    V x = f.points();
    for (double& t : x) t *= lambda;
    const SampledFunction g(x, f.values());
    for (double p : {1.5, 2.0, 4.0, kInf}) {
      const double factor = std::pow(lambda, (std::isinf(p) ? 0.0 : 1.0 / p) - m);
      const VariationalMode mode = best_variational_mode(f.size(), m);
      EXPECT_LE(rel(variational_functional(g, m, p, mode), factor * variational_functional(f, m, p, mode)), 1e-8);
      if (!std::isinf(p)) {
        EXPECT_LE(rel(sharp_maximal_lp_norm(g, m, p), factor * sharp_maximal_lp_norm(f, m, p)), 1e-8);
      }
    }
  }
}

TEST(OracleProperties, SandwichAndResidual) {
  wt::Rng rng(151);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 3;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 2 + trial % 8);
    const SplineSolution s = natural_spline_p2(f, m);
    const double oracle = std::sqrt(s.seminorm_sq);
    const double whitney = seminorm_lmp(whitney_extend(f, m).F, m, 2.0);
    const double N = variational_functional(f, m, 2.0, best_variational_mode(f.size(), m));
    EXPECT_LE(oracle, whitney * (1 + 1e-8));
    EXPECT_LE(N, 2.0 * oracle * (1 + 1e-8));
    EXPECT_LE(s.residual, 1e-9);
  }
}

TEST(CliProperties, SampleTableRoundTrip) {
  wt::Rng rng(161);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + trial % 4;
    const SampledFunction f = wt::random_instance(rng, static_cast<std::size_t>(m) + 3);
    const ExtensionResult ext = whitney_extend(f, m);
    std::string table = cli::samples_csv(ext.F, m, cli::sample_grid(f, 50, 0.1));
    // keep the first two columns
    std::istringstream in(table);
    std::string line, two;
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      two += line.substr(0, line.find(',', c1 + 1)) + "\n";
    }
    std::istringstream back(two);
    const cli::RawData d = cli::parse_csv(back);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto it = std::lower_bound(d.x.begin(), d.x.end(), f.point(i));
      ASSERT_TRUE(it != d.x.end() && *it == f.point(i));
      const double got = d.f[static_cast<std::size_t>(it - d.x.begin())];
      EXPECT_LE(std::abs(got - f.value(i)), 1e-9 * std::max(std::abs(f.value(i)), 1e-3));
    }
  }
}

}  // namespace
