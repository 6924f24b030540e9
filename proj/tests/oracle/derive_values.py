"""Independent derivation of the reference values frozen into the C++ tests.

Exact rational arithmetic (sympy) and 50-digit quadrature (mpmath) only;
nothing here shares code with the library. Run with `python3 derive_values.py`.
"""

from itertools import combinations

import mpmath as mp
import sympy as sp

mp.mp.dps = 50
x = sp.symbols("x")


def show(name, value):
    print(f"{name:48s} {value}")


def divided_difference(xs, fs):
    xs = [sp.Rational(v) for v in xs]
    w = sp.prod
    return sum(sp.Rational(f) / w([xi - xj for xj in xs if xj != xi]) for xi, f in zip(xs, fs))


def hermite(a, ja, b, jb):
    """Polynomial of degree 2m-1 matching value/derivative lists at a and b."""
    m = len(ja)
    cs = sp.symbols(f"c0:{2 * m}")
    H = sum(c * x**k for k, c in enumerate(cs))
    eqs = [sp.diff(H, x, i).subs(x, a) - ja[i] for i in range(m)]
    eqs += [sp.diff(H, x, i).subs(x, b) - jb[i] for i in range(m)]
    return sp.expand(H.subs(sp.solve(eqs, cs)))


# poly
show("int_0^1 (6-12t)^2", sp.integrate((6 - 12 * x) ** 2, (x, 0, 1)))
show("taylor jet of x^2 at 1, order 1", sp.expand(1 + 2 * (x - 1)))
show("sup |6-12x| on [0,1]", max(abs(6 - 12 * t) for t in (0, 1)))
show("int_{-1}^{2} |x|^{3/2}", sp.nsimplify(sp.integrate(x ** sp.Rational(3, 2), (x, 0, 1)) +
                                          sp.integrate(x ** sp.Rational(3, 2), (x, 0, 2))))
show("  numeric", sp.N(sp.Rational(2, 5) + sp.Rational(2, 5) * 2 ** sp.Rational(5, 2), 20))

# divdiff
show("Delta[0,1,3] of (1,2,0)", divided_difference([0, 1, 3], [1, 2, 0]))
show("lagrange (0,1),(1,2),(3,0)", sp.expand(sp.interpolate([(0, 1), (1, 2), (3, 0)], x)))

# knots: hand trace of the nearest-point rule with ties to the left
def knot_set(E, anchor, k):
    Y = [anchor]
    while len(Y) < min(k + 1, len(E)):
        rest = [e for e in E if e not in Y]
        d = lambda e: min(abs(e - y) for y in Y)
        Y.append(min(rest, key=lambda e: (d(e), e)))
    return sorted(Y)


show("Y_2(0) on {0,1,3,7}", knot_set([0, 1, 3, 7], 0, 2))
show("Y_1(3) on {0,1,3,7}", knot_set([0, 1, 3, 7], 3, 1))
show("S_x on {0,1,2}, m=2", [knot_set([0, 1, 2], e, 1) for e in (0, 1, 2)])

# jets: E={0,1,2}, f={0,1,4}, m=2
show("P_0, P_2 for x^2 data, m=2", (sp.interpolate([(0, 0), (1, 1)], x), sp.interpolate([(1, 1), (2, 4)], x)))

# extension
H = hermite(0, [0, 0], 1, [1, 0])
show("Hermite (0;0,0),(1;1,0)", H)
show("  max |H''| on [0,1]", max(abs(sp.diff(H, x, 2).subs(x, t)) for t in (0, 1)))
# gap bound for the same jets: both jet-difference sums equal |1-0|/1^2 + |0-0|/1 = 1
show("  gap bound rhs", min(sp.Integer(1) / 1**2 + sp.Integer(0), sp.Integer(1) / 1**2 + sp.Integer(0)))

# alternating data on 0..5, m = 2: Whitney extension by hand.
# S_0 = S_1 = {0,1}, S_k = {k-1,k}; field lines; gap [1,2] cubic.
P = {0: sp.interpolate([(0, 1), (1, -1)], x), 1: sp.interpolate([(0, 1), (1, -1)], x)}
for k in range(2, 6):
    P[k] = sp.interpolate([(k - 1, (-1) ** (k - 1)), (k, (-1) ** k)], x)
upper = 0
for k in range(5):
    Hk = hermite(k, [P[k].subs(x, k), sp.diff(P[k], x).subs(x, k)],
                 k + 1, [P[k + 1].subs(x, k + 1), sp.diff(P[k + 1], x).subs(x, k + 1)])
    d2 = sp.diff(Hk, x, 2)
    upper = max(upper, abs(d2.subs(x, k)), abs(d2.subs(x, k + 1)))
show("alternating 0..5 m=2: m! N_inf", 2 * abs(divided_difference([0, 1, 2], [1, -1, 1])))
show("alternating 0..5 m=2: ||F||_inf", upper)

# functionals
show("de Boor E={0,1,2} f={0,1,4} m=2 p=2", sp.sqrt(2 * divided_difference([0, 1, 2], [0, 1, 4]) ** 2))
sharp = mp.quad(lambda t: 1 / (abs(t) + abs(t - 1)) ** 2, [-mp.inf, 0, 1, mp.inf])
show("int dx/(|x|+|x-1|)^2", sharp)
show("  sqrt", mp.sqrt(sharp))
sharp15 = mp.quad(lambda t: 1 / (abs(t) + abs(t - 1)) ** 1.5, [-mp.inf, 0, 1, mp.inf])
show("(int dx/(|x|+|x-1|)^1.5)^(1/1.5)", sharp15 ** (1 / mp.mpf(1.5)))


def sharp_point(E, f, m, t):
    best = mp.mpf(0)
    for S in combinations(range(len(E)), m + 1):
        xs = [E[i] for i in S]
        d = divided_difference(xs, [f[i] for i in S])
        best = max(best, abs(mp.mpf(sp.Rational(d))) * (xs[-1] - xs[0]) / (abs(t - xs[0]) + abs(t - xs[-1])))
    return best


def kinks(E, f, m):
    """Data points plus every point where two subset terms of f# cross.

    Each term is c / (|t-a| + |t-b|); between data points both denominators
    are affine, so each pair of terms crosses at most once per interval.
    """
    terms = []
    for S in combinations(range(len(E)), m + 1):
        xs = [sp.Rational(E[i]) for i in S]
        c = abs(divided_difference(xs, [f[i] for i in S])) * (xs[-1] - xs[0])
        if c:
            terms.append((c, xs[0], xs[-1]))
    pts = sorted(set(sp.Rational(e) for e in E))
    bounds = [None] + pts + [None]
    out = set(pts)
    for lo, hi in zip(bounds, bounds[1:]):
        probe = lo + 1 if hi is None else (hi - 1 if lo is None else (lo + hi) / 2)
        for (c1, a1, b1), (c2, a2, b2) in combinations(terms, 2):
            s1 = sp.sign(probe - a1) + sp.sign(probe - b1)
            s2 = sp.sign(probe - a2) + sp.sign(probe - b2)
            d1 = -a1 * sp.sign(probe - a1) - b1 * sp.sign(probe - b1)
            d2 = -a2 * sp.sign(probe - a2) - b2 * sp.sign(probe - b2)
            # c1 (d2 + s2 t) = c2 (d1 + s1 t)
            k = c1 * s2 - c2 * s1
            if k == 0:
                continue
            t = (c2 * d1 - c1 * d2) / k
            if (lo is None or t > lo) and (hi is None or t < hi):
                out.add(t)
    return terms, sorted(out)


def sharp_norm_pow(E, f, m, p):
    """Exact integral of (f#)^p: one symbolic integral per piece between kinks."""
    terms, ks = kinks(E, f, m)
    bounds = [-sp.oo] + ks + [sp.oo]
    total = 0
    for lo, hi in zip(bounds, bounds[1:]):
        mid = hi - 1 if lo == -sp.oo else (lo + 1 if hi == sp.oo else (lo + hi) / 2)
        c, a, b = max(terms, key=lambda q: q[0] / (abs(mid - q[1]) + abs(mid - q[2])))
        den = sp.sign(mid - a) * (x - a) + sp.sign(mid - b) * (x - b)
        total += sp.integrate((c / den) ** p, (x, lo, hi))
    return sp.nsimplify(total)


E3, f3 = [0, 1, 3, 4], [0, 2, -1, 1]
val = sharp_norm_pow(E3, f3, 1, 2)
show("int (f#)^2, E={0,1,3,4}, f={0,2,-1,1}, m=1", val)
show("  ||f#||_2", sp.N(sp.sqrt(val), 20))
# independent numeric route through the same kinks
kn = [mp.mpf(sp.N(k, 60)) for k in kinks(E3, f3, 1)[1]]
show("  mpmath quad", mp.sqrt(mp.quad(lambda t: sharp_point(E3, f3, 1, t) ** 2, [-mp.inf] + kn + [mp.inf])))
val = sharp_norm_pow(E3, f3, 2, 3)
show("||f#||_3, same data, m=2", sp.N(val ** sp.Rational(1, 3), 20))

# theta_m and C_mm
for m in range(1, 6):
    s = m + 1
    series = mp.nsum(lambda j: ((-1) ** int(j) / (2 * j + 1)) ** s, [-mp.inf, mp.inf])
    theta = (mp.pi / 2) ** s / series
    cmm = sp.Rational(2 ** m, 4 * m) + sum(sp.binomial(m, i) * sp.binomial(m - 1, i - 1) * 4 ** (m - i)
                                          for i in range(1, m + 1))
    show(f"theta_{m}, C_{m}{m}", (mp.nstr(theta, 20), cmm, float(cmm)))

# oracle spline
t = sp.symbols("t")
show("m=1 spline, E={0,1,3}, f={0,2,1}: sum (df)^2/dx", sp.Rational(2**2, 1) + sp.Rational(1, 2))
# natural cubic through (0,0),(1,1),(2,4): second derivative 3 at the middle knot
M1 = sp.solve(sp.Rational(2, 3) * sp.Symbol("M") - ((4 - 1) - (1 - 0)), sp.Symbol("M"))[0]
show("natural cubic E={0,1,2} f={0,1,4}: M1", M1)
show("  int (S'')^2", 2 * sp.integrate((M1 * t) ** 2, (t, 0, 1)))
