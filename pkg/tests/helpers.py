"""Independent oracles and small utilities shared by the test suite.

Everything here is deliberately implemented from first principles —
Sturm chains, finite differences, brute-force root searches — so the
library is checked against code that shares none of its internals.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np


# -- univariate Sturm-chain real-root counting --------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deriv(p):
    return _poly_trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def _poly_rem(a, b):
    """Remainder of a / b, coefficients ascending."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _poly_trim(a):
        da, la = len(a) - 1, a[-1]
        shift = da - db
        factor = la / lb
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        _poly_trim(a)
    return a


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


def _sign_at_inf(p, positive):
    # sign of p(x) as x -> +/- infinity
    lead = p[-1]
    deg = len(p) - 1
    s = 1 if lead > 0 else -1
    if not positive and deg % 2 == 1:
        s = -s
    return s


def sturm_distinct_real_roots(coeffs):
    """Number of distinct real roots; coeffs ascending, exact rationals."""
    p = _poly_trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    chain = [p, _poly_deriv(p)]
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    if len(chain[-1]) == 1 and chain[-1][0] == 0:
        chain.pop()
    neg = _sign_changes([_sign_at_inf(q, False) for q in chain])
    pos = _sign_changes([_sign_at_inf(q, True) for q in chain])
    return neg - pos


def poly_gcd(a, b):
    a = _poly_trim([Fraction(c) for c in a])
    b = _poly_trim([Fraction(c) for c in b])
    while b:
        a, b = b, _poly_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_distinct_complex_roots(coeffs):
    """deg(p) - deg(gcd(p, p')): the number of distinct complex roots."""
    p = _poly_trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    g = poly_gcd(p, _poly_deriv(p))
    return (len(p) - 1) - (len(g) - 1)


# -- quick numerical root search for small 2x2 polynomial systems -------------

def grid_newton_real_roots(fns, jac, box=5.0, grid=48, tol=1e-10, dedup=1e-6):
    """All real roots of a 2-equation system inside [-box, box]^2.

    Dense grid of Newton starts with deduplication; an oracle for small
    hand-picked systems whose roots are known to sit well inside the box.
    """
    found = []
    lin = np.linspace(-box, box, grid)
    for x0 in lin:
        for y0 in lin:
            v = np.array([x0, y0])
            ok = False
            for _ in range(60):
                f = np.array(fns(v[0], v[1]), dtype=float)
                if np.abs(f).max() < tol:
                    ok = True
                    break
                J = np.array(jac(v[0], v[1]), dtype=float)
                try:
                    step = np.linalg.solve(J, -f)
                except np.linalg.LinAlgError:
                    break
                if not np.all(np.isfinite(step)):
                    break
                v = v + step
                if np.abs(v).max() > 50 * box:
                    break
            if not ok or np.abs(v).max() > box + 1e-6:
                continue
            if not any(np.abs(v - w).max() < dedup for w in found):
                found.append(v)
    return found


# -- line arrangements: systems with combinatorially exact root counts --------

def _same_line(p, q):
    (a1, b1, c1), (a2, b2, c2) = p, q
    return (a1 * b2 == a2 * b1) and (a1 * c2 == a2 * c1) and (b1 * c2 == b2 * c1)


def random_line_arrangement(rng, lines_f, lines_g):
    """Two products of rational linear forms plus their exact intersection count.

    Returns (f_lines, g_lines, distinct_points) where each line is
    (a, b, c) for a*x + b*y + c and distinct_points is the exact number
    of distinct finite intersections between the two families.
    """
    def fresh_line(avoid):
        while True:
            a, b = rng.randint(-3, 3), rng.randint(-3, 3)
            if not (a or b):
                continue
            line = (Fraction(a), Fraction(b), Fraction(rng.randint(-3, 3)))
            if not any(_same_line(line, other) for other in avoid):
                return line

    f = []
    for _ in range(lines_f):
        f.append(fresh_line(()))
    g = []
    for _ in range(lines_g):
        # a line shared by both products would make the common zero set
        # one-dimensional, so keep the two families component-disjoint
        g.append(fresh_line(f))
    points = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.product(f, g):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue  # parallel: no finite intersection
        x = (-c1 * b2 + c2 * b1) / det
        y = (-a1 * c2 + a2 * c1) / det
        points.add((x, y))
    return f, g, len(points)


def lines_to_multipoly(ring, lines):
    p = ring.one()
    for a, b, c in lines:
        form = ring.monomial((1, 0), a) + ring.monomial((0, 1), b) + ring.constant(c)
        p = p * form
    return p


# -- sympy bridge (for cross-checking against an independent CAS) -------------

def to_sympy(p, symbols):
    import sympy

    expr = sympy.Integer(0)
    for mono, coeff in p.terms.items():
        term = sympy.Rational(int(coeff.numerator), int(coeff.denominator))
        for s, e in zip(symbols, mono):
            if e:
                term *= s**e
        expr += term
    return expr


# -- misc ---------------------------------------------------------------------

def central_difference(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for i in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (f(xp) - f(xm)) / (2 * h)
    return out


def random_multipoly(ring, rng, max_terms=6, max_deg=4, coeff_span=9):
    n = len(ring.variables)
    p = ring.zero()
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(n))
        c = rng.randint(-coeff_span, coeff_span)
        if c:
            p = p + ring.monomial(e, c)
    return p


def seeded(seed):
    return random.Random(seed)
