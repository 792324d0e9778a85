"""Pure-Python polynomial kernels (reference backend).

A monomial is a tuple of non-negative integer exponents, one per ring
variable.  A term map is a plain dict from monomial to nonzero
coefficient.  An order spec is a tuple ``(kind, block, priority)`` with
``kind`` in {"lex", "degrevlex", "elim"}, ``block`` the size of the
leading (eliminated) variable block for "elim", and ``priority`` either
None (natural variable order) or a permutation of variable indices
listing variables from highest to lowest priority.

The compiled backend in ``_speedups.pyx`` implements exactly the same
functions; parity between the two is asserted in the test suite.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


# -- monomials ---------------------------------------------------------------

def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when a | b, i.e. every exponent of a is <= that of b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_div(b, a):
    """b / a as a monomial, or None when a does not divide b."""
    out = []
    for y, x in zip(b, a):
        d = y - x
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def monomial_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_degree(a):
    return sum(a)


# -- monomial orders ---------------------------------------------------------

def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def order_key(spec, e):
    """Sort key for a monomial; key comparison realizes the order."""
    kind, block, priority = spec
    if priority is not None:
        e = tuple(e[i] for i in priority)
    if kind == "degrevlex":
        return _grevlex_key(e)
    if kind == "lex":
        return e
    if kind == "elim":
        return (_grevlex_key(e[:block]), _grevlex_key(e[block:]))
    raise ValueError(f"unknown order kind {kind!r}")


def compare(spec, a, b):
    """-1, 0, or 1 as a <, =, > b under the order."""
    ka = order_key(spec, a)
    kb = order_key(spec, b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def leading_monomial(terms, spec):
    """Order-maximal monomial of a term map, or None when empty."""
    best = None
    best_key = None
    for m in terms:
        k = order_key(spec, m)
        if best is None or k > best_key:
            best = m
            best_key = k
    return best


# -- term-map arithmetic -----------------------------------------------------

def terms_add(t1, t2):
    acc = dict(t1)
    for m, c in t2.items():
        cur = acc.get(m)
        if cur is None:
            acc[m] = c
        else:
            cur = cur + c
            if cur:
                acc[m] = cur
            else:
                del acc[m]
    return acc


def terms_neg(t):
    return {m: -c for m, c in t.items()}


def terms_scale(t, coeff):
    if not coeff:
        return {}
    return {m: coeff * c for m, c in t.items()}


def terms_mul(t1, t2):
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    acc = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            key = monomial_mul(m1, m2)
            cur = acc.get(key)
            if cur is None:
                acc[key] = c1 * c2
            else:
                cur = cur + c1 * c2
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
    return acc


def terms_iadd_scaled(acc, src, coeff, shift):
    """acc += coeff * x^shift * src, in place.  shift may be None."""
    if shift is None:
        for m, c in src.items():
            cur = acc.get(m)
            if cur is None:
                acc[m] = coeff * c
            else:
                cur = cur + coeff * c
                if cur:
                    acc[m] = cur
                else:
                    del acc[m]
    else:
        for m, c in src.items():
            key = monomial_mul(m, shift)
            cur = acc.get(key)
            if cur is None:
                acc[key] = coeff * c
            else:
                cur = cur + coeff * c
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
