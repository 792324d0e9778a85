# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial kernels.

Same contract as the pure backend: monomials are exponent tuples, term
maps are dicts keyed by monomial, and order specs are
``(kind, block, priority)`` tuples.  Coefficients stay arbitrary Python
objects (exact rationals), so the win here is in tuple handling, key
construction, and loop overhead rather than coefficient arithmetic.
"""

BACKEND_NAME = "cython"


# -- monomials ---------------------------------------------------------------

cpdef tuple monomial_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object> a[i] + <object> b[i]
    return tuple(out)


cpdef bint monomial_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <object> a[i] > <object> b[i]:
            return False
    return True


cpdef monomial_div(tuple b, tuple a):
    cdef Py_ssize_t i, n = len(b)
    cdef list out = [0] * n
    cdef object d
    for i in range(n):
        d = <object> b[i] - <object> a[i]
        if d < 0:
            return None
        out[i] = d
    return tuple(out)


cpdef tuple monomial_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] if <object> a[i] > <object> b[i] else b[i]
    return tuple(out)


cpdef object monomial_degree(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef object total = 0
    for i in range(n):
        total = total + <object> a[i]
    return total


# -- monomial orders ---------------------------------------------------------

cdef inline tuple _grevlex_key(tuple e):
    cdef Py_ssize_t i, n = len(e)
    cdef object total = 0
    cdef list rev = [0] * n
    for i in range(n):
        total = total + <object> e[i]
        rev[n - 1 - i] = -(<object> e[i])
    return (total, tuple(rev))


cpdef order_key(tuple spec, tuple e):
    cdef object kind = spec[0]
    cdef object block = spec[1]
    cdef object priority = spec[2]
    cdef Py_ssize_t i, n
    cdef list permuted
    if priority is not None:
        n = len(priority)
        permuted = [0] * n
        for i in range(n):
            permuted[i] = e[<Py_ssize_t> priority[i]]
        e = tuple(permuted)
    if kind == "degrevlex":
        return _grevlex_key(e)
    if kind == "lex":
        return e
    if kind == "elim":
        return (_grevlex_key(e[:<Py_ssize_t> block]),
                _grevlex_key(e[<Py_ssize_t> block:]))
    raise ValueError(f"unknown order kind {kind!r}")


cpdef int compare(tuple spec, tuple a, tuple b):
    cdef object ka = order_key(spec, a)
    cdef object kb = order_key(spec, b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


cpdef leading_monomial(dict terms, tuple spec):
    cdef tuple best = None
    cdef object best_key = None
    cdef object k
    cdef tuple m
    for m in terms:
        k = order_key(spec, m)
        if best is None or k > best_key:
            best = m
            best_key = k
    return best


# -- term-map arithmetic -----------------------------------------------------

cpdef dict terms_add(dict t1, dict t2):
    cdef dict acc = dict(t1)
    cdef object m, c, cur
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


cpdef dict terms_neg(dict t):
    cdef dict acc = {}
    cdef object m, c
    for m, c in t.items():
        acc[m] = -c
    return acc


cpdef dict terms_scale(dict t, coeff):
    cdef dict acc = {}
    cdef object m, c
    if not coeff:
        return acc
    for m, c in t.items():
        acc[m] = coeff * c
    return acc


cpdef dict terms_mul(dict t1, dict t2):
    cdef dict acc = {}
    cdef object m1, c1, m2, c2, cur
    cdef tuple key
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            key = monomial_mul(<tuple> m1, <tuple> m2)
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


cpdef terms_iadd_scaled(dict acc, dict src, coeff, shift):
    """acc += coeff * x^shift * src, in place.  shift may be None."""
    cdef object m, c, cur
    cdef tuple key
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
            key = monomial_mul(<tuple> m, <tuple> shift)
            cur = acc.get(key)
            if cur is None:
                acc[key] = coeff * c
            else:
                cur = cur + coeff * c
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
