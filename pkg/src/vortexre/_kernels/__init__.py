"""Polynomial kernel backend selection.

The compiled extension (`_speedups`, built from Cython) is used when it
imported cleanly; otherwise the pure-Python reference kernels take over.
Set ``VORTEXRE_PURE_KERNELS=1`` to force the pure backend — the test
suite and benchmark harness use this to compare the two implementations.
"""

from __future__ import annotations

import os

if os.environ.get("VORTEXRE_PURE_KERNELS"):
    from vortexre._kernels import pure as _impl
else:
    try:
        from vortexre._kernels import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from vortexre._kernels import pure as _impl

BACKEND_NAME = _impl.BACKEND_NAME

monomial_mul = _impl.monomial_mul
monomial_divides = _impl.monomial_divides
monomial_div = _impl.monomial_div
monomial_lcm = _impl.monomial_lcm
monomial_degree = _impl.monomial_degree
order_key = _impl.order_key
compare = _impl.compare
leading_monomial = _impl.leading_monomial
terms_add = _impl.terms_add
terms_neg = _impl.terms_neg
terms_scale = _impl.terms_scale
terms_mul = _impl.terms_mul
terms_iadd_scaled = _impl.terms_iadd_scaled
