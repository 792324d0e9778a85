"""Compare the compiled and pure-Python polynomial kernel backends.

Runs the exact certification pipeline (system build -> reduced basis ->
quotient basis -> trace matrix -> signature) under both backends and a
few micro-kernels, and prints a timing table.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time


def _fresh_modules(backend):
    """(Re)import the package with the requested kernel backend."""
    for name in [m for m in list(sys.modules) if m.startswith("vortexre")]:
        del sys.modules[name]
    if backend == "pure":
        os.environ["VORTEXRE_PURE_KERNELS"] = "1"
    else:
        os.environ.pop("VORTEXRE_PURE_KERNELS", None)
    import vortexre._kernels as kernels
    if kernels.BACKEND_NAME != backend:
        raise SystemExit(f"backend {backend!r} unavailable "
                         f"(got {kernels.BACKEND_NAME!r}); build the extension first")
    return kernels


def bench_certify(repeat):
    from vortexre.groebner import buchberger
    from vortexre.halfangle import build_equal_weight_system
    from vortexre.hermite import hermite_matrix, quotient_basis, signature_and_rank

    weights = [(1, 1, 1), (2, 1, 9), (2, -1, 3), (-1, -3, 10)]
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for mu in weights:
            system = build_equal_weight_system(mu)
            gb = buchberger(list(system))
            basis = quotient_basis(gb)
            signature_and_rank(hermite_matrix(gb, basis))
        best = min(best, time.perf_counter() - t0)
    return best


def bench_reduce(repeat):
    from vortexre.groebner import buchberger, normal_form
    from vortexre.halfangle import build_equal_weight_system

    system = build_equal_weight_system((1, 1, 1))
    gb = buchberger(list(system))
    ring = gb[0].ring
    rng = random.Random(7)
    polys = []
    for _ in range(20):
        p = ring.zero()
        for _ in range(12):
            e = (rng.randrange(9), rng.randrange(9))
            p = p + ring.monomial(e, rng.randrange(-50, 50) or 1)
        polys.append(p)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for p in polys:
            normal_form(p, list(gb))
        best = min(best, time.perf_counter() - t0)
    return best


def bench_multiply(repeat):
    from vortexre.polynomials import PolynomialRing

    ring = PolynomialRing(("x", "y", "z"))
    rng = random.Random(11)
    ps = []
    for _ in range(8):
        p = ring.zero()
        for _ in range(25):
            e = (rng.randrange(6), rng.randrange(6), rng.randrange(6))
            p = p + ring.monomial(e, rng.randrange(-9, 10) or 1)
        ps.append(p)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in ps:
            for b in ps:
                _ = a * b
        best = min(best, time.perf_counter() - t0)
    return best


BENCHES = [
    ("certify pipeline (4 weight vectors)", bench_certify),
    ("normal forms of 20 random polys", bench_reduce),
    ("64 products of 25-term polys", bench_multiply),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per benchmark (best-of)")
    args = parser.parse_args()

    results = {}
    for backend in ("cython", "pure"):
        _fresh_modules(backend)
        for label, fn in BENCHES:
            results[(backend, label)] = fn(args.repeat)

    width = max(len(label) for label, _ in BENCHES)
    print(f"{'benchmark':<{width}}  {'cython':>9}  {'pure':>9}  speedup")
    for label, _ in BENCHES:
        tc = results[("cython", label)]
        tp = results[("pure", label)]
        print(f"{label:<{width}}  {tc:>8.3f}s  {tp:>8.3f}s  x{tp / tc:.2f}")


if __name__ == "__main__":
    main()
