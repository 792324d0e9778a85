"""Release gate: each test prints one PASS/FAIL line for one criterion."""

import math
import time
from types import SimpleNamespace

import numpy as np
import pytest

from helpers import (
    central_difference,
    random_multipoly,
    seeded,
    squarefree_distinct_complex_roots,
    sturm_distinct_real_roots,
)
from vortexre.dynamics import (
    continue_family,
    full_system_stability,
    polygon_family,
    re_residual,
)
from vortexre.groebner import (
    buchberger,
    elimination_ideal,
    is_groebner_basis,
    normal_form,
    s_polynomial,
)
from vortexre.halfangle import build_equal_weight_system, build_symmetry_case_system
from vortexre.hermite import (
    count_real_roots,
    hermite_matrix,
    quotient_basis,
    signature_and_rank,
)
from vortexre.polynomials import PolynomialRing
from vortexre.potential import (
    AngularConfig,
    CirculationWeights,
    potential_gradient,
    potential_value,
    potential_hessian,
)
from vortexre.search import find_all_critical_points, group_into_families, symmetry_axes

WEIGHTS = ((1, 1, 1), (2, 1, 9), (2, -1, 3), (-1, -3, 10))

EQUAL_WEIGHT_LEADING_TERMS = {
    "r2^3*r3^3", "r2^4*r3^2", "r2^5*r3", "r2^6", "r3^7", "r2*r3^6", "r2^2*r3^5",
}


def _emit(capsys, number, title, failures):
    verdict = "PASS" if not failures else "FAIL: " + "; ".join(failures)
    with capsys.disabled():
        print(f"\nCRITERION {number} ({title}): {verdict}")
    assert not failures, f"criterion {number}: {failures}"


@pytest.fixture(scope="module")
def certified():
    out = {}
    for mu in WEIGHTS:
        t0 = time.monotonic()
        gb = buchberger(list(build_equal_weight_system(mu)))
        basis = quotient_basis(gb)
        H = hermite_matrix(gb, basis)
        count = signature_and_rank(H)
        out[mu] = SimpleNamespace(gb=gb, basis=basis, H=H, count=count,
                                  seconds=time.monotonic() - t0)
    return out


@pytest.fixture(scope="module")
def found():
    return {mu: find_all_critical_points(mu, seeds=1024) for mu in WEIGHTS}


def test_criterion_1_equal_weight_certification(capsys, certified):
    c = certified[(1, 1, 1)]
    leading = {str(g.ring.monomial(g.leading_monomial(), 1)) for g in c.gb}
    failures = []
    if c.count.real_distinct != 14:
        failures.append(f"real root count {c.count.real_distinct} != 14")
    if len(c.basis) != 24:
        failures.append(f"quotient dimension {len(c.basis)} != 24")
    if len(c.gb) != 7:
        failures.append(f"basis size {len(c.gb)} != 7")
    if leading != EQUAL_WEIGHT_LEADING_TERMS:
        failures.append(f"leading terms {sorted(leading)}")
    if c.seconds >= 60.0:
        failures.append(f"runtime {c.seconds:.1f}s >= 60s")
    _emit(capsys, 1, "equal-weight exact certification", failures)


def test_criterion_2_equal_weight_families(capsys, found):
    pts = found[(1, 1, 1)]
    fams = group_into_families(pts)
    mu = CirculationWeights((1, 1, 1))
    targets = {
        math.pi / 4: ("stable", "minimum", 6),
        2 * math.pi / 3: ("unstable", "maximum", 2),
        3 * math.pi / 4: ("unstable", "saddle", 6),
    }
    failures = []
    if len(pts) != 14:
        failures.append(f"point count {len(pts)} != 14")
    if len(fams) != 3:
        failures.append(f"family count {len(fams)} != 3")

    def circle_gap(a, b):
        d = abs(a - b) % (2 * math.pi)
        return min(d, 2 * math.pi - d)

    seen = set()
    for fam in fams:
        fam_targets = set()
        for idx in fam:
            p = pts[idx]
            axes = symmetry_axes(p.config, mu)
            if not axes:
                failures.append(f"point {idx} has no symmetry axis")
                continue
            k = axes[0]
            seps = [circle_gap(p.config.theta[i], p.config.theta[k])
                    for i in range(3) if i != k]
            target = min(targets, key=lambda t: abs(seps[0] - t))
            if max(abs(s - target) for s in seps) > 1e-8:
                failures.append(f"point {idx} separations {seps} off target {target}")
            fam_targets.add(target)
            verdict, kind, _ = targets[target]
            if (p.report.verdict, p.report.extremal_type) != (verdict, kind):
                failures.append(
                    f"point {idx} is {p.report.verdict}/{p.report.extremal_type}, "
                    f"expected {verdict}/{kind}")
        if len(fam_targets) != 1:
            failures.append(f"family {fam} mixes separations {fam_targets}")
            continue
        target = fam_targets.pop()
        seen.add(target)
        if len(fam) != targets[target][2]:
            failures.append(f"family at {target:.4f} has size {len(fam)}")
    if seen != set(targets):
        failures.append("not all three separations realized")
    if sum(len(f) for f in fams) != 14:
        failures.append("family sizes do not total 14")
    _emit(capsys, 2, "equal-weight family geometry and stability", failures)


def test_criterion_3_asymmetric_counts(capsys, certified, found):
    expected = {(2, 1, 9): 10, (2, -1, 3): 10, (-1, -3, 10): 8}
    failures = []
    for mu, want in expected.items():
        got = certified[mu].count.real_distinct
        if got != want:
            failures.append(f"certified {mu}: {got} != {want}")
        pts = found[mu]
        if len(pts) != want:
            failures.append(f"found {mu}: {len(pts)} != {want}")
        weights = CirculationWeights(mu)
        bad = [i for i, p in enumerate(pts) if symmetry_axes(p.config, weights)]
        if bad:
            failures.append(f"{mu}: points {bad} flagged symmetric")
    _emit(capsys, 3, "asymmetric weight-vector counts", failures)


def test_criterion_4_symmetry_weight_conditions(capsys):
    cases = {1: ("mu2", "mu3"), 2: ("mu1", "mu3"), 3: ("mu1", "mu2")}
    failures = []
    for case, (a, b) in cases.items():
        t0 = time.monotonic()
        system = build_symmetry_case_system(case)
        elim = elimination_ideal(list(system), [system.ring.variables[0]])
        seconds = time.monotonic() - t0
        gens = [p.primitive_part()[0] for p in elim]
        if len(gens) != 1:
            failures.append(f"case {case}: {len(gens)} generators")
            continue
        g = gens[0]
        ring = g.ring
        want = (ring.parse("mu1*mu2*mu3") * (ring.parse(a) - ring.parse(b)))
        want = want.primitive_part()[0]
        if not ((g - want).is_zero() or (g + want).is_zero()):
            failures.append(f"case {case}: generator {g}")
        if seconds >= 30.0:
            failures.append(f"case {case}: runtime {seconds:.1f}s >= 30s")
    _emit(capsys, 4, "symmetric-case weight conditions", failures)


def test_criterion_5_mixed_sign_counterexamples(capsys, found):
    failures = []
    kinds_213 = {(p.report.verdict, p.report.extremal_type) for p in found[(2, -1, 3)]}
    if ("stable", "saddle") not in kinds_213:
        failures.append(f"(2,-1,3) kinds {sorted(kinds_213)} lack a stable saddle")
    pts = found[(-1, -3, 10)]
    kinds = {(p.report.verdict, p.report.extremal_type) for p in pts}
    if ("stable", "maximum") not in kinds:
        failures.append(f"(-1,-3,10) kinds {sorted(kinds)} lack a stable maximum")
    minima = [p for p in pts if p.report.extremal_type == "minimum"]
    if not minima:
        failures.append("(-1,-3,10) has no minimum family")
    elif any(p.report.verdict != "unstable" for p in minima):
        failures.append("(-1,-3,10) minimum family is not unstable")
    _emit(capsys, 5, "stability without extremality for mixed signs", failures)


def test_criterion_6_continuation_of_stable_saddle(capsys, found):
    raw = (2.0, -1.0, 3.0)
    scale = 1.0 / math.sqrt(sum(m * m for m in raw))
    mu = CirculationWeights(tuple(m * scale for m in raw))
    start = next(p.config for p in found[(2, -1, 3)]
                 if (p.report.verdict, p.report.extremal_type) == ("stable", "saddle"))
    failures = []
    trace = continue_family(start, mu, eps_max=0.1, step=0.005)
    if trace.failure:
        failures.append(f"continuation stopped: {trace.failure}")
    for eps in (0.05, 0.1):
        hits = [r for r in trace.records if abs(r.epsilon - eps) < 1e-12]
        if not hits:
            failures.append(f"no record at eps={eps}")
            continue
        rec = hits[0]
        residual = float(np.abs(re_residual(rec.config)).max())
        if residual >= 1e-10:
            failures.append(f"eps={eps}: residual {residual:.2e}")
        report = full_system_stability(rec.config)
        if report.verdict != "stable":
            failures.append(f"eps={eps}: spectrum verdict {report.verdict}")
        angles = rec.config.angles
        angular = AngularConfig(tuple(a - angles[0] for a in angles))
        if symmetry_axes(angular, mu):
            failures.append(f"eps={eps}: configuration is symmetric")
    drift = trace.max_radial_drift()
    halved = continue_family(start, mu, eps_max=0.1, step=0.0025).max_radial_drift()
    if not (math.isfinite(drift) and drift > 0):
        failures.append(f"radial drift constant {drift}")
    elif abs(drift - halved) / drift >= 1e-6:
        failures.append(f"drift constant moves under step halving: "
                        f"{drift:.9f} vs {halved:.9f}")
    _emit(capsys, 6, "continuation of the stable saddle", failures)


def test_criterion_7_polygon_residuals(capsys):
    failures = []
    for n in range(2, 7):
        for mu in (1.0, 2.0):
            for eps in (0.0, 0.05, 0.1):
                config = polygon_family(n, mu, eps)
                residual = float(np.abs(re_residual(config)).max())
                if residual >= 1e-12:
                    failures.append(f"N={n} mu={mu} eps={eps}: {residual:.2e}")
    _emit(capsys, 7, "exact polygon relative equilibria", failures)


def _random_config(rng, n, min_gap=0.15):
    while True:
        theta = [0.0] + sorted(rng.uniform(0.2, 2 * math.pi - 0.2)
                               for _ in range(n - 1))
        gaps = [b - a for a, b in zip(theta, theta[1:])] + [2 * math.pi - theta[-1]]
        if min(gaps) > min_gap:
            return tuple(theta)


def _univariate(coeffs, ring):
    p = ring.zero()
    for k, c in enumerate(coeffs):
        if c:
            p = p + ring.monomial((k,), c)
    return p


def test_criterion_8_property_suites(capsys, certified):
    failures = []
    rng = seeded(88)

    for _ in range(25):
        n = rng.randint(2, 5)
        theta = np.array(_random_config(rng, n))
        mu = tuple(rng.choice([-2, -1, 1, 2, 3]) for _ in range(n))
        g = potential_gradient(tuple(theta), mu)
        fd = central_difference(lambda t: potential_value(tuple(t), mu), theta)
        if np.abs(fd - g).max() / max(1.0, np.abs(g).max()) >= 1e-6:
            failures.append("gradient finite differences")
            break
    for _ in range(15):
        n = rng.randint(2, 4)
        theta = np.array(_random_config(rng, n))
        mu = tuple(rng.choice([-2, -1, 1, 2]) for _ in range(n))
        H = potential_hessian(tuple(theta), mu)
        fd = np.zeros((n, n))
        for j in range(n):
            fd[j] = central_difference(
                lambda t: potential_gradient(tuple(t), mu)[j], theta)
        if np.abs(fd - H).max() / max(1.0, np.abs(H).max()) >= 1e-6:
            failures.append("hessian finite differences")
            break

    for _ in range(20):
        theta = _random_config(rng, 4)
        mu = tuple(rng.uniform(0.5, 2.0) for _ in range(4))
        shift = rng.uniform(0, 2 * math.pi)
        rotated = tuple(t + shift for t in theta)
        if abs(potential_value(rotated, mu) - potential_value(theta, mu)) >= 1e-12:
            failures.append("rotation invariance of the value")
            break
        dg = potential_gradient(rotated, mu) - potential_gradient(theta, mu)
        if np.abs(dg).max() >= 1e-12:
            failures.append("rotation equivariance of the gradient")
            break

    ring = PolynomialRing(("x",))
    counts = [c.count for c in certified.values()]
    mismatches = 0
    for _ in range(200):
        deg = rng.randint(1, 7)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
        rc = count_real_roots([_univariate(coeffs, ring)])
        counts.append(rc)
        if rc.real_distinct != sturm_distinct_real_roots(coeffs):
            mismatches += 1
        if rc.complex_distinct != squarefree_distinct_complex_roots(coeffs):
            mismatches += 1
    if mismatches:
        failures.append(f"{mismatches} univariate oracle mismatches")

    bases = [c.gb for c in certified.values()]
    xy = PolynomialRing(("x", "y"))
    for seed in range(6):
        local = seeded(880 + seed)
        gens = [random_multipoly(xy, local) for _ in range(2)]
        bases.append(buchberger(gens))
    for gb in bases:
        polys = gb.polys
        if not is_groebner_basis(polys, gb.order):
            failures.append("produced basis fails the confluence check")
            break
        done = True
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                if not normal_form(s_polynomial(polys[i], polys[j]), polys).is_zero():
                    failures.append("an S-polynomial does not reduce to zero")
                    done = False
                    break
            if not done:
                break
        if not done:
            break

    H = certified[(1, 1, 1)].H
    if not H.is_symmetric():
        failures.append("trace-form matrix is not exactly symmetric")
    for rc in counts:
        if (rc.real_distinct - rc.complex_distinct) % 2 != 0:
            failures.append("real/complex count parity broken")
            break
        if not 0 <= rc.real_distinct <= rc.complex_distinct:
            failures.append("real count exceeds complex count")
            break
    _emit(capsys, 8, "always-on property suites", failures)
