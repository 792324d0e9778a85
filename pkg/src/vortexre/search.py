"""Numerical search for all critical points of the reduced potential.

Multi-start Newton on the gauge-fixed torus (theta_1 = 0): polish a
deterministic low-discrepancy lattice of seeds, deduplicate modulo
rotation, classify each survivor, and group the survivors into families
related by weight-preserving relabelings, reflection, and rotation.
Completeness is certified separately by the exact root count on the
half-angle system, not by seed density.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from vortexre.errors import CollisionError, NotACriticalPointError
from vortexre.potential import (
    AngularConfig,
    CirculationWeights,
    classify,
    potential_gradient,
    potential_hessian,
)

TWO_PI = 2.0 * math.pi

_DEDUP_RULE = (
    "gauge theta_1 = 0; angles reduced mod 2*pi; points closer than the "
    "dedup tolerance in rotation distance merged, lexicographically "
    "smallest angle vector kept"
)


@dataclass(frozen=True)
class CriticalPoint:
    config: AngularConfig
    report: object  # StabilityReport


@dataclass(frozen=True)
class CriticalPointSet:
    points: tuple
    mu: CirculationWeights
    dedup_rule: str = _DEDUP_RULE

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def configs(self):
        return [p.config for p in self.points]


def rotation_distance(a, b):
    """min over rotations c of the infinity-norm angle distance (mod 2*pi).

    The minimizing rotation aligns one pair of components exactly, so it
    is enough to scan the candidate shifts b_i - a_i.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    best = np.inf
    for c in b - a:
        d = (a - b + c + np.pi) % TWO_PI - np.pi
        best = min(best, float(np.abs(d).max()))
    return best


def _lattice_seeds(dim, count):
    """Deterministic Kronecker lattice on the dim-torus, in radians."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    alpha = np.array([math.sqrt(p) % 1.0 for p in primes[:dim]])
    k = np.arange(1, count + 1)[:, None]
    return (k * alpha % 1.0) * TWO_PI


def _min_gap(full):
    d = full[:, None] - full[None, :]
    gap = np.abs((d + np.pi) % TWO_PI - np.pi)
    np.fill_diagonal(gap, np.inf)
    return gap.min()


def _newton_polish(x0, w, tol_grad, max_iter=50):
    """Newton on the reduced gradient (theta_1 fixed); None on failure.

    Keeps stepping past tol_grad while steps still help, so accepted
    points sit at the numerical floor rather than just under the
    tolerance.
    """
    x = np.array(x0, dtype=float)
    converged = False
    for _ in range(max_iter):
        full = np.concatenate(([0.0], x))
        try:
            g = potential_gradient(full, w)[1:]
        except CollisionError:
            return None
        gnorm = np.abs(g).max()
        if gnorm < tol_grad:
            converged = True
            if gnorm == 0.0:
                break
        try:
            H = potential_hessian(full, w)[1:, 1:]
        except CollisionError:
            return None
        try:
            step = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(H, -g, rcond=None)
        if not np.all(np.isfinite(step)):
            return x % TWO_PI if converged else None
        # Backtrack when the full step does not decrease the gradient.
        scale = 1.0
        for _ in range(12):
            trial = x + scale * step
            try:
                trial_norm = np.abs(
                    potential_gradient(np.concatenate(([0.0], trial)), w)[1:]
                ).max()
            except CollisionError:
                trial_norm = np.inf
            if trial_norm < gnorm:
                break
            scale *= 0.5
        else:
            # no improvement possible: either done or stuck
            break
        x = trial % TWO_PI
    return x % TWO_PI if converged else None


def find_all_critical_points(mu, seeds=4096, tol_grad=1e-10, dedup_tol=1e-6,
                             tol_zero=1e-8, seed_gap=0.05):
    """All critical points of V for the given weights, modulo rotation.

    Polishes `seeds` lattice points with Newton's method, drops seeds
    that start within `seed_gap` radians of a collision, deduplicates
    modulo rotation, and classifies every survivor.  Degenerate critical
    points are kept and flagged, never dropped.
    """
    w = CirculationWeights(tuple(mu)) if not isinstance(mu, CirculationWeights) else mu
    dim = len(w) - 1
    found = []
    for seed in _lattice_seeds(dim, seeds):
        full = np.concatenate(([0.0], seed))
        if _min_gap(full) < seed_gap:
            continue
        x = _newton_polish(seed, w.array, tol_grad)
        if x is None:
            continue
        for k, y in enumerate(found):
            if rotation_distance(np.concatenate(([0.0], x)),
                                 np.concatenate(([0.0], y))) < dedup_tol:
                if tuple(x) < tuple(y):
                    found[k] = x
                break
        else:
            found.append(x)
    points = []
    for x in sorted(found, key=tuple):
        config = AngularConfig((0.0,) + tuple(x))
        try:
            report = classify(config, w, tol_grad=10.0 * tol_grad, tol_zero=tol_zero)
        except NotACriticalPointError:
            continue
        points.append(CriticalPoint(config=config, report=report))
    return CriticalPointSet(points=tuple(points), mu=w)


# -- symmetry and families ---------------------------------------------------

def _weight_preserving_permutations(mu):
    """Permutations of vortex indices that fix the weight vector."""
    mu = tuple(mu)
    n = len(mu)
    for perm in itertools.permutations(range(n)):
        if all(mu[perm[i]] == mu[i] for i in range(n)):
            yield perm


def _canonical_orbit(theta, mu, include_reflection=True):
    """All gauge-normalized images under relabeling x reflection x rotation."""
    theta = np.asarray(theta, dtype=float)
    images = []
    for perm in _weight_preserving_permutations(mu):
        relabeled = theta[list(perm)]
        for sign in ((1.0, -1.0) if include_reflection else (1.0,)):
            img = (sign * (relabeled - relabeled[0])) % TWO_PI
            img[0] = 0.0
            images.append(img)
    return images


def group_into_families(point_set, family_tol=1e-6):
    """Partition critical points into symmetry families.

    Two points share a family when some weight-preserving relabeling,
    optionally composed with the reflection theta -> -theta, maps one to
    the other up to rotation.
    """
    mu = point_set.mu.mu
    configs = [np.asarray(p.config.theta) for p in point_set.points]
    n = len(configs)
    family_of = [None] * n
    families = []
    for i in range(n):
        if family_of[i] is not None:
            continue
        members = [i]
        family_of[i] = len(families)
        for img in _canonical_orbit(configs[i], mu):
            for j in range(i + 1, n):
                if family_of[j] is None and rotation_distance(img, configs[j]) < family_tol:
                    family_of[j] = len(families)
                    members.append(j)
        families.append(tuple(sorted(set(members))))
    return families


def symmetry_axes(config, mu=None, tol=1e-8):
    """Vortices (0-based) whose axis through the center reflects the
    configuration onto itself with weights preserved."""
    theta = np.asarray(config.theta if isinstance(config, AngularConfig) else config)
    n = len(theta)
    mu = tuple(mu) if mu is not None else (1.0,) * n
    axes = []
    for i in range(n):
        reflected = (2.0 * theta[i] - theta) % TWO_PI
        used = [False] * n
        ok = True
        for j in range(n):
            match = None
            for k in range(n):
                if used[k] or mu[k] != mu[j]:
                    continue
                d = abs((reflected[j] - theta[k] + np.pi) % TWO_PI - np.pi)
                if d < tol:
                    match = k
                    break
            if match is None:
                ok = False
                break
            used[match] = True
        if ok:
            axes.append(i)
    return tuple(axes)


def symmetry_check(config, mu=None, tol=1e-8):
    """True when some axis through the center and one vortex is a
    reflection symmetry of the weighted configuration."""
    return bool(symmetry_axes(config, mu, tol))


def export_critical_points(point_set, families=None):
    """JSON-ready record of a critical point set with family labels."""
    if families is None:
        families = group_into_families(point_set)
    family_of = {}
    for fid, members in enumerate(families):
        for m in members:
            family_of[m] = fid
    records = []
    for idx, p in enumerate(point_set.points):
        rec = {
            "angles": list(p.config.theta),
            "mu": list(point_set.mu.mu),
            "family": family_of.get(idx),
            "symmetric": symmetry_check(p.config, tol=1e-6),
        }
        rec.update(p.report.to_dict())
        records.append(rec)
    return {
        "count": len(point_set),
        "family_count": len(families),
        "dedup_rule": point_set.dedup_rule,
        "points": records,
    }
