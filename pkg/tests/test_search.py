"""Seeded Newton search for critical points, dedup, families, symmetry."""

import math

import numpy as np
import pytest

from vortexre.potential import potential_gradient
from vortexre.search import (
    export_critical_points,
    find_all_critical_points,
    group_into_families,
    rotation_distance,
    symmetry_axes,
    symmetry_check,
)

EQUILATERAL = (0.0, 2 * math.pi / 3, 4 * math.pi / 3)


@pytest.fixture(scope="module")
def equal_weights():
    return find_all_critical_points((1, 1, 1), seeds=1024)


def test_two_vortex_catalog_is_exact():
    found = find_all_critical_points((1, 1), seeds=256)
    angles = sorted(p.config.theta[1] for p in found.points)
    expected = [math.pi / 3, math.pi, 5 * math.pi / 3]
    assert len(angles) == 3
    for got, want in zip(angles, expected):
        assert got == pytest.approx(want, abs=1e-9)
    assert len(group_into_families(found)) == 2


def test_equal_weights_point_count(equal_weights):
    assert len(equal_weights.points) == 14


def test_equal_weights_family_structure(equal_weights):
    families = group_into_families(equal_weights)
    assert sorted(len(f) for f in families) == [2, 6, 6]
    # each family is homogeneous in classification
    for fam in families:
        verdicts = {
            (
                equal_weights.points[i].report.verdict,
                equal_weights.points[i].report.extremal_type,
            )
            for i in fam
        }
        assert len(verdicts) == 1


def test_equal_weights_verdict_census(equal_weights):
    census = {}
    for p in equal_weights.points:
        key = (p.report.verdict, p.report.extremal_type)
        census[key] = census.get(key, 0) + 1
    assert census == {
        ("stable", "minimum"): 6,
        ("unstable", "saddle"): 6,
        ("unstable", "maximum"): 2,
    }


def test_every_point_is_actually_critical(equal_weights):
    for p in equal_weights.points:
        g = potential_gradient(p.config, equal_weights.mu)
        # the polisher drives the reduced gradient below tol; the gauge
        # component is minus their sum
        assert np.abs(g[1:]).max() < 1e-10
        assert np.abs(g).max() < 1e-9


def test_points_are_pairwise_distinct(equal_weights):
    pts = equal_weights.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert rotation_distance(pts[i].config.theta, pts[j].config.theta) > 1e-6


def test_catalog_is_sorted_and_gauge_fixed(equal_weights):
    thetas = [p.config.theta for p in equal_weights.points]
    assert thetas == sorted(thetas)
    for t in thetas:
        assert t[0] == 0.0


def test_seed_count_already_saturated():
    a = find_all_critical_points((1, 1, 1), seeds=512)
    b = find_all_critical_points((1, 1, 1), seeds=1024)
    assert len(a.points) == len(b.points) == 14


def test_mixed_sign_weights_find_stable_saddle():
    found = find_all_critical_points((2, -1, 3), seeds=1024)
    assert len(found.points) == 10
    assert len(group_into_families(found)) == 5
    kinds = {(p.report.verdict, p.report.extremal_type) for p in found.points}
    assert ("stable", "saddle") in kinds


def test_rotation_distance_behaviour():
    base = (0.0, 1.0, 2.0)
    shifted = tuple((t + 1.234) % (2 * math.pi) for t in base)
    assert rotation_distance(base, shifted) < 1e-12
    assert rotation_distance(base, (0.0, 1.0, 2.5)) == pytest.approx(0.5)
    assert rotation_distance(base, base) == 0.0
    # symmetric in its arguments
    other = (0.1, 1.4, 3.0)
    assert rotation_distance(base, other) == pytest.approx(rotation_distance(other, base))


def test_symmetry_detection():
    assert symmetry_check(EQUILATERAL)
    assert symmetry_axes(EQUILATERAL) == (0, 1, 2)
    assert symmetry_check((0.0, 1.0, 2 * math.pi - 1.0))
    assert not symmetry_check((0.0, 1.0, 2.5))


def test_symmetry_respects_weights():
    iso = (0.0, 1.0, 2 * math.pi - 1.0)
    # geometrically symmetric, but the reflection must also preserve weights
    assert symmetry_check(iso, mu=(5, 1, 1))
    assert not symmetry_check(iso, mu=(5, 1, 2))


def test_equal_weight_points_all_symmetric(equal_weights):
    for p in equal_weights.points:
        assert symmetry_check(p.config, tol=1e-6)


def test_unequal_weight_points_all_asymmetric():
    found = find_all_critical_points((2, 1, 9), seeds=1024)
    assert len(found.points) == 10
    for p in found.points:
        assert not symmetry_check(p.config, tol=1e-6)


def test_export_schema(equal_weights):
    out = export_critical_points(equal_weights)
    assert out["count"] == 14
    assert out["family_count"] == 3
    assert isinstance(out["dedup_rule"], str)
    point = out["points"][0]
    for key in (
        "angles",
        "mu",
        "family",
        "symmetric",
        "hessian_eigenvalues",
        "weighted_eigenvalues",
        "zero_count",
        "verdict",
        "extremal_type",
        "gradient_norm",
    ):
        assert key in point
    assert len(point["angles"]) == 3
    import json

    json.dumps(out)  # must be serializable as-is
