"""The reduced interaction potential, its derivatives, and classification.

For weak vortices at angles theta on the unit circle with weights mu,

    V(theta) = -sum_{i<j} mu_i mu_j [cos(d_ij) + log(2 - 2 cos(d_ij))/2],
    d_ij = theta_i - theta_j.

Critical points of V are the zero-circulation limits of relative
equilibria; a critical point is linearly stable exactly when the
weight-scaled Hessian diag(1/mu) V_theta_theta has N-1 positive
eigenvalues alongside the forced rotational zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from vortexre.errors import CollisionError, NotACriticalPointError

_COLLISION_CHORD = 1e-9  # minimum chord distance |2 sin(d/2)| between vortices


@dataclass(frozen=True)
class CirculationWeights:
    """Nonzero weights (mu_1,...,mu_N) of the weak vortices."""

    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(float(m) for m in self.mu))
        if len(self.mu) < 2:
            raise ValueError("need at least two weights")
        if any(m == 0.0 for m in self.mu):
            raise ValueError("weights must be nonzero")

    @classmethod
    def parse(cls, text):
        """Parse a comma-separated weight vector like '2,-1,3' or '1/2,1,1'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        values = []
        for p in parts:
            if "/" in p:
                num, den = p.split("/", 1)
                values.append(float(num) / float(den))
            else:
                values.append(float(p))
        return cls(tuple(values))

    def __len__(self):
        return len(self.mu)

    def __iter__(self):
        return iter(self.mu)

    def __getitem__(self, i):
        return self.mu[i]

    @property
    def array(self):
        return np.asarray(self.mu)

    def all_positive(self):
        return all(m > 0 for m in self.mu)

    def is_integral(self, tol=1e-12):
        return all(abs(m - round(m)) <= tol for m in self.mu)


@dataclass(frozen=True)
class AngularConfig:
    """Vortex angles on the circle, first entry gauge-fixed to zero."""

    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))

    def __len__(self):
        return len(self.theta)

    def __iter__(self):
        return iter(self.theta)

    def __getitem__(self, i):
        return self.theta[i]

    @property
    def gauge_fixed(self):
        return self.theta[0] == 0.0

    @property
    def array(self):
        return np.asarray(self.theta)

    def normalized(self):
        """Rotate so theta_1 = 0 and reduce all angles into [0, 2*pi)."""
        t = (self.array - self.theta[0]) % (2.0 * np.pi)
        t[0] = 0.0
        return AngularConfig(tuple(t))


def _angles(config):
    if isinstance(config, AngularConfig):
        return config.array
    return np.asarray(config, dtype=float)


def _weights(mu):
    if isinstance(mu, CirculationWeights):
        return mu.array
    return CirculationWeights(tuple(mu)).array


def _difference_tables(theta):
    """cos/sin/u tables of pairwise differences, with collision check."""
    d = theta[:, None] - theta[None, :]
    cos = np.cos(d)
    sin = np.sin(d)
    u = 2.0 - 2.0 * cos
    chord = np.sqrt(np.maximum(u, 0.0))
    np.fill_diagonal(chord, np.inf)
    if chord.min() < _COLLISION_CHORD:
        i, j = divmod(int(chord.argmin()), chord.shape[0])
        raise CollisionError(f"vortices {i + 1} and {j + 1} coincide")
    return cos, sin, u


def potential_value(config, mu):
    """V(theta); finite away from collisions."""
    theta = _angles(config)
    w = _weights(mu)
    cos, _, u = _difference_tables(theta)
    pair = np.outer(w, w) * (cos + 0.5 * np.log(np.where(u > 0, u, 1.0)))
    return -float(np.triu(pair, 1).sum())


def potential_gradient(config, mu):
    """Gradient of V; its components always sum to zero."""
    theta = _angles(config)
    w = _weights(mu)
    _, sin, u = _difference_tables(theta)
    np.fill_diagonal(u, 1.0)
    t = sin * (-1.0 + 1.0 / u)
    np.fill_diagonal(t, 0.0)
    return -(w[:, None] * w[None, :] * t).sum(axis=1)


def potential_hessian(config, mu):
    """Symmetric Hessian of V; rows sum to zero (rotational null vector)."""
    theta = _angles(config)
    w = _weights(mu)
    cos, sin, u = _difference_tables(theta)
    np.fill_diagonal(u, 1.0)
    gpp = -cos + (cos * u - 2.0 * sin**2) / u**2
    np.fill_diagonal(gpp, 0.0)
    H = np.outer(w, w) * gpp
    np.fill_diagonal(H, -H.sum(axis=1))
    return H


def weighted_hessian(config, mu):
    """diag(1/mu) times the Hessian; the stability operator."""
    w = _weights(mu)
    return potential_hessian(config, mu) / w[:, None]


@dataclass(frozen=True)
class StabilityReport:
    """Spectral data and verdict for one critical point."""

    hessian_eigs: tuple
    weighted_eigs: tuple
    zero_count: int
    verdict: str        # stable | unstable | degenerate
    extremal_type: str  # minimum | maximum | saddle | degenerate
    gradient_norm: float = field(default=0.0)

    def to_dict(self):
        return {
            "hessian_eigenvalues": list(self.hessian_eigs),
            "weighted_eigenvalues": [[z.real, z.imag] for z in self.weighted_eigs],
            "zero_count": self.zero_count,
            "verdict": self.verdict,
            "extremal_type": self.extremal_type,
            "gradient_norm": self.gradient_norm,
        }


def _rotation_complement_basis(n):
    """Orthonormal basis of the subspace orthogonal to (1,...,1)."""
    basis = np.eye(n)[:, 1:] - np.ones((n, n - 1)) / n
    q, _ = np.linalg.qr(basis)
    return q


def classify(config, mu, tol_grad=1e-10, tol_zero=1e-8):
    """Stability report for a critical point of V.

    Stable means the weighted Hessian has exactly the one rotational
    zero eigenvalue and N-1 real positive ones; more than one zero
    eigenvalue gives the verdict (and extremal type) "degenerate".  The
    extremal type describes V restricted transverse to rotation, so
    "minimum" means a minimum modulo the rotational symmetry.
    """
    theta = _angles(config)
    w = _weights(mu)
    grad = potential_gradient(theta, w)
    gnorm = float(np.abs(grad).max())
    if gnorm >= tol_grad:
        raise NotACriticalPointError(
            f"gradient infinity-norm {gnorm:.3e} exceeds tolerance {tol_grad:.1e}"
        )
    H = potential_hessian(theta, w)
    hessian_eigs = np.linalg.eigvalsh(H)
    W = H / w[:, None]
    weighted = np.linalg.eigvals(W)
    weighted = weighted[np.lexsort((weighted.imag, weighted.real))]

    scale = max(1.0, float(np.abs(weighted).max()))
    zero_tol = tol_zero * scale
    zero_count = int(np.sum(np.abs(weighted) < zero_tol))

    if zero_count != 1:
        verdict = "degenerate"
    else:
        nonzero = weighted[np.abs(weighted) >= zero_tol]
        real_positive = (nonzero.real > zero_tol) & (
            np.abs(nonzero.imag) < tol_zero * np.maximum(1.0, np.abs(nonzero))
        )
        verdict = "stable" if bool(real_positive.all()) else "unstable"

    Q = _rotation_complement_basis(len(theta))
    restricted = np.linalg.eigvalsh(Q.T @ H @ Q)
    h_tol = tol_zero * max(1.0, float(np.abs(hessian_eigs).max()))
    if np.any(np.abs(restricted) < h_tol):
        extremal = "degenerate"
    elif np.all(restricted > 0):
        extremal = "minimum"
    elif np.all(restricted < 0):
        extremal = "maximum"
    else:
        extremal = "saddle"

    return StabilityReport(
        hessian_eigs=tuple(float(x) for x in hessian_eigs),
        weighted_eigs=tuple(complex(z) for z in weighted),
        zero_count=zero_count,
        verdict=verdict,
        extremal_type=extremal,
        gradient_norm=gnorm,
    )
