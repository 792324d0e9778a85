"""The full point-vortex system at small positive coupling.

One strong vortex of circulation 1 plus N weak vortices of circulation
eps*mu_i.  Positions relative to the strong vortex satisfy a rotating-frame
fixed-point equation whose eps -> 0 limit is the critical-point equation of
the reduced potential on the circle; this module provides the residual, its
analytic Jacobian, gauge-fixed Newton polishing, continuation in eps, the
regular-polygon family, and a full-system spectral stability check that is
independent of the reduced-potential classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import null_space

from vortexre.errors import CollisionError, ConvergenceError, NotACriticalPointError
from vortexre.potential import AngularConfig, CirculationWeights, classify

_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
_MIN_SEP = 1e-12


def _perp(v):
    """Rotate planar vectors by +90 degrees: (x, y) -> (-y, x)."""
    v = np.asarray(v, dtype=float)
    out = np.empty_like(v)
    out[..., 0] = -v[..., 1]
    out[..., 1] = v[..., 0]
    return out


# -- the unreduced system ----------------------------------------------------

@dataclass(frozen=True)
class PlanarConfig:
    positions: tuple  # ((x, y), ...) for all vortices, strong first
    circulations: tuple

    def __post_init__(self):
        q = self.array
        if len(q) != len(self.circulations):
            raise ValueError("one circulation per vortex")
        for i in range(len(q)):
            for j in range(i + 1, len(q)):
                if np.hypot(*(q[i] - q[j])) <= _MIN_SEP:
                    raise CollisionError(f"vortices {i} and {j} coincide")

    @property
    def array(self):
        return np.asarray(self.positions, dtype=float)

    def center_of_vorticity(self):
        g = np.asarray(self.circulations, dtype=float)
        total = g.sum()
        if total == 0.0:
            raise ValueError("center of vorticity undefined for zero total circulation")
        return (g[:, None] * self.array).sum(axis=0) / total


def vortex_field(positions, circulations=None):
    """Velocities q_i' = sum_{j != i} Gamma_j (q_i - q_j)^perp / |q_i - q_j|^2."""
    if isinstance(positions, PlanarConfig):
        q, g = positions.array, np.asarray(positions.circulations, dtype=float)
    else:
        q = np.asarray(positions, dtype=float)
        g = np.asarray(circulations, dtype=float)
    diff = q[:, None, :] - q[None, :, :]
    dist2 = (diff ** 2).sum(axis=2)
    np.fill_diagonal(dist2, 1.0)
    if (dist2 <= _MIN_SEP ** 2).any():
        raise CollisionError("coincident vortices in vortex_field")
    weights = g[None, :] / dist2
    np.fill_diagonal(weights, 0.0)
    return _perp((weights[:, :, None] * diff).sum(axis=1))


def hamiltonian(positions, circulations=None):
    """Interaction energy -sum_{i<j} Gamma_i Gamma_j log|q_i - q_j|."""
    if isinstance(positions, PlanarConfig):
        q, g = positions.array, np.asarray(positions.circulations, dtype=float)
    else:
        q = np.asarray(positions, dtype=float)
        g = np.asarray(circulations, dtype=float)
    total = 0.0
    for i in range(len(q)):
        for j in range(i + 1, len(q)):
            total -= g[i] * g[j] * math.log(np.hypot(*(q[i] - q[j])))
    return total


def integrate_vortices(config, t_final, rtol=1e-10, atol=1e-10, t_eval=None):
    """Integrate the full system with an adaptive embedded Runge-Kutta pair."""
    g = np.asarray(config.circulations, dtype=float)
    n = len(g)

    def rhs(_, y):
        return vortex_field(y.reshape(n, 2), g).ravel()

    sol = solve_ivp(rhs, (0.0, t_final), config.array.ravel(),
                    rtol=rtol, atol=atol, t_eval=t_eval, dense_output=False)
    if not sol.success:
        raise ConvergenceError(f"integration failed: {sol.message}")
    return sol.t, sol.y.T.reshape(len(sol.t), n, 2)


# -- frame relative to the strong vortex -------------------------------------

@dataclass(frozen=True)
class HelioConfig:
    Z: tuple  # ((x, y), ...) weak-vortex positions relative to the strong one
    epsilon: float
    mu: CirculationWeights
    omega: float = 1.0

    def __post_init__(self):
        if not isinstance(self.mu, CirculationWeights):
            object.__setattr__(self, "mu", CirculationWeights(tuple(self.mu)))
        z = self.array
        if len(z) != len(self.mu):
            raise ValueError("one weight per weak vortex")
        r = np.hypot(z[:, 0], z[:, 1])
        if (r <= _MIN_SEP).any():
            raise CollisionError("weak vortex at the strong vortex")
        for i in range(len(z)):
            for j in range(i + 1, len(z)):
                if np.hypot(*(z[i] - z[j])) <= _MIN_SEP:
                    raise CollisionError(f"weak vortices {i} and {j} coincide")

    @property
    def array(self):
        return np.asarray(self.Z, dtype=float)

    @property
    def radii(self):
        z = self.array
        return np.hypot(z[:, 0], z[:, 1])

    @property
    def angles(self):
        z = self.array
        a = np.arctan2(z[:, 1], z[:, 0]) % (2.0 * math.pi)
        a[a > 2.0 * math.pi - 1e-12] = 0.0
        return a

    def as_vector(self):
        return self.array.ravel().copy()

    def replace(self, Z=None, epsilon=None):
        return HelioConfig(
            Z=tuple(map(tuple, Z)) if Z is not None else self.Z,
            epsilon=self.epsilon if epsilon is None else float(epsilon),
            mu=self.mu, omega=self.omega)

    @classmethod
    def from_vector(cls, vec, epsilon, mu, omega=1.0):
        z = np.asarray(vec, dtype=float).reshape(-1, 2)
        return cls(Z=tuple(map(tuple, z)), epsilon=float(epsilon), mu=mu, omega=omega)

    @classmethod
    def from_critical_point(cls, config, mu, epsilon):
        theta = np.asarray(config.theta if isinstance(config, AngularConfig) else config,
                           dtype=float)
        z = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return cls.from_vector(z.ravel(), epsilon, mu)

    def strong_vortex_offset(self):
        """Strong-vortex position relative to the rotation center.

        The rotation center is the center of vorticity; placing it at the
        origin puts the strong vortex at -sum Gamma_i Z_i / Gamma_total.
        """
        gamma = self.epsilon * self.mu.array
        total = 1.0 + gamma.sum()
        return -(gamma[:, None] * self.array).sum(axis=0) / total

    def to_planar(self):
        """Embed with the center of vorticity at the origin."""
        q0 = self.strong_vortex_offset()
        positions = [tuple(q0)] + [tuple(z + q0) for z in self.array]
        circulations = (1.0,) + tuple(self.epsilon * np.asarray(self.mu.mu))
        return PlanarConfig(positions=tuple(positions), circulations=circulations)

    def to_dict(self):
        return {
            "angles": [float(a) for a in self.angles],
            "radii": [float(r) for r in self.radii],
            "mu": list(self.mu.mu),
            "epsilon": float(self.epsilon),
            "omega": float(self.omega),
            "z0": [float(c) for c in self.strong_vortex_offset()],
        }


def rotate_config(config, angle):
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]])
    return config.replace(Z=config.array @ R.T)


def re_residual(config):
    """Rotating-frame velocity of each weak vortex; zero at relative equilibria.

    Row i is  -omega*J z_i + (1 + eps*mu_i) J z_i/|z_i|^2
              + eps * sum_{j != i} mu_j (J z_j/|z_j|^2 + J(z_i - z_j)/|z_i - z_j|^2).
    """
    z = config.array
    mu = config.mu.array
    eps = config.epsilon
    n = len(z)
    r2 = (z ** 2).sum(axis=1)
    if (r2 <= _MIN_SEP ** 2).any():
        raise CollisionError("weak vortex at the strong vortex")
    unit = z / r2[:, None]  # z_i / |z_i|^2
    out = -config.omega * z + (1.0 + eps * mu)[:, None] * unit
    for i in range(n):
        acc = np.zeros(2)
        for j in range(n):
            if j == i:
                continue
            d = z[i] - z[j]
            d2 = d @ d
            if d2 <= _MIN_SEP ** 2:
                raise CollisionError(f"weak vortices {i} and {j} coincide")
            acc += mu[j] * (unit[j] + d / d2)
        out[i] += eps * acc
    return _perp(out).ravel()


def _kernel(v):
    """Derivative of v / |v|^2:  (I |v|^2 - 2 v v^T) / |v|^4."""
    v = np.asarray(v, dtype=float)
    n2 = v @ v
    return (np.eye(2) * n2 - 2.0 * np.outer(v, v)) / n2 ** 2


def re_jacobian(config):
    """Analytic Jacobian of re_residual with respect to the flattened Z."""
    z = config.array
    mu = config.mu.array
    eps = config.epsilon
    n = len(z)
    A = np.zeros((2 * n, 2 * n))
    for i in range(n):
        diag = -config.omega * np.eye(2) + (1.0 + eps * mu[i]) * _kernel(z[i])
        for j in range(n):
            if j == i:
                continue
            kd = _kernel(z[i] - z[j])
            diag += eps * mu[j] * kd
            A[2 * i:2 * i + 2, 2 * j:2 * j + 2] = _J2 @ (eps * mu[j] * (_kernel(z[j]) - kd))
        A[2 * i:2 * i + 2, 2 * i:2 * i + 2] = _J2 @ diag
    return A


def newton_solve(initial, tol=1e-12, max_iter=50, rcond=1e-10, history=None):
    """Polish a relative-equilibrium guess to residual infinity-norm < tol.

    The rotational gauge (weak vortex 1 on the positive x-axis) is enforced
    as an appended constraint row, and each step solves the augmented
    (2N+1)-row system in the least-squares sense because the rotational
    null direction makes the square Jacobian singular.
    """
    config = initial
    for _ in range(max_iter + 1):
        res = re_residual(config)
        gauge = config.array[0, 1]
        norm = max(np.abs(res).max(), abs(gauge))
        if history is not None:
            history.append(norm)
        if norm < tol:
            return config
        A = re_jacobian(config)
        row = np.zeros((1, A.shape[1]))
        row[0, 1] = 1.0  # d(gauge)/dZ: the y-component of vortex 1
        aug = np.vstack([A, row])
        rhs = -np.concatenate([res, [gauge]])
        step, *_ = np.linalg.lstsq(aug, rhs, rcond=rcond)
        if not np.all(np.isfinite(step)):
            raise ConvergenceError("Newton step is not finite")
        config = HelioConfig.from_vector(config.as_vector() + step,
                                         config.epsilon, config.mu, config.omega)
    raise ConvergenceError(f"no convergence to {tol} within {max_iter} iterations")


# -- full-system linear stability --------------------------------------------

@dataclass(frozen=True)
class FullStabilityReport:
    eigenvalues: tuple  # spectrum off the rotation/scaling subspace
    verdict: str  # "stable" | "unstable"
    max_real_part: float


def _symplectic_form(config):
    """Matrix of the symplectic form in strong-vortex-relative coordinates.

    The reduction of the weighted form sum Gamma_i dx_i ^ dy_i gives the
    block structure kron(S, -J) with S = diag(Gamma) - Gamma Gamma^T / Gamma_total.
    """
    gamma = config.epsilon * config.mu.array
    total = 1.0 + gamma.sum()
    S = np.diag(gamma) - np.outer(gamma, gamma) / total
    return np.kron(S, -_J2)


def full_system_stability(config, tol=1e-6):
    """Spectral stability of the rotating-frame linearization.

    The rotation and scaling directions span an invariant subspace carrying
    a forced nilpotent block; the spectrum is taken on its skew-orthogonal
    complement and the verdict is stable exactly when that spectrum is
    purely imaginary and semisimple.
    """
    if config.epsilon == 0.0:
        raise ValueError("full-system stability needs epsilon > 0")
    A = re_jacobian(config)
    zvec = config.as_vector()
    v_rot = (_perp(config.array)).ravel()
    B = _symplectic_form(config)
    constraints = np.vstack([v_rot @ B, zvec @ B])
    Q = null_space(constraints)
    reduced = Q.T @ A @ Q
    eigvals, eigvecs = np.linalg.eig(reduced)
    scale = max(1.0, float(np.abs(eigvals).max(initial=0.0)))
    semisimple = (np.linalg.svd(eigvecs, compute_uv=False).min() > 1e-3
                  if len(eigvals) else True)
    max_real = float(np.abs(eigvals.real).max(initial=0.0))
    verdict = "stable" if (max_real <= tol * scale and semisimple) else "unstable"
    order = np.lexsort((eigvals.real, eigvals.imag))
    return FullStabilityReport(
        eigenvalues=tuple(complex(v) for v in eigvals[order]),
        verdict=verdict, max_real_part=max_real)


# -- known families and continuation -----------------------------------------

def polygon_family(N, mu_scalar, epsilon):
    """Regular N-gon of equal weak vortices around the strong one.

    The radius solves omega R^2 = 1 + mu*eps*(N-1)/2 with omega = 1; the
    residual then vanishes identically, not just to leading order.
    """
    if N < 2:
        raise ValueError("polygon needs at least two weak vortices")
    R = math.sqrt(1.0 + mu_scalar * epsilon * (N - 1) / 2.0)
    angles = 2.0 * math.pi * np.arange(N) / N
    z = R * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return HelioConfig.from_vector(z.ravel(), epsilon, (mu_scalar,) * N)


@dataclass(frozen=True)
class ContinuationRecord:
    epsilon: float
    config: HelioConfig
    residual: float
    verdict: str


@dataclass(frozen=True)
class ContinuationTrace:
    records: tuple
    mu: CirculationWeights
    failure: str | None = None
    start: AngularConfig = None

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def final(self):
        if not self.records:
            raise ValueError("empty trace")
        return self.records[-1]

    def max_radial_drift(self):
        """max over the trace of max_i |r_i - 1| / eps."""
        return max(np.abs(rec.config.radii - 1.0).max() / rec.epsilon
                   for rec in self.records)

    def csv_rows(self):
        n = len(self.mu)
        header = (["eps"] + [f"r{i+1}" for i in range(n)]
                  + [f"theta{i+1}" for i in range(n)] + ["residual", "verdict"])
        rows = [header]
        for rec in self.records:
            rows.append([f"{rec.epsilon:.10g}"]
                        + [f"{r:.12f}" for r in rec.config.radii]
                        + [f"{t:.12f}" for t in rec.config.angles]
                        + [f"{rec.residual:.3e}", rec.verdict])
        return rows

    def to_dict(self):
        return {
            "mu": list(self.mu.mu),
            "failure": self.failure,
            "records": [
                {"epsilon": rec.epsilon, "residual": rec.residual,
                 "verdict": rec.verdict, **rec.config.to_dict()}
                for rec in self.records
            ],
        }


def _epsilon_schedule(eps_max, step):
    if eps_max <= 0.0 or step <= 0.0:
        raise ValueError("eps_max and step must be positive")
    out = []
    k = 1
    while step * k < eps_max - 1e-12:
        out.append(step * k)
        k += 1
    out.append(eps_max)
    return out


def continue_family(theta_star, mu, eps_max, step=0.005, tol=1e-12,
                    stability_tol=1e-6, check_start=True):
    """Continue a nondegenerate critical point of V to positive coupling.

    Walks eps from `step` to `eps_max`, seeding each Newton solve with the
    previous solution and recording the full-system stability verdict.  A
    failed solve ends the walk and returns the partial trace with a
    failure marker instead of raising.
    """
    weights = mu if isinstance(mu, CirculationWeights) else CirculationWeights(tuple(mu))
    config = theta_star if isinstance(theta_star, AngularConfig) else AngularConfig(tuple(theta_star))
    if check_start:
        report = classify(config, weights)
        if report.zero_count != 1:
            raise NotACriticalPointError(
                "continuation requires a nondegenerate critical point "
                f"(rotational zero count {report.zero_count})")
    current = HelioConfig.from_critical_point(config, weights, 0.0)
    records = []
    failure = None
    for eps in _epsilon_schedule(eps_max, step):
        guess = current.replace(epsilon=eps)
        try:
            solved = newton_solve(guess, tol=tol)
            verdict = full_system_stability(solved, tol=stability_tol).verdict
        except (ConvergenceError, CollisionError) as exc:
            failure = f"eps={eps:.6g}: {exc}"
            break
        residual = float(np.abs(re_residual(solved)).max())
        records.append(ContinuationRecord(epsilon=eps, config=solved,
                                          residual=residual, verdict=verdict))
        current = solved
    return ContinuationTrace(records=tuple(records), mu=weights,
                             failure=failure, start=config)


def corotating_drift(config, periods=1.0, rtol=1e-10, atol=1e-10):
    """Drift after integrating a relative equilibrium for full periods.

    The exact solution rotates rigidly about the center of vorticity at
    rate omega, so after rotating back the final state should match the
    initial one; the returned number is the max position mismatch.
    """
    planar = config.to_planar()
    t_final = 2.0 * math.pi * periods / config.omega
    _, states = integrate_vortices(planar, t_final, rtol=rtol, atol=atol,
                                   t_eval=[t_final])
    final = states[-1]
    a = -config.omega * t_final
    c, s = math.cos(a), math.sin(a)
    R = np.array([[c, -s], [s, c]])
    back = final @ R.T
    return float(np.abs(back - planar.array).max())
