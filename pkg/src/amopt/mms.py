"""Modulus-based matrix splitting iteration for the standard LCP.

The LCP  z >= 0, A z + q >= 0, z'(A z + q) = 0  is equivalent to the
implicit fixed-point equation

    (M + Omega) y = N y + (Omega - A)|y| - eta q,

for any splitting A = M - N, positive diagonal Omega and eta > 0, with
z = (|y| + y)/eta (Bai, 2010).  The stationary iteration solves the
left-hand system for y_(k+1) with y_k on the right, and stops when

    || A(|y| + y) + Omega(y - |y|) + eta q ||_inf < tol.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .bands import TriDiag
from .mpe import AccelPolicy, accelerate


class NonConvergedError(RuntimeError):
    """An iteration hit its cap before reaching the residual tolerance."""

    def __init__(self, message: str, report=None, step: int | None = None):
        super().__init__(message)
        self.report = report
        self.step = step


@dataclass(frozen=True)
class MmsConfig:
    """Modulus transformation and stopping parameters."""

    eta: float = 2.0
    omega_scale: float = 0.5
    tol: float = 1e-6
    max_iter: int = 100_000

    def __post_init__(self):
        if self.eta <= 0.0:
            raise ValueError("eta must be positive")
        if self.omega_scale <= 0.0:
            raise ValueError("omega_scale must be positive")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


def scaled_omega(a: TriDiag, scale: float) -> np.ndarray:
    """Diagonal Omega = scale * diag(A), built once per time march."""
    return scale * a.d


@dataclass
class SolveReport:
    """Per-LCP iteration accounting.

    ``iterations`` counts stationary steps only; extrapolations are
    recorded separately so the two are never conflated.
    """

    method_tag: str
    iterations: int
    extrapolations: int
    final_residual: float
    wall_time: float
    converged: bool
    certificate: float = float("nan")
    residual_history: list = field(default_factory=list)


def mms_residual(a: TriDiag, omega: np.ndarray, eta: float, q: np.ndarray, y: np.ndarray) -> float:
    """Inf-norm of A(|y| + y) + Omega(y - |y|) + eta q."""
    ay = np.abs(y)
    r = a.matvec(ay + y) + omega * (y - ay) + eta * q
    return float(np.max(np.abs(r)))


def mms_step(s, eta: float, q: np.ndarray, y: np.ndarray) -> np.ndarray:
    """One stationary step: solve (M + Omega) y' = N y + (Omega - A)|y| - eta q."""
    ay = np.abs(y)
    rhs = s.apply_n(y) + s.omega * ay - s.A.matvec(ay) - eta * q
    return s.solve_m_plus_omega(rhs)


def recover_z(y: np.ndarray, eta: float) -> np.ndarray:
    """LCP solution z = (|y| + y)/eta of a fixed point y."""
    return (np.abs(y) + y) / eta


def y_from_z(z: np.ndarray, a: TriDiag, omega: np.ndarray, eta: float, q: np.ndarray) -> np.ndarray:
    """Fixed-point vector y = eta Omega^{-1} ((Omega - A) z - q) / 2 of an LCP solution z."""
    return eta * (omega * z - a.matvec(z) - q) / (2.0 * omega)


def solve_lcp(
    s,
    cfg: MmsConfig,
    q: np.ndarray,
    y0: np.ndarray | None = None,
    policy: AccelPolicy = AccelPolicy("none"),
    method_tag: str = "",
):
    """Solve one LCP by the modulus iteration under the given policy.

    Returns (z, y_final, report).  Hitting ``cfg.max_iter`` is not fatal:
    the report comes back flagged as non-converged and the caller decides
    how to react.
    """
    q = np.asarray(q, dtype=float)
    if y0 is None:
        y0 = np.zeros(s.A.n)
    step_fn = lambda y: mms_step(s, cfg.eta, q, y)
    residual_fn = lambda y: mms_residual(s.A, s.omega, cfg.eta, q, y)
    t0 = time.perf_counter()
    acc = accelerate(policy, step_fn, residual_fn, y0, cfg.tol, cfg.max_iter)
    wall = time.perf_counter() - t0
    report = SolveReport(
        method_tag=method_tag,
        iterations=acc.iterations,
        extrapolations=acc.extrapolations,
        final_residual=acc.final_residual,
        wall_time=wall,
        converged=acc.converged,
        residual_history=acc.residuals,
    )
    return recover_z(acc.y, cfg.eta), acc.y, report
