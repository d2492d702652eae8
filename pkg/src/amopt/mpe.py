"""Minimal polynomial extrapolation (MPE) for vector fixed-point sequences.

Given iterates y_0, ..., y_(k+1) of a fixed-point map, form the
differences u_i = y_(i+1) - y_i, solve U_(k-1) c ~ -u_k in the least
squares sense, append c_k = 1 and scale gamma = c / sum(c).  The
extrapolated vector s = sum_i gamma_i y_i is exact for affine maps once
the differences span the relevant Krylov space (Cabay & Jackson, 1976).
The extrapolation does not exist when sum(c) vanishes.

Two ways of driving an iteration with MPE are provided by `accelerate`:
extrapolating over the full history after every step (the sequence
itself continues unchanged and s only serves as the convergence
candidate), or cycling, where the history is capped at ``cycle_length``
steps and the iteration restarts from the extrapolated vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

STAGNATION_TOL = 1e-15
DEGENERACY_TOL = 1e-12


class InsufficientHistoryError(ValueError):
    """Raised when extrapolation is requested from fewer than two iterates."""


@dataclass(frozen=True)
class AccelPolicy:
    """How (and whether) to interleave extrapolation with the base iteration.

    kind is one of "none", "every" or "cycle"; cycle_length is the number
    of base steps per extrapolation cycle and is only used by "cycle".
    """

    kind: str = "none"
    cycle_length: int = 15

    def __post_init__(self):
        if self.kind not in ("none", "every", "cycle"):
            raise ValueError("kind must be 'none', 'every' or 'cycle'")
        if self.kind == "cycle" and self.cycle_length < 2:
            raise ValueError("cycle_length must be at least 2")


class MpeHistory:
    """Ordered iterate history y_0, ..., y_(k+1) of the current sequence."""

    def __init__(self, first: Optional[np.ndarray] = None):
        self._iterates: list[np.ndarray] = []
        if first is not None:
            self.append(first)

    def append(self, y: np.ndarray) -> None:
        self._iterates.append(np.asarray(y, dtype=float))

    def __len__(self) -> int:
        return len(self._iterates)

    @property
    def iterates(self) -> list[np.ndarray]:
        return self._iterates

    def differences(self) -> np.ndarray:
        """Matrix U_k whose columns are u_i = y_(i+1) - y_i."""
        if len(self._iterates) < 2:
            raise InsufficientHistoryError("need at least two iterates")
        return np.diff(np.column_stack(self._iterates), axis=1)


@dataclass
class MpeResult:
    """Extrapolation output; gamma and s are None when it does not exist."""

    gamma: Optional[np.ndarray]
    s: Optional[np.ndarray]
    ls_residual: float
    exists: bool


def mpe_extrapolate(history: MpeHistory) -> MpeResult:
    """Extrapolate over the full history.

    The least squares problem is solved through an orthogonal
    factorization; the result carries its residual norm.  A stagnated
    sequence (vanishing last difference) returns the last iterate, which
    is the exact-convergence limit of the formulas.
    """
    ys = history.iterates
    if len(ys) < 2:
        raise InsufficientHistoryError("need at least two iterates")
    u = history.differences()
    k = u.shape[1] - 1
    if float(np.max(np.abs(u[:, -1]))) < STAGNATION_TOL:
        gamma = np.zeros(k + 1)
        gamma[-1] = 1.0
        return MpeResult(gamma=gamma, s=ys[-1].copy(), ls_residual=0.0, exists=True)
    if k == 0:
        c = np.ones(1)
        ls_residual = float(np.linalg.norm(u[:, -1]))
    else:
        c_head, _, _, _ = scipy.linalg.lstsq(
            u[:, :-1], -u[:, -1], cond=None, lapack_driver="gelsy", check_finite=False
        )
        c = np.append(c_head, 1.0)
        ls_residual = float(np.linalg.norm(u[:, :-1] @ c_head + u[:, -1]))
    c_sum = float(c.sum())
    if abs(c_sum) < DEGENERACY_TOL * max(1.0, float(np.abs(c).sum())):
        return MpeResult(gamma=None, s=None, ls_residual=ls_residual, exists=False)
    gamma = c / c_sum
    s = np.column_stack(ys[:-1]) @ gamma
    return MpeResult(gamma=gamma, s=s, ls_residual=ls_residual, exists=True)


@dataclass
class AccelResult:
    """Outcome of an accelerated (or plain) iteration run."""

    y: np.ndarray
    iterations: int
    extrapolations: int
    degenerate: int
    final_residual: float
    converged: bool
    residuals: list = field(default_factory=list)


def accelerate(
    policy: AccelPolicy,
    step_fn: Callable[[np.ndarray], np.ndarray],
    residual_fn: Callable[[np.ndarray], float],
    y0: np.ndarray,
    tol: float,
    max_iter: int,
) -> AccelResult:
    """Drive ``step_fn`` until the residual of the current candidate is < tol.

    Iterations count calls to ``step_fn`` only; extrapolations are counted
    separately.  The residual is checked after every base step, and
    additionally at each extrapolated vector, which becomes the returned
    candidate when it converges first.
    """
    y = np.array(y0, dtype=float, copy=True)
    r = residual_fn(y)
    res = AccelResult(
        y=y, iterations=0, extrapolations=0, degenerate=0,
        final_residual=r, converged=r < tol, residuals=[r],
    )
    if res.converged:
        return res
    if policy.kind == "none":
        return _run_plain(step_fn, residual_fn, res, tol, max_iter)
    if policy.kind == "every":
        return _run_every(step_fn, residual_fn, res, tol, max_iter)
    return _run_cycle(step_fn, residual_fn, res, tol, max_iter, policy.cycle_length)


def _base_step(step_fn, residual_fn, res: AccelResult) -> float:
    res.y = step_fn(res.y)
    res.iterations += 1
    r = residual_fn(res.y)
    res.residuals.append(r)
    res.final_residual = r
    return r


def _run_plain(step_fn, residual_fn, res, tol, max_iter):
    while res.iterations < max_iter:
        if _base_step(step_fn, residual_fn, res) < tol:
            res.converged = True
            break
    return res


def _run_every(step_fn, residual_fn, res, tol, max_iter):
    history = MpeHistory(res.y)
    while res.iterations < max_iter:
        if _base_step(step_fn, residual_fn, res) < tol:
            res.converged = True
            break
        history.append(res.y)
        ext = mpe_extrapolate(history)
        res.extrapolations += 1
        if not ext.exists:
            res.degenerate += 1
            continue
        r_s = residual_fn(ext.s)
        if r_s < tol:
            res.y = ext.s
            res.final_residual = r_s
            res.converged = True
            break
    return res


def _run_cycle(step_fn, residual_fn, res, tol, max_iter, cycle_length):
    while res.iterations < max_iter:
        history = MpeHistory(res.y)
        for _ in range(cycle_length):
            if res.iterations >= max_iter:
                break
            if _base_step(step_fn, residual_fn, res) < tol:
                res.converged = True
                return res
            history.append(res.y)
        if len(history) < 2:
            break
        ext = mpe_extrapolate(history)
        res.extrapolations += 1
        if not ext.exists:
            res.degenerate += 1
            continue
        r_s = residual_fn(ext.s)
        res.y = ext.s
        res.final_residual = r_s
        if r_s < tol:
            res.converged = True
            return res
    return res
