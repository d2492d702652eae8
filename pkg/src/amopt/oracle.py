"""Independent LCP reference solvers, used only for cross-checking.

Active-set enumeration is exact up to a linear solve and feasible for
tiny orders; projected SOR (Cryer, 1971) covers medium sizes.  Neither
shares any code path with the modulus iteration, so agreement between
them and the production solvers is meaningful evidence.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .bands import TriDiag
from .mms import NonConvergedError

ENUMERATION_MAX_ORDER = 20


def _matvec(a, x: np.ndarray) -> np.ndarray:
    if isinstance(a, TriDiag):
        return a.matvec(x)
    return np.asarray(a, dtype=float) @ x


def verify_lcp(a, q: np.ndarray, z: np.ndarray) -> float:
    """Certificate: the worst violation of the three LCP conditions.

    max( ||min(z, 0)||_inf, ||min(Az + q, 0)||_inf,
         |z'(Az + q)| / (1 + ||z||_inf ||q||_inf) ).
    """
    z = np.asarray(z, dtype=float)
    q = np.asarray(q, dtype=float)
    w = _matvec(a, z) + q
    neg_z = float(np.max(np.maximum(-z, 0.0)))
    neg_w = float(np.max(np.maximum(-w, 0.0)))
    comp = abs(float(z @ w)) / (1.0 + float(np.max(np.abs(z))) * float(np.max(np.abs(q))))
    return max(neg_z, neg_w, comp)


def solve_lcp_enumeration(a_dense: np.ndarray, q: np.ndarray, feas_tol: float = 1e-12) -> np.ndarray:
    """Solve a tiny LCP by enumerating active sets.

    For each index subset S the candidate solves A[S,S] z_S = -q_S with
    z = 0 elsewhere; the first candidate passing both sign checks is
    returned.  For symmetric positive definite A the solution is unique,
    so the enumeration order does not matter.
    """
    a_dense = np.asarray(a_dense, dtype=float)
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    if n > ENUMERATION_MAX_ORDER:
        raise ValueError(f"enumeration capped at order {ENUMERATION_MAX_ORDER}")
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            z = np.zeros(n)
            if size:
                idx = list(subset)
                z[idx] = np.linalg.solve(a_dense[np.ix_(idx, idx)], -q[idx])
            if z.min(initial=0.0) < -feas_tol:
                continue
            w = a_dense @ z + q
            if w.min(initial=0.0) < -feas_tol:
                continue
            return z
    raise RuntimeError("no feasible active set; matrix is not positive definite?")


def solve_lcp_psor(
    a: TriDiag,
    q: np.ndarray,
    relaxation: float = 1.0,
    tol: float = 1e-10,
    max_iter: int = 100_000,
) -> np.ndarray:
    """Projected SOR sweeps until the complementarity certificate is <= tol.

    relaxation = 1 is projected Gauss-Seidel, which needs no tuning and is
    good enough for a reference solver.
    """
    if not 0.0 < relaxation < 2.0:
        raise ValueError("relaxation must lie in (0, 2)")
    q = np.asarray(q, dtype=float)
    d, dl, du = a.d, a.dl, a.du
    n = a.n
    z = np.zeros(n)
    for _ in range(max_iter):
        for i in range(n):
            acc = q[i]
            if i > 0:
                acc += dl[i - 1] * z[i - 1]
            if i < n - 1:
                acc += du[i] * z[i + 1]
            zi = (1.0 - relaxation) * z[i] - relaxation * acc / d[i]
            z[i] = zi if zi > 0.0 else 0.0
        if verify_lcp(a, q, z) <= tol:
            return z
    raise NonConvergedError("projected SOR hit its iteration cap")


def random_lcp(rng: np.random.Generator, order: int) -> tuple[TriDiag, np.ndarray]:
    """Random symmetric strictly diagonally dominant tridiagonal LCP instance."""
    off = rng.uniform(-1.0, 1.0, size=max(order - 1, 0))
    margin = rng.uniform(0.5, 2.0, size=order)
    d = margin.copy()
    if order > 1:
        d[:-1] += np.abs(off)
        d[1:] += np.abs(off)
    a = TriDiag(d=d, dl=off.copy(), du=off.copy())
    q = rng.uniform(-2.0, 2.0, size=order)
    return a, q
