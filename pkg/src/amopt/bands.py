"""Tridiagonal matrices stored as bands, and the banded solves built on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded


@dataclass(frozen=True)
class TriDiag:
    """Tridiagonal matrix held as three bands.

    ``d`` is the main diagonal (length n), ``dl`` the subdiagonal and
    ``du`` the superdiagonal (length n-1 each, empty when n == 1).
    Instances are treated as immutable and may be shared across threads.
    """

    d: np.ndarray
    dl: np.ndarray
    du: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", np.asarray(self.d, dtype=float))
        object.__setattr__(self, "dl", np.asarray(self.dl, dtype=float))
        object.__setattr__(self, "du", np.asarray(self.du, dtype=float))
        n = self.d.shape[0]
        if n == 0:
            raise ValueError("empty matrix")
        if self.dl.shape[0] != n - 1 or self.du.shape[0] != n - 1:
            raise ValueError("off-diagonal bands must have length n - 1")

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.d * x
        if self.n > 1:
            y[1:] += self.dl * x[:-1]
            y[:-1] += self.du * x[1:]
        return y

    def to_dense(self) -> np.ndarray:
        out = np.diag(self.d)
        if self.n > 1:
            out += np.diag(self.dl, -1) + np.diag(self.du, 1)
        return out


def constant_tridiag(n: int, diag: float, off: float) -> TriDiag:
    """Tridiagonal matrix with constant diagonal and constant off-diagonals."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return TriDiag(
        d=np.full(n, diag),
        dl=np.full(max(n - 1, 0), off),
        du=np.full(max(n - 1, 0), off),
    )


def tridiag_band_matrix(t: TriDiag, shift: np.ndarray | float = 0.0) -> np.ndarray:
    """Band storage of ``t + diag(shift)`` in the (1, 1) layout of solve_banded."""
    ab = np.zeros((3, t.n))
    ab[1] = t.d + shift
    if t.n > 1:
        ab[0, 1:] = t.du
        ab[2, :-1] = t.dl
    return ab


def solve_tridiag_banded(ab: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a tridiagonal system given in (1, 1) band storage."""
    if ab.shape[1] == 1:
        return rhs / ab[1, 0]
    return solve_banded((1, 1), ab, rhs, check_finite=False)


def solve_tridiag(t: TriDiag, rhs: np.ndarray) -> np.ndarray:
    """Solve ``t x = rhs`` for a single right-hand side."""
    return solve_tridiag_banded(tridiag_band_matrix(t), rhs)
