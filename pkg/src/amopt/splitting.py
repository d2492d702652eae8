"""Matrix splittings A = M - N used by the modulus fixed-point iteration.

Two variants are provided.  Point Gauss-Seidel takes M = D + L and
N = -U.  The two-block Schwarz variant partitions the unknowns at an
interface index into a leading and a trailing block and performs block
Gauss-Seidel on that 2x2 partition: M keeps both diagonal blocks and the
lower coupling entry, N holds the negated upper coupling entry.  For a
tridiagonal A the coupling blocks each contain a single entry, so one
sweep amounts to two independent tridiagonal solves chained by one
scalar correction.  In both variants M + Omega is cheap to invert and
M - N = A holds entrywise.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from .bands import TriDiag, solve_tridiag_banded


def _positive_diagonal(omega, n: int) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if w.ndim == 0:
        w = np.full(n, float(w))
    if w.shape != (n,):
        raise ValueError(f"omega must be a scalar or a vector of length {n}")
    if not np.all(w > 0.0):
        raise ValueError("omega must be entrywise positive")
    return w


class PointGaussSeidel:
    """Splitting with M = D + L, N = -U; M + Omega is lower bidiagonal."""

    variant = "gs"

    def __init__(self, a: TriDiag, omega):
        self.A = a
        self.omega = _positive_diagonal(omega, a.n)
        # (1, 0) band storage of M + Omega for the forward solve.
        ab = np.zeros((2, a.n))
        ab[0] = a.d + self.omega
        if a.n > 1:
            ab[1, :-1] = a.dl
        self._ab = ab

    def solve_m_plus_omega(self, rhs: np.ndarray) -> np.ndarray:
        if self.A.n == 1:
            return rhs / self._ab[0, 0]
        return solve_banded((1, 0), self._ab, rhs, check_finite=False)

    def apply_n(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        if self.A.n > 1:
            out[:-1] = -self.A.du * y[1:]
        return out

    def apply_m(self, y: np.ndarray) -> np.ndarray:
        # M = A + N for any splitting A = M - N.
        return self.A.matvec(y) + self.apply_n(y)


class SchwarzTwoBlock:
    """Block Gauss-Seidel splitting on the 2x2 partition at ``interface_index``.

    The leading block has ``interface_index`` unknowns; with
    interface_index == n the trailing block is empty and every sweep is a
    direct solve with A + Omega (N = 0).
    """

    variant = "bgs"

    def __init__(self, a: TriDiag, omega, interface_index: int):
        if not 1 <= interface_index <= a.n:
            raise ValueError("interface index out of range")
        self.A = a
        self.omega = _positive_diagonal(omega, a.n)
        self.interface_index = int(interface_index)
        i0, n = self.interface_index, a.n
        shifted = a.d + self.omega
        self._ab1 = self._block_bands(shifted, a.dl, a.du, 0, i0)
        self._ab2 = self._block_bands(shifted, a.dl, a.du, i0, n) if i0 < n else None
        self._a12 = a.du[i0 - 1] if i0 < n else 0.0
        self._a21 = a.dl[i0 - 1] if i0 < n else 0.0

    @staticmethod
    def _block_bands(d, dl, du, lo, hi):
        ab = np.zeros((3, hi - lo))
        ab[1] = d[lo:hi]
        if hi - lo > 1:
            ab[0, 1:] = du[lo : hi - 1]
            ab[2, :-1] = dl[lo : hi - 1]
        return ab

    def solve_m_plus_omega(self, rhs: np.ndarray) -> np.ndarray:
        i0 = self.interface_index
        out = np.empty_like(rhs)
        out[:i0] = solve_tridiag_banded(self._ab1, rhs[:i0])
        if self._ab2 is not None:
            r2 = rhs[i0:].copy()
            r2[0] -= self._a21 * out[i0 - 1]
            out[i0:] = solve_tridiag_banded(self._ab2, r2)
        return out

    def apply_n(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        if self._ab2 is not None:
            out[self.interface_index - 1] = -self._a12 * y[self.interface_index]
        return out

    def apply_m(self, y: np.ndarray) -> np.ndarray:
        return self.A.matvec(y) + self.apply_n(y)


def build_point_gs(a: TriDiag, omega) -> PointGaussSeidel:
    return PointGaussSeidel(a, omega)


def build_schwarz_two_block(a: TriDiag, omega, interface_index: int) -> SchwarzTwoBlock:
    return SchwarzTwoBlock(a, omega, interface_index)
