"""Uniform space-time grid and theta-scheme operators for the obstacle problem.

The transformed problem is discretized on a uniform grid over
(a, b) x (0, tau_max] with a theta-weighted scheme.  Writing
lam = dtau / dx^2 and T for the second-difference stencil
tridiag(-1, 2, -1), each time step couples the interior unknowns through

    A = I + lam * theta * T,    B = I - lam * (1 - theta) * T,

and the step from u^j to u^(j+1) is the complementarity problem
A u >= B u^j + b^(j+1) subject to u >= g^(j+1), put into standard LCP
form with z = u^(j+1) - g^(j+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bands import TriDiag, constant_tridiag
from .model import TransformConstants

INT_TOL = 1e-9


def _exact_int(value: float, what: str) -> int:
    r = round(value)
    if abs(value - r) > INT_TOL:
        raise ValueError(f"{what} = {value!r} must be an integer; adjust the mesh")
    return int(r)


@dataclass(frozen=True)
class Grid:
    """Uniform mesh over (a, b) x [0, tau_max] with the origin on a node."""

    a: float
    b: float
    n: int
    m: int
    dx: float
    dtau: float
    lam: float
    theta: float
    i0: int
    tau_max: float

    def x_nodes(self) -> np.ndarray:
        return self.a + self.dx * np.arange(self.n + 1)

    def interior_x(self) -> np.ndarray:
        return self.a + self.dx * np.arange(1, self.n)

    def tau_nodes(self) -> np.ndarray:
        return self.dtau * np.arange(self.m + 1)


def build_grid(
    c: TransformConstants,
    a: float,
    b: float,
    dx_exp: int,
    dtau_exp: int,
    theta: float,
) -> Grid:
    """Grid with dyadic mesh sizes dx = 2^-dx_exp, dtau = 2^-dtau_exp.

    Rejects any combination for which the cell count n, the step count m
    or the origin index i0 = -a/dx is not an exact integer: the block
    splitting places its interface at the origin, so the origin must be
    a grid node.
    """
    if not a < 0.0 < b:
        raise ValueError("domain must satisfy a < 0 < b")
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie in (0, 1)")
    dx = 2.0 ** -int(dx_exp)
    dtau = 2.0 ** -int(dtau_exp)
    n = _exact_int((b - a) / dx, "(b - a)/dx")
    m = _exact_int(c.tau_max / dtau, "tau_max/dtau")
    i0 = _exact_int(-a / dx, "-a/dx")
    if n < 3:
        raise ValueError("need at least 3 spatial cells")
    if m < 1:
        raise ValueError("need at least 1 time step")
    if not 1 <= i0 <= n - 1:
        raise ValueError("origin index must be an interior node")
    return Grid(
        a=a, b=b, n=n, m=m, dx=dx, dtau=dtau,
        lam=dtau / dx**2, theta=theta, i0=i0, tau_max=c.tau_max,
    )


@dataclass(frozen=True)
class DiscreteOperator:
    """The pair of tridiagonal time-stepping matrices on the interior nodes."""

    A: TriDiag
    B: TriDiag
    lam: float
    theta: float


def theta_operators(order: int, lam: float, theta: float) -> DiscreteOperator:
    """Operators A = I + lam*theta*T and B = I - lam*(1-theta)*T of given order."""
    a = constant_tridiag(order, 1.0 + 2.0 * lam * theta, -lam * theta)
    b = constant_tridiag(order, 1.0 - 2.0 * lam * (1.0 - theta), lam * (1.0 - theta))
    return DiscreteOperator(A=a, B=b, lam=lam, theta=theta)


def assemble_operators(grid: Grid) -> DiscreteOperator:
    return theta_operators(grid.n - 1, grid.lam, grid.theta)


def boundary_vector(grid: Grid, g: Callable, j: int) -> np.ndarray:
    """Boundary contribution b^(j+1) for the step from time level j to j+1.

    Only the first and last entries are nonzero; they carry the Dirichlet
    data g at x = a and x = b, theta-weighted between the two time levels.
    """
    if not 0 <= j <= grid.m - 1:
        raise ValueError("time index out of range")
    tau_j = j * grid.dtau
    tau_next = (j + 1) * grid.dtau
    w_old = grid.lam * (1.0 - grid.theta)
    w_new = grid.lam * grid.theta
    out = np.zeros(grid.n - 1)
    out[0] = w_old * g(grid.a, tau_j) + w_new * g(grid.a, tau_next)
    out[-1] = w_old * g(grid.b, tau_j) + w_new * g(grid.b, tau_next)
    return out


@dataclass(frozen=True)
class TimeStepLcp:
    """One time step in standard LCP form: find z >= 0 with Az + q >= 0, z'(Az+q) = 0."""

    q: np.ndarray
    g_next: np.ndarray
    r_prev: np.ndarray


def assemble_lcp(
    ops: DiscreteOperator,
    u_prev: np.ndarray,
    bvec: np.ndarray,
    g_next: np.ndarray,
) -> TimeStepLcp:
    """LCP data for one step: r^j = B u^j + b^(j+1) and q = A g^(j+1) - r^j."""
    order = ops.A.n
    for name, v in (("u_prev", u_prev), ("bvec", bvec), ("g_next", g_next)):
        if np.shape(v) != (order,):
            raise ValueError(f"{name} must have length {order}")
    r_prev = ops.B.matvec(np.asarray(u_prev, dtype=float)) + bvec
    q = ops.A.matvec(np.asarray(g_next, dtype=float)) - r_prev
    return TimeStepLcp(q=q, g_next=np.asarray(g_next, dtype=float), r_prev=r_prev)
